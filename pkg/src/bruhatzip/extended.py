"""
Extended Weyl groups W ⋊ Ω, the extended Bruhat order, the double quotient
parametrizing Bruhat strata, Galois quotients, and dimension formulas.

Ω is an abstract group of diagram automorphisms given by labels, actions on
the index set, and a multiplication table.  Extended elements are pairs
(w, ω-label) with (w,ω)(w',ω') = (w·ω(w'), ωω').
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .coxeter import CoxeterSystem, DomainError, Perm


@dataclass(frozen=True)
class DiagramAut:
    """Permutation of the simple-reflection index set {1..m} (1-based)."""

    perm: tuple[int, ...]

    @classmethod
    def identity(cls, m: int) -> "DiagramAut":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def swap_last(cls, m: int) -> "DiagramAut":
        image = list(range(1, m + 1))
        image[m - 2], image[m - 1] = m, m - 1
        return cls(tuple(image))

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def apply_set(self, J) -> frozenset[int]:
        return frozenset(self(j) for j in J)

    def compose(self, other: "DiagramAut") -> "DiagramAut":
        return DiagramAut(tuple(self(other(i)) for i in range(1, len(self.perm) + 1)))

    def inverse(self) -> "DiagramAut":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm, start=1):
            inv[j - 1] = i
        return DiagramAut(tuple(inv))

    @property
    def order(self) -> int:
        a, d = self, 1
        ident = DiagramAut.identity(len(self.perm))
        while a != ident:
            a = a.compose(self)
            d += 1
        return d

    def is_identity(self) -> bool:
        return all(self(i) == i for i in range(1, len(self.perm) + 1))


class ExtElt(NamedTuple):
    """Element (w, ω) of the extended Weyl group, ω given by its label."""

    w: Perm
    omega: str


@dataclass(frozen=True)
class OmegaGroup:
    """Finite group acting on (W, I) by diagram automorphisms.

    labels[0] is the identity; table[i][j] is the index of labels[i]*labels[j].
    """

    labels: tuple[str, ...]
    actions: tuple[DiagramAut, ...]
    table: tuple[tuple[int, ...], ...]

    @classmethod
    def trivial(cls, m: int) -> "OmegaGroup":
        return cls(("1",), (DiagramAut.identity(m),), ((0,),))

    @classmethod
    def d_swap(cls, m: int) -> "OmegaGroup":
        """Order-2 group for type D_m: ω exchanges s_{m-1} and s_m."""
        return cls(
            ("1", "w"),
            (DiagramAut.identity(m), DiagramAut.swap_last(m)),
            ((0, 1), (1, 0)),
        )

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def action(self, label: str) -> DiagramAut:
        return self.actions[self.index(label)]

    def mul(self, a: str, b: str) -> str:
        return self.labels[self.table[self.index(a)][self.index(b)]]

    def inv(self, a: str) -> str:
        i = self.index(a)
        (j,) = [j for j in range(len(self.labels)) if self.table[i][j] == 0]
        return self.labels[j]

    @property
    def identity(self) -> str:
        return self.labels[0]

    def conjugate_label(self, f: DiagramAut, label: str) -> str:
        """The label whose action is f ∘ a_label ∘ f⁻¹ (how f acts on Ω)."""
        target = f.compose(self.action(label)).compose(f.inverse())
        for lab, act in zip(self.labels, self.actions):
            if act == target:
                return lab
        raise DomainError(f"automorphism does not normalize Omega at {label!r}")

    def stabilizer(self, J) -> tuple[str, ...]:
        """Ω_J = {ω : ω(J) = J}."""
        J = frozenset(J)
        return tuple(
            lab
            for lab, act in zip(self.labels, self.actions)
            if act.apply_set(J) == J
        )


def _check_diagram_aut(system: CoxeterSystem, aut: DiagramAut) -> None:
    m = system.m
    if sorted(aut.perm) != list(range(1, m + 1)):
        raise DomainError(f"{aut.perm} is not a permutation of 1..{m}")
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            if system.coxeter_order(i, j) != system.coxeter_order(aut(i), aut(j)):
                raise DomainError(f"{aut.perm} does not preserve the Coxeter matrix")


@dataclass(frozen=True)
class GroupProfile:
    """Coxeter system + Ω + torus dimension + Frobenius diagram automorphism."""

    system: CoxeterSystem
    omega: OmegaGroup
    torus_dim: int
    frobenius: DiagramAut

    def __post_init__(self):
        if self.torus_dim < self.system.m:
            raise DomainError("torus_dim must be at least the rank")
        _check_diagram_aut(self.system, self.frobenius)
        for act in self.omega.actions:
            _check_diagram_aut(self.system, act)

    # -- automorphisms on elements ------------------------------------------

    def apply_aut(self, aut: DiagramAut, w: Perm) -> Perm:
        if aut.is_identity():
            return w
        word = self.system.reduced_word(w)
        return self.system.word_to_element([aut(i) for i in word])

    def act_omega(self, label: str, w: Perm) -> Perm:
        return self.apply_aut(self.omega.action(label), w)

    def frobenius_label(self, label: str) -> str:
        return self.omega.conjugate_label(self.frobenius, label)

    # -- extended-group arithmetic ------------------------------------------

    def ext_multiply(self, a: ExtElt, b: ExtElt) -> ExtElt:
        w = self.system.multiply(a.w, self.act_omega(a.omega, b.w))
        return ExtElt(w, self.omega.mul(a.omega, b.omega))

    def ext_inverse(self, a: ExtElt) -> ExtElt:
        oinv = self.omega.inv(a.omega)
        return ExtElt(self.act_omega(oinv, self.system.inverse(a.w)), oinv)

    def ext_product(self, *parts: ExtElt) -> ExtElt:
        out = ExtElt(self.system.identity, self.omega.identity)
        for p in parts:
            out = self.ext_multiply(out, p)
        return out

    def ext_bruhat_leq(self, a: ExtElt, b: ExtElt) -> bool:
        return a.omega == b.omega and self.system.bruhat_leq(a.w, b.w)

    def ext_frobenius(self, a: ExtElt) -> ExtElt:
        return ExtElt(self.apply_aut(self.frobenius, a.w), self.frobenius_label(a.omega))

    def sort_key(self, a: ExtElt):
        return (self.system.length(a.w), self.omega.index(a.omega), a.w)


# ---------------------------------------------------------------------------
# posets


@dataclass(frozen=True)
class PosetNode:
    rep: ExtElt
    members: tuple[ExtElt, ...]
    length: int
    component: int  # index into the poset's component classes


@dataclass
class StrataPoset:
    """Finite labeled poset of orbit classes with a deterministic node order."""

    nodes: list[PosetNode]
    leq: list[list[bool]]
    component_classes: list[tuple[str, ...]]
    order_method: str = "exhaustive"
    context: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.nodes)
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise DomainError("induced relation is not antisymmetric")

    @property
    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs (i, j) with node i covered by node j."""
        n = len(self.nodes)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if any(
                    k not in (i, j) and self.leq[i][k] and self.leq[k][j]
                    for k in range(n)
                ):
                    continue
                out.append((i, j))
        return out

    def node_of(self, elt: ExtElt) -> int:
        for idx, node in enumerate(self.nodes):
            if elt in node.members:
                return idx
        raise DomainError(f"{elt} is not a member of any node")

    def is_chain(self) -> bool:
        return all(
            self.leq[i][j] or self.leq[j][i]
            for i in range(len(self.nodes))
            for j in range(len(self.nodes))
        )


def _orbit(profile: GroupProfile, seed: ExtElt, maps) -> tuple[ExtElt, ...]:
    seen = {seed}
    frontier = [seed]
    while frontier:
        x = frontier.pop()
        for f in maps:
            y = f(x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return tuple(sorted(seen, key=profile.sort_key))


def _build_poset(profile, orbits, leq_fn, component_classes, component_of_rep,
                 order_method="exhaustive", context=None):
    orbits = sorted(orbits, key=lambda orb: profile.sort_key(orb[0]))
    nodes = [
        PosetNode(
            rep=orb[0],
            members=orb,
            length=profile.system.length(orb[0].w),
            component=component_of_rep(orb[0]),
        )
        for orb in orbits
    ]
    n = len(nodes)
    leq = [
        [i == j or leq_fn(nodes[i], nodes[j]) for j in range(n)]
        for i in range(n)
    ]
    return StrataPoset(nodes, leq, component_classes, order_method, context or {})


# ---------------------------------------------------------------------------
# operations


def omega_stabilizer(J, omega: OmegaGroup) -> tuple[str, ...]:
    return omega.stabilizer(J)


def ext_double_reps(J, K, profile: GroupProfile) -> list[ExtElt]:
    """ᴶŴᴷ = {(w, ω) : ω ∈ Ω, w ∈ ᴶW^{ω(K)}}."""
    out = []
    for lab in profile.omega.labels:
        wK = profile.omega.action(lab).apply_set(K)
        out.extend(ExtElt(w, lab) for w in profile.system.min_double_reps(J, wK))
    return sorted(out, key=profile.sort_key)


def _check_subgroup(sub, ambient, omega: OmegaGroup, what: str) -> None:
    sub, ambient = set(sub), set(ambient)
    if not sub <= ambient:
        raise DomainError(f"{what} is not contained in the stabilizer subgroup")
    if omega.identity not in sub:
        raise DomainError(f"{what} does not contain the identity")
    for a in sub:
        for b in sub:
            if omega.mul(a, b) not in sub:
                raise DomainError(f"{what} is not closed under multiplication")


def omega_double_classes(Theta, Delta, omega: OmegaGroup) -> list[tuple[str, ...]]:
    """Classes of Ω under ω ↦ θωδ, sorted by smallest member index."""
    remaining = set(omega.labels)
    classes = []
    while remaining:
        seed = min(remaining, key=omega.index)
        cls = {omega.mul(omega.mul(t, seed), d) for t in Theta for d in Delta}
        classes.append(tuple(sorted(cls, key=omega.index)))
        remaining -= cls
    return sorted(classes, key=lambda c: omega.index(c[0]))


def double_quotient(J, Theta, K, Delta, profile: GroupProfile) -> StrataPoset:
    """The poset Ω_{J,Θ}\\ᴶŴᴷ/Ω_{K,Δ} with the induced extended Bruhat order."""
    omega = profile.omega
    _check_subgroup(Theta, omega.stabilizer(J), omega, "Theta")
    _check_subgroup(Delta, omega.stabilizer(K), omega, "Delta")

    reps = ext_double_reps(J, K, profile)
    maps = [
        (lambda x, t=t, d=d: profile.ext_product(
            ExtElt(profile.system.identity, t), x, ExtElt(profile.system.identity, d)))
        for t in Theta
        for d in Delta
    ]
    rep_set = set(reps)
    orbits = []
    while rep_set:
        seed = min(rep_set, key=profile.sort_key)
        orb = _orbit(profile, seed, maps)
        assert set(orb) <= set(reps), "orbit left the double-coset representatives"
        orbits.append(orb)
        rep_set -= set(orb)

    classes = omega_double_classes(Theta, Delta, omega)
    class_of = {lab: i for i, cls in enumerate(classes) for lab in cls}

    def leq_fn(a: PosetNode, b: PosetNode) -> bool:
        return any(
            profile.ext_bruhat_leq(x, y) for x in a.members for y in b.members
        )

    return _build_poset(
        profile,
        orbits,
        leq_fn,
        classes,
        lambda rep: class_of[rep.omega],
        context={
            "kind": "bruhat",
            "J": frozenset(J),
            "K": frozenset(K),
            "Theta": tuple(Theta),
            "Delta": tuple(Delta),
            "profile": profile,
        },
    )


def component_map(poset: StrataPoset, node_index: int) -> tuple[str, ...]:
    """The class of the node's Ω-part in Ω_{J,Θ}\\Ω/Ω_{K,Δ}."""
    return poset.component_classes[poset.nodes[node_index].component]


def galois_quotient(poset: StrataPoset, profile: GroupProfile) -> StrataPoset:
    """Quotient by the cyclic group generated by the Frobenius automorphism."""
    frob = profile.frobenius
    ctx = poset.context
    for key in ("J", "K"):
        if key in ctx and frob.apply_set(ctx[key]) != frozenset(ctx[key]):
            raise DomainError(f"frobenius does not stabilize {key}")
    for key in ("Theta", "Delta"):
        if key in ctx:
            labs = set(ctx[key])
            if {profile.omega.conjugate_label(frob, lab) for lab in labs} != labs:
                raise DomainError(f"frobenius does not stabilize {key}")

    # Orbits of nodes under the Frobenius action on representatives.
    node_image = []
    for node in poset.nodes:
        node_image.append(poset.node_of(profile.ext_frobenius(node.rep)))
    unassigned = set(range(len(poset.nodes)))
    orbits = []
    while unassigned:
        i = min(unassigned)
        orb = {i}
        j = node_image[i]
        while j not in orb:
            orb.add(j)
            j = node_image[j]
        orbits.append(sorted(orb))
        unassigned -= orb

    merged = []
    for orb in orbits:
        members = tuple(
            sorted(
                {m for i in orb for m in poset.nodes[i].members},
                key=profile.sort_key,
            )
        )
        merged.append((orb, members))

    def leq_fn(a: PosetNode, b: PosetNode) -> bool:
        return any(
            profile.ext_bruhat_leq(x, y) for x in a.members for y in b.members
        )

    return _build_poset(
        profile,
        [members for _, members in merged],
        leq_fn,
        poset.component_classes,
        lambda rep: poset.nodes[poset.node_of(rep)].component,
        order_method=poset.order_method,
        context=dict(poset.context, galois=True),
    )


def definition_field_degree(sets, frobenius: DiagramAut) -> int:
    """Smallest e (dividing the Frobenius order) with φ̄ᵉ fixing every set.

    Each entry of `sets` is a set of simple-reflection indices.
    """
    d = frobenius.order
    power = frobenius
    for e in range(1, d + 1):
        if d % e == 0 and all(
            power.apply_set(X) == frozenset(X) for X in sets
        ):
            return e
        power = power.compose(frobenius)
    return d


def ell_JK(what: ExtElt, J, K, profile: GroupProfile) -> int:
    """ℓ(w) + ℓ(w_{0,ω(K)}) − ℓ(w_{0,J_ŵ}) for ŵ = (w, ω) ∈ ᴶŴᴷ."""
    sysm = profile.system
    wK = profile.omega.action(what.omega).apply_set(K)
    if sysm.project_double(what.w, J, wK) != what.w:
        raise DomainError("element is not a minimal extended double-coset representative")
    J_what = sysm.kilmoyer_intersection(what.w, J, wK)
    return (
        sysm.length(what.w)
        + sysm.length(sysm.longest_element(wK))
        - sysm.length(sysm.longest_element(J_what))
    )


def parabolic_dim(K, profile: GroupProfile) -> int:
    """dim P_K = dim T + ℓ(w₀) + ℓ(w_{0,K})."""
    sysm = profile.system
    return (
        profile.torus_dim
        + sysm.length(sysm.longest_element())
        + sysm.length(sysm.longest_element(K))
    )


def gerbe_dim(node: PosetNode, J, K, profile: GroupProfile) -> int:
    """Relative dimension of the residual gerbe at a Bruhat class."""
    return ell_JK(node.rep, J, K, profile) - parabolic_dim(K, profile)


def stack_dim(J, profile: GroupProfile) -> int:
    """−dim L_J = −(dim T + 2ℓ(w_{0,J}))."""
    sysm = profile.system
    return -(profile.torus_dim + 2 * sysm.length(sysm.longest_element(J)))
