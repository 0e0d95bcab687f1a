"""
The orthogonal-similitude and K3 worked examples as executable profiles:
GO_n for both parities, the explicit ᴶW chains, the three-point Bruhat
poset, the symplectic chain, the discriminant component rule, and the
K3 stratum report.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import CartanType, DomainError, Perm, make_system
from .extended import (
    DiagramAut,
    GroupProfile,
    OmegaGroup,
    StrataPoset,
    double_quotient,
    gerbe_dim,
    stack_dim,
)
from .strata import (
    ZipDatum,
    beta0_fiber,
    make_zip_datum,
    pi_components,
    xi_poset,
)

ANNOTATIONS = {
    "id": "supersingular, Artin invariant 1",
    "w_1": "ordinary locus",
}


def ortho_profile(n: int, cap: int | None = None) -> ZipDatum:
    """The zip datum of GO_n: J = K = {s_2..s_m}, torus dimension m+1.

    n odd gives type B_{(n-1)/2} with trivial Ω; n even gives type D_{n/2}
    with Ω of order 2 and Θ = Δ = Ω.
    """
    if n % 2 == 1:
        if n < 5:
            raise DomainError("odd orthogonal profile needs n >= 5")
        m = (n - 1) // 2
        system = make_system(CartanType("B", m))
        omega = OmegaGroup.trivial(m)
        theta = ("1",)
    else:
        if n < 6:
            raise DomainError("even orthogonal profile needs n >= 6")
        m = n // 2
        system = make_system(CartanType("D", m))
        omega = OmegaGroup.d_swap(m)
        theta = ("1", "w")
    profile = GroupProfile(system, omega, m + 1, DiagramAut.identity(m))
    J = frozenset(range(2, m + 1))
    kwargs = {} if cap is None else {"cap": cap}
    return make_zip_datum(profile, J, theta, chain_shortcut=True, **kwargs)


def chain_JW(n: int) -> list[tuple[str, Perm]]:
    """The labeled minimal coset representatives t_0..t_{n-2} (and t'_{m-1}
    for even n), in chain order, validated against the BFS enumeration."""
    datum = ortho_profile(n)
    sysm = datum.profile.system
    m = sysm.m

    def elt(word):
        return sysm.word_to_element(word)

    chain: list[tuple[str, Perm]] = []
    if n % 2 == 1:
        for d in range(0, m + 1):
            chain.append((f"t{d}", elt(range(1, d + 1))))
        for d in range(m + 1, 2 * m):
            word = list(range(1, m + 1)) + list(range(m - 1, 2 * m - d - 1, -1))
            chain.append((f"t{d}", elt(word)))
    else:
        for d in range(0, m - 1):
            chain.append((f"t{d}", elt(range(1, d + 1))))
        chain.append((f"t{m-1}", elt(range(1, m))))
        chain.append((f"t'{m-1}", elt(list(range(1, m - 1)) + [m])))
        chain.append((f"t{m}", elt(range(1, m + 1))))
        for d in range(m + 1, 2 * m - 1):
            word = list(range(1, m + 1)) + list(range(m - 2, 2 * m - d - 2, -1))
            chain.append((f"t{d}", elt(word)))

    for label, w in chain:
        expected = int(label.replace("t'", "").replace("t", ""))
        assert sysm.length(w) == expected, f"{label} has wrong length"
    assert {w for _, w in chain} == set(sysm.min_coset_reps(datum.J))
    return chain


def bruhat_points(n: int) -> StrataPoset:
    """The three-point chain id < s_1 < w_1 of Bruhat classes of GO_n."""
    datum = ortho_profile(n)
    poset = double_quotient(
        datum.J, datum.Theta, datum.K, datum.Delta, datum.profile
    )
    assert len(poset.nodes) == 3 and poset.is_chain()
    return poset


def bruhat_labels(poset: StrataPoset) -> list[str]:
    labels = []
    for node in poset.nodes:
        if node.length == 0:
            labels.append("id")
        elif node.length == 1:
            labels.append("s_1")
        else:
            labels.append("w_1")
    return labels


def symplectic_profile(g: int) -> tuple[ZipDatum, StrataPoset]:
    """GSp_2g: type C_g with the Lagrangian-stabilizer parabolic J = I \\ {s_g}.

    The Bruhat poset is a chain of g+1 classes.
    """
    if g < 1:
        raise DomainError("symplectic profile needs g >= 1")
    system = make_system(CartanType("C", g))
    profile = GroupProfile(
        system, OmegaGroup.trivial(g), g + 1, DiagramAut.identity(g)
    )
    J = frozenset(range(1, g))
    datum = make_zip_datum(profile, J, ("1",))
    poset = double_quotient(datum.J, datum.Theta, datum.K, datum.Delta, profile)
    assert len(poset.nodes) == g + 1 and poset.is_chain()
    return datum, poset


@dataclass(frozen=True)
class K3Config:
    p: int
    d: int
    primitive: bool = False

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or not _is_prime(self.p):
            raise DomainError("p must be an odd prime")
        if self.d < 1:
            raise DomainError("d must be a positive integer")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def empty_component(cfg: K3Config) -> str:
    """Which of the two even-case components {S_1, S_2} is empty.

    S_2 is empty iff -2d is a nonzero square mod p; otherwise S_1 is empty.
    """
    c = (-2 * cfg.d) % cfg.p
    if c == 0:
        raise DomainError("polarization not p-principal (p divides 2d)")
    return "S_2" if pow(c, (cfg.p - 1) // 2, cfg.p) == 1 else "S_1"


def _fiber_report(n: int) -> dict:
    datum = ortho_profile(n)
    profile = datum.profile
    sysm = profile.system
    xi = xi_poset(datum)
    bruhat = double_quotient(datum.J, datum.Theta, datum.K, datum.Delta, profile)
    labels = bruhat_labels(bruhat)
    components = pi_components(datum)

    classes = []
    for idx, node in enumerate(bruhat.nodes):
        fiber = beta0_fiber(bruhat, idx, xi, datum)
        per_component: dict[str, list[str]] = {c[0]: [] for c in components}
        lengths = set()
        for i in fiber:
            zn = xi.nodes[i]
            comp = components[zn.component][0]
            word = ".".join(str(x) for x in sysm.reduced_word(zn.rep.w))
            per_component[comp].append(f"{zn.length}:{word}")
            lengths.add(zn.length)
        classes.append(
            {
                "label": labels[idx],
                "length": node.length,
                "gerbe_dim": gerbe_dim(node, datum.J, datum.K, profile),
                "annotation": ANNOTATIONS.get(labels[idx]),
                "fiber_lengths": sorted(lengths),
                "fiber": per_component,
            }
        )
    return {
        "n": n,
        "family": datum.profile.system.ctype.family,
        "rank": datum.profile.system.m,
        "components": len(components),
        "order_method": xi.order_method,
        "stack_dim": stack_dim(datum.J, profile),
        "bruhat_classes": classes,
        "zip_strata_per_component": max(
            sum(1 for node in xi.nodes if node.component == c)
            for c in range(len(components))
        ),
    }


def k3_report(cfg: K3Config) -> dict:
    """Side-by-side stratum report for the full (n=22) and primitive (n=21)
    second De Rham cohomology of a p-principally polarized K3 surface."""
    empty = empty_component(cfg)
    return {
        "p": cfg.p,
        "degree": 2 * cfg.d,
        "full": _fiber_report(22),
        "primitive": _fiber_report(21),
        "empty_component": empty,
        "discriminant_class_square": empty == "S_2",
        "component_labelings": [
            {"S_1": "1", "S_2": "w"},
            {"S_1": "w", "S_2": "1"},
        ],
    }
