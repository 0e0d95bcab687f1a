"""
The zip side of the stratification: the isomorphism ψ, the twisted
Ω_{J,Θ}-action on ᴶW·Ω, the zip poset Ξ_{J,Θ} with its order ≼, connected
components, and the comparison map β₀ onto the Bruhat double quotient.

The order ≼ is computed by literal exhaustion of the twisting elements
v̂ ∈ W_J·Θ, guarded by a capacity cap; orthogonal profiles whose chain
structure is theorem-backed may bypass the exhaustion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import DomainError, Perm
from .extended import (
    ExtElt,
    GroupProfile,
    StrataPoset,
    PosetNode,
    _build_poset,
    _orbit,
    omega_stabilizer,
    _check_subgroup,
)

DEFAULT_CAP = 10**6


class CapacityError(RuntimeError):
    """The ≼ exhaustion would exceed the configured cap."""

    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(
            f"order computation needs cap >= {required} (configured cap {cap})"
        )


@dataclass(frozen=True)
class ZipDatum:
    """Zip-stratification configuration (J, Θ) with its derived data."""

    profile: GroupProfile
    J: frozenset[int]
    Theta: tuple[str, ...]
    K: frozenset[int]
    Delta: tuple[str, ...]
    x0: Perm
    brute_force_cap: int = DEFAULT_CAP
    chain_shortcut: bool = False  # order on Ξ known to be a chain per component


def conjugate_simple_set(profile: GroupProfile, w: Perm, J) -> frozenset[int]:
    """{k : w s_j w⁻¹ = s_k} — requires w to normalize the simple set J."""
    sysm = profile.system
    winv = sysm.inverse(w)
    out = set()
    for j in J:
        conj = sysm.product(w, sysm.simple[j], winv)
        k = sysm._simple_index.get(conj)
        if k is None:
            raise DomainError(f"conjugate of s_{j} is not a simple reflection")
        out.add(k)
    return frozenset(out)


def make_zip_datum(profile: GroupProfile, J, Theta, cap: int = DEFAULT_CAP,
                   chain_shortcut: bool = False) -> ZipDatum:
    """Derive (K, Δ, x₀) from (J, Θ) and validate the zip invariants."""
    sysm = profile.system
    J = frozenset(J)
    Theta = tuple(Theta)
    _check_subgroup(Theta, omega_stabilizer(J, profile.omega), profile.omega, "Theta")

    phiJ = profile.frobenius.apply_set(J)
    w0 = sysm.longest_element()
    K = conjugate_simple_set(profile, w0, phiJ)
    Delta = tuple(
        sorted(
            {profile.frobenius_label(t) for t in Theta},
            key=profile.omega.index,
        )
    )
    _check_subgroup(Delta, omega_stabilizer(K, profile.omega), profile.omega, "Delta")

    x0 = sysm.multiply(sysm.longest_element(K), w0)
    if x0 != sysm.multiply(w0, sysm.longest_element(phiJ)):
        raise DomainError("x0 = w_{0,K}w_0 and w_0 w_{0,phi(J)} disagree")

    datum = ZipDatum(profile, J, Theta, K, Delta, x0, cap, chain_shortcut)
    # psi must carry the J-generators bijectively onto the K-generators.
    images = {psi(datum, ExtElt(sysm.simple[j], profile.omega.identity)) for j in J}
    expected = {ExtElt(sysm.simple[k], profile.omega.identity) for k in K}
    if images != expected:
        raise DomainError("psi does not map W_J generators onto W_K generators")
    return datum


def psi(datum: ZipDatum, what: ExtElt) -> ExtElt:
    """ψ = int(x₀) ∘ φ̄ on the extended Weyl group."""
    profile = datum.profile
    x0e = ExtElt(datum.x0, profile.omega.identity)
    return profile.ext_product(
        x0e, profile.ext_frobenius(what), profile.ext_inverse(x0e)
    )


def _theta_maps(datum: ZipDatum):
    profile = datum.profile
    e = profile.system.identity
    maps = []
    for t in datum.Theta:
        te = ExtElt(e, t)
        psit_inv = profile.ext_inverse(psi(datum, te))
        maps.append(lambda x, te=te, pi=psit_inv: profile.ext_product(te, x, pi))
    return maps


def xi_orbits(datum: ZipDatum) -> list[tuple[ExtElt, ...]]:
    """Θ-orbits on ᴶW·Ω under ŵ ↦ ω·ŵ·ψ(ω)⁻¹, deterministically ordered."""
    profile = datum.profile
    JW = profile.system.min_coset_reps(datum.J)
    elements = {
        ExtElt(w, lab) for lab in profile.omega.labels for w in JW
    }
    maps = _theta_maps(datum)
    orbits = []
    remaining = set(elements)
    while remaining:
        seed = min(remaining, key=profile.sort_key)
        orb = _orbit(profile, seed, maps)
        if not set(orb) <= elements:
            raise AssertionError("twisted action left JW·Omega")
        orbits.append(orb)
        remaining -= set(orb)
    return sorted(orbits, key=lambda orb: profile.sort_key(orb[0]))


def pi_components(datum: ZipDatum) -> list[tuple[str, ...]]:
    """Π_{J,Θ}: Θ-orbits on Ω under θ·ω·φ̄(θ)⁻¹."""
    omega = datum.profile.omega
    remaining = set(omega.labels)
    out = []
    while remaining:
        seed = min(remaining, key=omega.index)
        orb = {
            omega.mul(omega.mul(t, seed), omega.inv(datum.profile.frobenius_label(t)))
            for t in datum.Theta
        }
        # close under repeated action (Theta need not act transitively in one step)
        changed = True
        while changed:
            changed = False
            for x in list(orb):
                for t in datum.Theta:
                    y = omega.mul(
                        omega.mul(t, x), omega.inv(datum.profile.frobenius_label(t))
                    )
                    if y not in orb:
                        orb.add(y)
                        changed = True
        out.append(tuple(sorted(orb, key=omega.index)))
        remaining -= set(orb)
    return sorted(out, key=lambda c: omega.index(c[0]))


def _twist_space(datum: ZipDatum) -> list[ExtElt]:
    """All v̂ = (v, θ) with v ∈ W_J, θ ∈ Θ (the ≼ exhaustion set)."""
    profile = datum.profile
    WJ = profile.system.parabolic_elements(datum.J)
    return [ExtElt(v, t) for v in WJ for t in datum.Theta]


def curly_leq(datum: ZipDatum, a: ExtElt, b: ExtElt, twists=None) -> bool:
    """a ≼ b: some v̂ ∈ W_J·Θ has v̂·a·ψ(v̂)⁻¹ ≤ b in extended Bruhat order."""
    profile = datum.profile
    if twists is None:
        twists = _twist_space(datum)
    for vhat in twists:
        moved = profile.ext_product(
            vhat, a, profile.ext_inverse(psi(datum, vhat))
        )
        if profile.ext_bruhat_leq(moved, b):
            return True
    return False


def xi_poset(datum: ZipDatum) -> StrataPoset:
    """Ξ_{J,Θ} with the order ≼ (exhaustive, or chain-backed above the cap)."""
    profile = datum.profile
    orbits = xi_orbits(datum)
    components = pi_components(datum)
    comp_of = {lab: i for i, cls in enumerate(components) for lab in cls}

    required = profile.system.parabolic_order(datum.J) * len(datum.Theta)
    if required <= datum.brute_force_cap:
        twists = _twist_space(datum)

        def leq_fn(a: PosetNode, b: PosetNode) -> bool:
            return any(
                curly_leq(datum, x, y, twists)
                for x in a.members
                for y in b.members
            )

        method = "exhaustive"
    elif datum.chain_shortcut:
        lengths_by_comp: dict[int, set[int]] = {}
        for orb in orbits:
            c = comp_of[orb[0].omega]
            ell = profile.system.length(orb[0].w)
            if ell in lengths_by_comp.setdefault(c, set()):
                raise DomainError("chain shortcut invalid: repeated length in component")
            lengths_by_comp[c].add(ell)
        for c, ells in lengths_by_comp.items():
            if ells != set(range(len(ells))):
                raise DomainError("chain shortcut invalid: lengths not contiguous")

        def leq_fn(a: PosetNode, b: PosetNode) -> bool:
            return (
                comp_of[a.rep.omega] == comp_of[b.rep.omega]
                and a.length <= b.length
            )

        method = "chain"
    else:
        raise CapacityError(required, datum.brute_force_cap)

    return _build_poset(
        profile,
        orbits,
        leq_fn,
        components,
        lambda rep: comp_of[rep.omega],
        order_method=method,
        context={
            "kind": "zip",
            "J": datum.J,
            "K": datum.K,
            "Theta": datum.Theta,
            "Delta": datum.Delta,
            "profile": profile,
            "datum": datum,
        },
    )


# ---------------------------------------------------------------------------
# the comparison map beta0 and its fibers


def beta0_image(datum: ZipDatum, what: ExtElt) -> ExtElt:
    """β̃₀: (w, ω) with w ∈ ᴶW goes to (min rep of W_J w W_{ω(K)}, ω)."""
    profile = datum.profile
    wK = profile.omega.action(what.omega).apply_set(datum.K)
    return ExtElt(profile.system.project_double(what.w, datum.J, wK), what.omega)


def beta0(xi: StrataPoset, node_index: int, bruhat: StrataPoset,
          datum: ZipDatum) -> int:
    """Index of the Bruhat class below a zip node; checked to be orbit-stable."""
    node = xi.nodes[node_index]
    target = bruhat.node_of(beta0_image(datum, node.rep))
    if len(node.members) > 1:
        other = bruhat.node_of(beta0_image(datum, node.members[1]))
        if other != target:
            raise AssertionError("beta0 is not constant on the Theta-orbit")
    return target


def beta0_fiber(bruhat: StrataPoset, node_index: int, xi: StrataPoset,
                datum: ZipDatum) -> list[int]:
    """Zip nodes over a Bruhat class, built from the double-coset factorization
    (w·y·ω·δ with y minimal for J_ŵ inside W_{ω(K)}) and cross-checked against
    the β₀-preimage."""
    profile = datum.profile
    sysm = profile.system
    w, omega = bruhat.nodes[node_index].rep
    wK = profile.omega.action(omega).apply_set(datum.K)
    J_what = sysm.kilmoyer_intersection(w, datum.J, wK)
    fiber = set()
    for y in sysm.min_coset_reps(J_what, wK):
        for delta in datum.Delta:
            elt = ExtElt(sysm.multiply(w, y), profile.omega.mul(omega, delta))
            fiber.add(xi.node_of(elt))
    preimage = {
        i for i in range(len(xi.nodes)) if beta0(xi, i, bruhat, datum) == node_index
    }
    if fiber != preimage:
        raise AssertionError("constructive fiber disagrees with beta0 preimage")
    return sorted(fiber)
