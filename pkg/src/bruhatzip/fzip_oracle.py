"""
Brute-force verification over small prime fields: the zip-group action on
GL_n(F_q), its orbit partition, Bruhat double cosets, the representative
and double-coset crosschecks, and F-zips extracted from group elements.

q is restricted to primes, so the twist l -> l^(q) is the entrywise
identity and every statement can be checked on literal matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coxeter import CartanType, DomainError, Perm, make_system

MAX_GROUP_ORDER = 10**7
MAX_ZIP_PAIRS = 10**5
PRIMES = (2, 3, 5, 7)


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def _check_bounds(n: int, q: int) -> None:
    if not 2 <= n <= 4:
        raise DomainError("oracle supports 2 <= n <= 4")
    if q not in PRIMES:
        raise DomainError(f"q must be a prime in {PRIMES}")
    if gl_order(n, q) > MAX_GROUP_ORDER:
        raise DomainError(
            f"|GL_{n}(F_{q})| = {gl_order(n, q)} exceeds the bound {MAX_GROUP_ORDER}"
        )


# ---------------------------------------------------------------------------
# linear algebra mod q

def _rref(mat: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduced echelon form and pivot columns over F_q."""
    a = mat.copy() % q
    pivots = []
    row = 0
    for col in range(a.shape[1]):
        hit = next((r for r in range(row, a.shape[0]) if a[r, col]), None)
        if hit is None:
            continue
        a[[row, hit]] = a[[hit, row]]
        a[row] = (a[row] * pow(int(a[row, col]), q - 2, q)) % q
        for r in range(a.shape[0]):
            if r != row and a[r, col]:
                a[r] = (a[r] - a[r, col] * a[row]) % q
        pivots.append(col)
        row += 1
    return a, pivots


def rank_mod(mat: np.ndarray, q: int) -> int:
    return len(_rref(mat, q)[1])


def inverse_mod(mat: np.ndarray, q: int) -> np.ndarray:
    n = mat.shape[0]
    aug, pivots = _rref(np.hstack([mat % q, np.eye(n, dtype=np.int64)]), q)
    if pivots[:n] != list(range(n)):
        raise DomainError("matrix is not invertible")
    return aug[:, n:]


def _solve_in_span(basis: np.ndarray, vecs: np.ndarray, q: int) -> np.ndarray:
    """Coordinates of each column of vecs in the column span of basis."""
    k = basis.shape[1]
    aug, pivots = _rref(np.hstack([basis, vecs]) % q, q)
    if pivots != list(range(k)):
        raise DomainError("columns dependent or vector outside span")
    return aug[:k, k:]


def nullspace_mod(mat: np.ndarray, q: int) -> np.ndarray:
    """Column basis of the kernel of mat over F_q."""
    red, pivots = _rref(mat, q)
    ncols = mat.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    cols = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for row, pc in enumerate(pivots):
            v[pc] = (-red[row, f]) % q
        cols.append(v)
    if not cols:
        return np.zeros((ncols, 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T


# ---------------------------------------------------------------------------
# exhaustive GL_n(F_q)

@lru_cache(maxsize=None)
def _group_table(n: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    """(sorted codes, matrices) of GL_n(F_q); code = row-major base-q digits."""
    _check_bounds(n, q)
    total = q ** (n * n)
    rest = np.arange(total)
    digits = np.empty((total, n * n), dtype=np.int64)
    for k in range(n * n - 1, -1, -1):
        rest, digits[:, k] = np.divmod(rest, q)
    mats = digits.reshape(total, n, n)
    det = np.zeros(total, dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        term = np.ones(total, dtype=np.int64)
        for i, j in enumerate(perm):
            term = (term * mats[:, i, j]) % q
        det = (det + sign * term) % q
    keep = det != 0
    codes = np.arange(total)[keep]
    return codes, mats[keep]


def _perm_sign(perm) -> int:
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


def _encode(mats: np.ndarray, q: int) -> np.ndarray:
    n = mats.shape[-1]
    flat = mats.reshape(*mats.shape[:-2], n * n) % q
    powers = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    return flat @ powers


def _lookup(codes: np.ndarray, queries: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(codes, queries)
    if not np.array_equal(codes[idx], queries):
        raise AssertionError("action left the group")
    return idx


# ---------------------------------------------------------------------------
# parabolic and zip-group data

@dataclass(frozen=True)
class BlockData:
    """Block structure of the pair of opposite parabolics attached to a
    weakly decreasing cocharacter: consecutive equal weights form blocks."""

    n: int
    q: int
    weights: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]  # 0-based index ranges

    @property
    def J(self) -> frozenset[int]:
        return frozenset(
            i for i in range(1, self.n) if self.weights[i - 1] == self.weights[i]
        )

    def _block_of(self, i: int) -> int:
        return next(b for b, blk in enumerate(self.blocks) if i in blk)

    def in_levi(self, g: np.ndarray) -> bool:
        return all(
            g[i, j] == 0
            for i in range(self.n)
            for j in range(self.n)
            if self._block_of(i) != self._block_of(j)
        )

    def in_p_plus(self, g: np.ndarray) -> bool:
        return all(
            g[i, j] == 0
            for i in range(self.n)
            for j in range(self.n)
            if self._block_of(i) > self._block_of(j)
        )

    def in_p_minus(self, g: np.ndarray) -> bool:
        return self.in_p_plus(g.T)

    @property
    def levi_order(self) -> int:
        out = 1
        for blk in self.blocks:
            out *= gl_order(len(blk), self.q)
        return out

    @property
    def unipotent_order(self) -> int:
        above = sum(
            len(a) * len(b) for a, b in itertools.combinations(self.blocks, 2)
        )
        return self.q**above

    def iter_levi(self):
        small = [
            [m for m in _group_table(len(blk), self.q)[1]] if len(blk) > 1
            else [np.array([[c]], dtype=np.int64) for c in range(1, self.q)]
            for blk in self.blocks
        ]
        for pieces in itertools.product(*small):
            g = np.zeros((self.n, self.n), dtype=np.int64)
            for blk, piece in zip(self.blocks, pieces):
                g[np.ix_(blk, blk)] = piece
            yield g

    def _iter_unipotent(self, upper: bool):
        spots = [
            (i, j)
            for i in range(self.n)
            for j in range(self.n)
            if (self._block_of(i) < self._block_of(j)) == upper
            and self._block_of(i) != self._block_of(j)
        ]
        for vals in itertools.product(range(self.q), repeat=len(spots)):
            g = np.eye(self.n, dtype=np.int64)
            for (i, j), c in zip(spots, vals):
                g[i, j] = c
            yield g

    def iter_u_plus(self):
        return self._iter_unipotent(True)

    def iter_u_minus(self):
        return self._iter_unipotent(False)


def parabolics_from_cochar(r, q: int) -> BlockData:
    r = tuple(int(x) for x in r)
    n = len(r)
    _check_bounds(n, q)
    if any(r[i] < r[i + 1] for i in range(n - 1)):
        raise DomainError("cocharacter weights must be weakly decreasing")
    blocks, start = [], 0
    for i in range(1, n + 1):
        if i == n or r[i] != r[i - 1]:
            blocks.append(tuple(range(start, i)))
            start = i
    return BlockData(n, q, r, tuple(blocks))


def zip_group_elements(r, q: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """All pairs (l·u_+, l·u_-) of the zip group on F_q-points (q prime,
    so the twist l -> l^(q) is the identity)."""
    data = parabolics_from_cochar(r, q)
    count = data.levi_order * data.unipotent_order**2
    if count > MAX_ZIP_PAIRS:
        raise DomainError(f"zip group has {count} pairs, bound {MAX_ZIP_PAIRS}")
    return [
        ((ell @ up) % q, (ell @ um) % q)
        for ell in data.iter_levi()
        for up in data.iter_u_plus()
        for um in data.iter_u_minus()
    ]


# ---------------------------------------------------------------------------
# orbit machinery

def _transvection(n: int, i: int, j: int) -> np.ndarray:
    g = np.eye(n, dtype=np.int64)
    g[i, j] = 1
    return g


def _primitive_root(q: int) -> int:
    for g in range(2, q):
        if all(pow(g, (q - 1) // f, q) != 1 for f in (2, 3, 5) if (q - 1) % f == 0):
            return g
    return 1


def _torus_gens(n: int, q: int) -> list[np.ndarray]:
    if q == 2:
        return []
    gamma = _primitive_root(q)
    out = []
    for i in range(n):
        g = np.eye(n, dtype=np.int64)
        g[i, i] = gamma
        out.append(g)
    return out


def _levi_gens(data: BlockData) -> list[np.ndarray]:
    n = data.n
    gens = _torus_gens(n, data.q)
    for blk in data.blocks:
        gens += [_transvection(n, i, j) for i in blk for j in blk if i != j]
    return gens


def _unipotent_gens(data: BlockData, upper: bool) -> list[np.ndarray]:
    return [
        _transvection(data.n, i, j)
        for i in range(data.n)
        for j in range(data.n)
        if data._block_of(i) != data._block_of(j)
        and (data._block_of(i) < data._block_of(j)) == upper
    ]


def _parabolic_gens(n: int, q: int, J) -> list[np.ndarray]:
    """Generators of the standard parabolic P_J (block upper triangular,
    blocks = components of consecutive indices joined by J)."""
    same = {i: {i} for i in range(n)}
    for s in J:
        merged = same[s - 1] | same[s]
        for i in merged:
            same[i] = merged
    gens = _torus_gens(n, q)
    gens += [_transvection(n, i, j) for i in range(n) for j in range(i + 1, n)]
    gens += [
        _transvection(n, i, j)
        for i in range(n)
        for j in range(i)
        if j in same[i]
    ]
    return gens


def _orbit_tables(n: int, q: int, gen_pairs) -> tuple[np.ndarray, np.ndarray]:
    codes, mats = _group_table(n, q)
    tables = np.empty((len(gen_pairs), len(codes)), dtype=np.int64)
    for k, (a, b) in enumerate(gen_pairs):
        binv = inverse_mod(b, q)
        moved = np.einsum("ij,njk,kl->nil", a, mats, binv) % q
        tables[k] = _lookup(codes, _encode(moved, q))
    return codes, tables


def _partition_from_tables(codes: np.ndarray, tables: np.ndarray) -> np.ndarray:
    orbit_of = np.full(len(codes), -1, dtype=np.int64)
    label = 0
    for seed in range(len(codes)):
        if orbit_of[seed] >= 0:
            continue
        frontier = np.array([seed])
        orbit_of[seed] = label
        while len(frontier):
            nxt = np.unique(tables[:, frontier])
            frontier = nxt[orbit_of[nxt] < 0]
            orbit_of[frontier] = label
        label += 1
    return orbit_of


@dataclass(frozen=True)
class OrbitPartition:
    """A partition of GL_n(F_q), with orbits labeled by their minimal
    member in row-major lexicographic order (= minimal code).

    suborbit_of, when present, is a finer partition (the rational orbits
    underlying a stratum partition)."""

    n: int
    q: int
    codes: np.ndarray
    orbit_of: np.ndarray
    suborbit_of: np.ndarray | None = None

    @property
    def count(self) -> int:
        return int(self.orbit_of.max()) + 1

    @property
    def sizes(self) -> list[int]:
        return np.bincount(self.orbit_of).tolist()

    @property
    def labels(self) -> list[int]:
        """Canonical (minimal) member code of each orbit, by orbit id."""
        out = [None] * self.count
        for code, orb in zip(self.codes.tolist(), self.orbit_of.tolist()):
            if out[orb] is None:
                out[orb] = code
        return out

    def orbit_of_matrix(self, g: np.ndarray) -> int:
        idx = _lookup(self.codes, _encode(g[np.newaxis], self.q))[0]
        return int(self.orbit_of[idx])

    def members(self, orbit: int) -> np.ndarray:
        _, mats = _group_table(self.n, self.q)
        return mats[self.orbit_of == orbit]


def _run_partition(n: int, q: int, gen_pairs) -> OrbitPartition:
    codes, tables = _orbit_tables(n, q, gen_pairs)
    orbit_of = _partition_from_tables(codes, tables)
    # relabel so ids follow the canonical minimal-code order; since seeds are
    # visited in code order the labels already are, but make it explicit
    return OrbitPartition(n, q, codes, orbit_of)


def zip_generator_pairs(data: BlockData) -> list[tuple[np.ndarray, np.ndarray]]:
    eye = np.eye(data.n, dtype=np.int64)
    pairs = [(ell, ell) for ell in _levi_gens(data)]
    pairs += [(u, eye) for u in _unipotent_gens(data, True)]
    pairs += [(eye, u) for u in _unipotent_gens(data, False)]
    return pairs


def arithmetic_orbits(n: int, q: int, r, gen_pairs=None) -> OrbitPartition:
    """Orbits of the F_q-points of the zip group on GL_n(F_q) under
    (p_+, p_-)·g = p_+ g p_-^{-1}.

    These are finer than the zip strata: a stratum (an orbit over the
    algebraic closure) can split into several rational orbits.
    """
    data = parabolics_from_cochar(r, q)
    if data.n != n:
        raise DomainError("cocharacter length must equal n")
    if gen_pairs is None:
        gen_pairs = zip_generator_pairs(data)
    return _run_partition(n, q, gen_pairs)


# ---------------------------------------------------------------------------
# geometric zip strata via a discrete complete invariant
#
# Over the algebraic closure the orbits are the zip strata. Their trace on
# the F_q-points is recovered by refining nothing and coarsening the
# rational orbit partition along a discrete invariant: the lattice of
# subspaces generated from {0, M} by images and preimages of the two
# filtered comparison operators F (kernel C^hi, image D_lo) and V (kernel
# D_lo, image C^hi), together with all its dimension data. The invariant
# is rational, insensitive to field extension, and complete for
# cocharacters with at most two distinct weights.


def _subspace_key(basis: np.ndarray, q: int) -> tuple:
    """Canonical label (rref rows) of a column span."""
    if basis.shape[1] == 0:
        return ()
    red, piv = _rref(basis.T % q, q)
    return tuple(tuple(int(x) for x in red[row]) for row in range(len(piv)))


def _key_basis(key: tuple, n: int) -> np.ndarray:
    if not key:
        return np.zeros((n, 0), dtype=np.int64)
    return np.array(key, dtype=np.int64).T


def _image_key(op: np.ndarray, key: tuple, q: int) -> tuple:
    return _subspace_key((op @ _key_basis(key, op.shape[0])) % q, q)


def _preimage_key(op: np.ndarray, key: tuple, q: int) -> tuple:
    target = _key_basis(key, op.shape[0])
    ns = nullspace_mod(np.hstack([op % q, (-target) % q]), q)
    return _subspace_key(ns[: op.shape[1], :], q)


def _intersection_dim(k1: tuple, k2: tuple, n: int, q: int) -> int:
    b1, b2 = _key_basis(k1, n), _key_basis(k2, n)
    if b1.shape[1] == 0 or b2.shape[1] == 0:
        return 0
    return b1.shape[1] + b2.shape[1] - rank_mod(np.hstack([b1, b2]), q)


def zip_stratum_invariant(g: np.ndarray, r, q: int) -> tuple:
    """Discrete invariant separating the zip strata of GL_n.

    Supports cocharacters with at most two distinct weights; a single
    weight gives the one-stratum (twisted-conjugacy) case.
    """
    r = tuple(int(x) for x in r)
    n = len(r)
    hi = max(r)
    lo_idx = [j for j in range(n) if r[j] != hi]
    if len(set(r)) > 2:
        raise DomainError(
            "geometric stratum invariant supports at most two distinct weights"
        )
    if not lo_idx:
        return ("single-stratum",)
    g = np.asarray(g, dtype=np.int64) % q
    proj_lo = np.zeros((n, n), dtype=np.int64)
    for j in lo_idx:
        proj_lo[j, j] = 1
    F = (g @ proj_lo) % q
    ginv = inverse_mod(g, q)
    V = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        if r[j] == hi:
            V[j] = ginv[j]
    zero, full = (), _subspace_key(np.eye(n, dtype=np.int64), q)
    seen = {zero, full}
    work = [zero, full]
    while work:
        s = work.pop()
        for new in (
            _image_key(F, s, q),
            _image_key(V, s, q),
            _preimage_key(F, s, q),
            _preimage_key(V, s, q),
        ):
            if new not in seen:
                seen.add(new)
                work.append(new)
        if len(seen) > 4**n:
            raise AssertionError("subspace closure did not stabilize")
    keys = sorted(seen)
    rows = []
    for s in keys:
        rows.append(
            (
                len(s),
                len(_image_key(F, s, q)),
                len(_image_key(V, s, q)),
                tuple(sorted(_intersection_dim(s, t, n, q) for t in keys)),
            )
        )
    return tuple(sorted(rows))


def orbit_partition(n: int, q: int, r) -> OrbitPartition:
    """Zip strata of GL_n(F_q): orbits of the zip group over the algebraic
    closure under (p_+, p_-)·g = p_+ g p_-^{-1}, traced on the F_q-points.

    Computed by coarsening the rational orbit partition along the
    stratum invariant, which is checked to be constant on each rational
    orbit. Orbits are labeled by their minimal member in row-major
    lexicographic order.
    """
    arith = arithmetic_orbits(n, q, r)
    _, mats = _group_table(n, q)
    inv_of_orbit = []
    for orb in range(arith.count):
        members = mats[arith.orbit_of == orb]
        iv = zip_stratum_invariant(members[0], r, q)
        if zip_stratum_invariant(members[len(members) // 2], r, q) != iv:
            raise AssertionError("stratum invariant varies inside a rational orbit")
        inv_of_orbit.append(iv)
    # group arithmetic orbits; geometric ids ordered by minimal member code
    by_inv: dict[tuple, list[int]] = {}
    for orb, iv in enumerate(inv_of_orbit):
        by_inv.setdefault(iv, []).append(orb)
    groups = sorted(by_inv.values(), key=min)
    remap = np.empty(arith.count, dtype=np.int64)
    for gid, orbs in enumerate(groups):
        for orb in orbs:
            remap[orb] = gid
    return OrbitPartition(
        n, q, arith.codes, remap[arith.orbit_of], suborbit_of=arith.orbit_of
    )


# ---------------------------------------------------------------------------
# Bruhat double cosets and the crosscheck

def perm_matrix(w: Perm) -> np.ndarray:
    n = len(w)
    g = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        g[w[j] - 1, j] = 1
    return g


@dataclass(frozen=True)
class DoubleCosets:
    partition: OrbitPartition
    reps: tuple[Perm, ...]  # minimal double coset reps, indexed by class id

    def class_of(self, g: np.ndarray) -> int:
        return self.partition.orbit_of_matrix(g)


def bruhat_double_cosets(n: int, q: int, J, K) -> DoubleCosets:
    """P_J\\GL_n(F_q)/P_K, with classes labeled by the minimal permutation
    representative; the class count must equal |ᴶWᴷ|."""
    _check_bounds(n, q)
    sysm = make_system(CartanType("A", n - 1))
    J, K = frozenset(J), frozenset(K)
    eye = np.eye(n, dtype=np.int64)
    pairs = [(x, eye) for x in _parabolic_gens(n, q, J)]
    pairs += [(eye, y) for y in _parabolic_gens(n, q, K)]
    part = _run_partition(n, q, pairs)
    reps = sysm.min_double_reps(J, K)
    if len(reps) != part.count:
        raise AssertionError(
            f"{part.count} double cosets but {len(reps)} minimal representatives"
        )
    by_class: dict[int, Perm] = {}
    for w in reps:
        c = part.orbit_of_matrix(perm_matrix(w))
        if c in by_class:
            raise AssertionError("two minimal representatives share a class")
        by_class[c] = w
    return DoubleCosets(part, tuple(by_class[c] for c in range(part.count)))


def _word_str(sysm, w: Perm) -> str:
    return ".".join(str(x) for x in sysm.reduced_word(w)) or "e"


def crosscheck(n: int, q: int, r) -> dict:
    """Verify the combinatorial predictions on GL_n(F_q) literal matrices:

    (a) E-orbit count equals |ᴶW|;
    (b) the matrices ẇ·g₀ (w ∈ ᴶW, g₀ = ẋ₀) biject with the orbits;
    (c) right-shifting an orbit of ẇ·g₀ by ẇ₀ lands it inside the single
        double coset P_J·ŵ'·P_K, ŵ' = project_double(w, J, K) — the
        double coset predicted by β₀;
    (d) the double-coset count equals |ᴶWᴷ|.
    """
    data = parabolics_from_cochar(r, q)
    if data.n != n:
        raise DomainError("cocharacter length must equal n")
    sysm = make_system(CartanType("A", n - 1))
    J = data.J
    w0 = sysm.longest_element()
    K = frozenset(
        sysm._simple_index[sysm.product(w0, sysm.simple[j], w0)] for j in J
    )
    x0 = sysm.multiply(sysm.longest_element(K), w0)
    g0 = perm_matrix(x0)
    w0mat = perm_matrix(w0)

    part = orbit_partition(n, q, r)
    JW = sysm.min_coset_reps(J)
    mismatches: list[str] = []

    check_a = part.count == len(JW)
    if not check_a:
        mismatches.append(f"orbit count {part.count} != |JW| {len(JW)}")

    orbit_by_rep = {}
    for w in JW:
        orbit_by_rep[w] = part.orbit_of_matrix((perm_matrix(w) @ g0) % q)
    check_b = sorted(orbit_by_rep.values()) == list(range(part.count))
    if not check_b:
        mismatches.append(
            "representative orbits "
            f"{sorted(orbit_by_rep.values())} are not a bijection"
        )

    dc = bruhat_double_cosets(n, q, J, K)
    check_d = len(dc.reps) == len(sysm.min_double_reps(J, K))

    check_c = True
    beta = {}
    codes, mats = _group_table(n, q)
    for w in JW:
        target = sysm.project_double(w, J, K)
        beta[_word_str(sysm, w)] = _word_str(sysm, target)
        expected = dc.class_of(perm_matrix(target))
        members = mats[part.orbit_of == orbit_by_rep[w]]
        shifted = np.einsum("nij,jk->nik", members, w0mat) % q
        classes = dc.partition.orbit_of[_lookup(codes, _encode(shifted, q))]
        if not np.all(classes == expected):
            check_c = False
            mismatches.append(
                f"orbit of {_word_str(sysm, w)} meets double cosets "
                f"{sorted(set(classes.tolist()))}, expected {{{expected}}}"
            )

    checks = {
        "a_orbit_count": check_a,
        "b_representatives": check_b,
        "c_double_cosets": check_c,
        "d_coset_count": check_d,
    }
    return {
        "n": n,
        "q": q,
        "weights": list(data.weights),
        "J": sorted(J),
        "K": sorted(K),
        "group_order": gl_order(n, q),
        "orbit_count": part.count,
        "orbit_sizes": sorted(part.sizes),
        "rational_orbit_count": int(part.suborbit_of.max()) + 1,
        "double_coset_count": len(dc.reps),
        "beta": beta,
        "checks": checks,
        "pass": all(checks.values()),
        "mismatches": mismatches,
    }


# ---------------------------------------------------------------------------
# F-zips from group elements

@dataclass(frozen=True)
class FZipData:
    """A descending filtration C, an ascending filtration D, and the graded
    comparison isomorphisms φ_i, all as column-basis matrices over F_q."""

    q: int
    weights: tuple[int, ...]
    C: dict[int, np.ndarray]
    D: dict[int, np.ndarray]
    phi: dict[int, np.ndarray]


def fzip_from_element(g: np.ndarray, r, q: int) -> FZipData:
    """C from the weight grading of r, D = g·(opposite filtration), and
    φ_i the induced invertible maps on the graded pieces."""
    r = tuple(int(x) for x in r)
    n = len(r)
    g = np.asarray(g, dtype=np.int64) % q
    if rank_mod(g, q) != n:
        raise DomainError("g must be invertible")
    eye = np.eye(n, dtype=np.int64)
    lo, hi = min(r), max(r)
    C = {
        i: eye[:, [j for j in range(n) if r[j] >= i]]
        for i in range(lo, hi + 2)
    }
    D = {
        i: (g @ eye[:, [j for j in range(n) if r[j] <= i]]) % q
        for i in range(lo - 1, hi + 1)
    }
    phi = {}
    for i in range(lo, hi + 1):
        grade = [j for j in range(n) if r[j] == i]
        if not grade:
            phi[i] = np.zeros((0, 0), dtype=np.int64)
            continue
        # complement basis of D_{i-1} inside D_i: standard vectors lying in
        # D_i where possible, columns of D_i otherwise
        below = D[i - 1]
        comp_cols: list[np.ndarray] = []
        candidates = [eye[:, [j]] for j in range(n)] + [
            D[i][:, [c]] for c in range(D[i].shape[1])
        ]
        for vec in candidates:
            if len(comp_cols) == len(grade):
                break
            cand = np.hstack([below] + comp_cols + [vec])
            if rank_mod(cand, q) == cand.shape[1] and rank_mod(
                np.hstack([D[i], vec]), q
            ) == D[i].shape[1]:
                comp_cols.append(vec)
        basis = np.hstack([below] + comp_cols)
        coords = _solve_in_span(basis, (g @ eye[:, grade]) % q, q)
        block = coords[below.shape[1]:, :]
        if rank_mod(block, q) != len(grade):
            raise AssertionError("graded comparison map is not invertible")
        phi[i] = block
    return FZipData(q, r, C, D, phi)


def intersection_table(fz: FZipData) -> tuple[tuple[int, ...], ...]:
    """dim(C^i ∩ D_j) for all filtration steps — an E-orbit invariant."""
    q = fz.q
    rows = []
    for i in sorted(fz.C):
        row = []
        for j in sorted(fz.D):
            u, v = fz.C[i], fz.D[j]
            if u.shape[1] == 0 or v.shape[1] == 0:
                row.append(0)
                continue
            row.append(u.shape[1] + v.shape[1] - rank_mod(np.hstack([u, v]), q))
        rows.append(tuple(row))
    return tuple(rows)
