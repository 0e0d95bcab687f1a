"""
Coxeter-system arithmetic for the classical Weyl groups A, B/C, D.

Elements are centrosymmetric permutations of {1..n} in one-line notation
(plain tuples), embedded in S_n:

    A_m : n = m+1, s_i = (i,i+1)
    B_m : n = 2m+1, s_i = (i,i+1)(n-i,n-i+1) for i < m, s_m = (m,m+2)
    D_m : n = 2m,   s_i as above for i < m,   s_m = (m-1,m+1)(m,m+2)

Type C shares the type-B Weyl group.  The composition convention is
(w*v)(i) = w(v(i)).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

Perm = tuple[int, ...]

FAMILIES = ("A", "B", "C", "D")
_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 3}


class GroupTypeError(ValueError):
    """Family/rank combination outside the supported classical types."""


class DegreeMismatchError(ValueError):
    """Operands live in different ambient symmetric groups."""


class DomainError(ValueError):
    """Argument violates an operation's precondition."""


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GroupTypeError(f"unknown family {self.family!r}")
        if self.rank < _MIN_RANK[self.family]:
            raise GroupTypeError(
                f"{self.family}_{self.rank}: rank must be >= {_MIN_RANK[self.family]}"
            )

    @property
    def ambient_degree(self) -> int:
        m = self.rank
        if self.family == "A":
            return m + 1
        if self.family in ("B", "C"):
            return 2 * m + 1
        return 2 * m


def _transpositions(n: int, pairs) -> Perm:
    image = list(range(1, n + 1))
    for a, b in pairs:
        image[a - 1], image[b - 1] = image[b - 1], image[a - 1]
    return tuple(image)


class CoxeterSystem:
    """A classical Weyl group with its simple reflections and cached lengths."""

    def __init__(self, ctype: CartanType):
        self.ctype = ctype
        self.n = ctype.ambient_degree
        self.m = ctype.rank
        self.identity: Perm = tuple(range(1, self.n + 1))
        self.simple: dict[int, Perm] = {
            i: self._make_simple(i) for i in range(1, self.m + 1)
        }
        self.index_set = frozenset(range(1, self.m + 1))
        self._simple_index = {p: i for i, p in self.simple.items()}
        self._length: dict[Perm, int] = {}

    def _make_simple(self, i: int) -> Perm:
        n, m = self.n, self.m
        fam = self.ctype.family
        if fam == "A":
            return _transpositions(n, [(i, i + 1)])
        if i < m:
            return _transpositions(n, [(i, i + 1), (n - i, n - i + 1)])
        if fam in ("B", "C"):
            return _transpositions(n, [(m, m + 2)])
        return _transpositions(n, [(m - 1, m + 1), (m, m + 2)])

    # -- basic arithmetic ---------------------------------------------------

    def multiply(self, w: Perm, v: Perm) -> Perm:
        if len(w) != len(v):
            raise DegreeMismatchError(f"degree {len(w)} vs {len(v)}")
        return tuple(w[j - 1] for j in v)

    def product(self, *ws: Perm) -> Perm:
        out = self.identity
        for w in ws:
            out = self.multiply(out, w)
        return out

    def inverse(self, w: Perm) -> Perm:
        inv = [0] * len(w)
        for i, j in enumerate(w, start=1):
            inv[j - 1] = i
        return tuple(inv)

    def word_to_element(self, word) -> Perm:
        return self.product(*(self.simple[i] for i in word))

    def check_element(self, w: Perm) -> Perm:
        """Validate the one-line image against the group's invariants."""
        n = self.n
        if sorted(w) != list(range(1, n + 1)):
            raise DomainError(f"{w} is not a permutation of 1..{n}")
        fam = self.ctype.family
        if fam in ("B", "C", "D"):
            for i in range(1, n + 1):
                if w[i - 1] + w[n - i] != n + 1:
                    raise DomainError(f"{w} is not centrosymmetric")
        if fam == "D":
            m = self.m
            if sum(1 for i in range(m) if w[i] > m) % 2 != 0:
                raise DomainError(f"{w} has an odd number of sign changes")
        return w

    # -- length -------------------------------------------------------------

    def _signed_form(self, w: Perm) -> tuple[int, ...]:
        # Signed one-line form on positions 1..m, conjugated by position/value
        # reversal into the convention with the sign generator at position 1.
        n, m = self.n, self.m
        u = []
        for i in range(1, m + 1):
            j = w[i - 1]
            u.append(j if j <= m else -(n + 1 - j))
        v = []
        for i in range(m):
            x = u[m - 1 - i]
            v.append((m + 1 - abs(x)) * (1 if x > 0 else -1))
        return tuple(v)

    def length(self, w: Perm) -> int:
        cached = self._length.get(w)
        if cached is not None:
            return cached
        fam = self.ctype.family
        if fam == "A":
            ell = sum(1 for a, b in combinations(w, 2) if a > b)
        else:
            v = self._signed_form(w)
            inv = sum(1 for a, b in combinations(v, 2) if a > b)
            if fam == "D":
                ell = inv + sum(-x - 1 for x in v if x < 0)
            else:
                ell = inv + sum(-x for x in v if x < 0)
        self._length[w] = ell
        return ell

    def is_left_descent(self, i: int, w: Perm) -> bool:
        return self.length(self.multiply(self.simple[i], w)) < self.length(w)

    def is_right_descent(self, w: Perm, i: int) -> bool:
        return self.length(self.multiply(w, self.simple[i])) < self.length(w)

    def left_descents(self, w: Perm):
        return [i for i in range(1, self.m + 1) if self.is_left_descent(i, w)]

    def reduced_word(self, w: Perm) -> tuple[int, ...]:
        """Reduced word choosing the smallest-index left descent at each step."""
        word = []
        while w != self.identity:
            for i in range(1, self.m + 1):
                if self.is_left_descent(i, w):
                    word.append(i)
                    w = self.multiply(self.simple[i], w)
                    break
            else:  # pragma: no cover - length() would be inconsistent
                raise AssertionError("non-identity element with no descent")
        return tuple(word)

    # -- Bruhat order -------------------------------------------------------

    def bruhat_leq(self, v: Perm, w: Perm) -> bool:
        """Standard lifting algorithm over a reduced word of w."""
        if len(v) != len(w):
            raise DegreeMismatchError(f"degree {len(v)} vs {len(w)}")
        if self.length(v) > self.length(w):
            return False
        u = v
        for i in self.reduced_word(w):
            su = self.multiply(self.simple[i], u)
            if self.length(su) < self.length(u):
                u = su
        return u == self.identity

    # -- longest elements and coset representatives -------------------------

    def longest_element(self, J=None) -> Perm:
        """w_{0,J} by greedy ascent inside W_J; J=None (or I) gives w_0."""
        J = self.index_set if J is None else frozenset(J)
        w = self.identity
        improved = True
        while improved:
            improved = False
            for j in sorted(J):
                ws = self.multiply(w, self.simple[j])
                if self.length(ws) > self.length(w):
                    w = ws
                    improved = True
        return w

    def min_coset_reps(self, J, K=None) -> list[Perm]:
        """All minimal-length representatives of W_J\\W_K (K=None means K=I).

        BFS from the identity by right multiplication inside W_K, visiting
        only elements without a left J-descent; W_K itself is never
        enumerated.  Output sorted by (length, one-line notation).
        """
        J = frozenset(J)
        gens = sorted(self.index_set if K is None else frozenset(K))
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for i in gens:
                wn = self.multiply(w, self.simple[i])
                if wn in seen or self.length(wn) < self.length(w):
                    continue
                if any(self.is_left_descent(j, wn) for j in J):
                    continue
                seen.add(wn)
                queue.append(wn)
        return sorted(seen, key=lambda w: (self.length(w), w))

    def min_double_reps(self, J, K) -> list[Perm]:
        """The set of minimal double-coset representatives of W_J\\W/W_K."""
        K = frozenset(K)
        return [
            w
            for w in self.min_coset_reps(J)
            if not any(self.is_right_descent(w, k) for k in K)
        ]

    def project_double(self, w: Perm, J, K) -> Perm:
        """Minimal-length element of W_J w W_K, by alternate descent stripping."""
        J, K = frozenset(J), frozenset(K)
        changed = True
        while changed:
            changed = False
            for j in J:
                if self.is_left_descent(j, w):
                    w = self.multiply(self.simple[j], w)
                    changed = True
            for k in K:
                if self.is_right_descent(w, k):
                    w = self.multiply(w, self.simple[k])
                    changed = True
        return w

    def kilmoyer_intersection(self, w: Perm, J, K) -> frozenset[int]:
        """J_w = {k in K : w s_k w^-1 is a simple reflection of J}."""
        J, K = frozenset(J), frozenset(K)
        if self.project_double(w, J, K) != w:
            raise DomainError("element is not a minimal double-coset representative")
        winv = self.inverse(w)
        out = set()
        simple_J = {self.simple[j] for j in J}
        for k in K:
            conj = self.product(w, self.simple[k], winv)
            if conj in simple_J:
                out.add(k)
        return frozenset(out)

    def howlett_factor(self, v: Perm, J, K) -> tuple[Perm, Perm, Perm]:
        """Unique factorization v = w_J * w * w_K with additive lengths.

        w is the minimal double-coset representative, w_J in W_J and
        w_K in W_K minimal for J_w on the left.
        """
        J, K = frozenset(J), frozenset(K)
        w = self.project_double(v, J, K)
        # Strip left J-descents off v to get the minimal element of W_J v.
        a = v
        changed = True
        while changed:
            changed = False
            for j in J:
                if self.is_left_descent(j, a):
                    a = self.multiply(self.simple[j], a)
                    changed = True
        w_J = self.multiply(v, self.inverse(a))
        w_K = self.multiply(self.inverse(w), a)
        assert self.product(w_J, w, w_K) == v
        assert self.length(v) == self.length(w_J) + self.length(w) + self.length(w_K)
        return w_J, w, w_K

    def coxeter_order(self, i: int, j: int) -> int:
        """m(s_i, s_j): the order of s_i s_j."""
        prod = self.multiply(self.simple[i], self.simple[j])
        w, d = prod, 1
        while w != self.identity:
            w = self.multiply(w, prod)
            d += 1
        return d

    def parabolic_order(self, J) -> int:
        """|W_J| in closed form, via the type of each sub-diagram component.

        Components of classical sub-diagrams are paths (type A, or B when a
        label-4 edge occurs) or have one degree-3 node (type D).
        """
        J = sorted(frozenset(J))
        edges = {
            (a, b): self.coxeter_order(a, b)
            for ai, a in enumerate(J)
            for b in J[ai + 1:]
            if self.coxeter_order(a, b) > 2
        }
        parent = {j: j for j in J}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in edges:
            parent[find(a)] = find(b)
        comps: dict[int, list[int]] = {}
        for j in J:
            comps.setdefault(find(j), []).append(j)

        import math

        total = 1
        for comp in comps.values():
            k = len(comp)
            comp_edges = [e for e in edges if e[0] in comp]
            degree = {j: 0 for j in comp}
            has_four = False
            for (a, b), order in ((e, edges[e]) for e in comp_edges):
                degree[a] += 1
                degree[b] += 1
                if order >= 4:
                    has_four = True
            if has_four:
                total *= 2**k * math.factorial(k)
            elif any(d >= 3 for d in degree.values()):
                total *= 2 ** (k - 1) * math.factorial(k)
            else:
                total *= math.factorial(k + 1)
        return total

    def parabolic_elements(self, J, cap: int | None = None) -> list[Perm]:
        """Enumerate W_J by BFS inside the parabolic (exponential; capped)."""
        J = sorted(frozenset(J))
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for j in J:
                wn = self.multiply(w, self.simple[j])
                if wn not in seen:
                    if cap is not None and len(seen) >= cap:
                        raise DomainError(f"parabolic enumeration exceeds cap {cap}")
                    seen.add(wn)
                    queue.append(wn)
        return sorted(seen, key=lambda w: (self.length(w), w))


def make_system(ctype: CartanType) -> CoxeterSystem:
    return CoxeterSystem(ctype)
