"""Core Coxeter machinery, oracle-checked by full enumeration at small rank."""

import itertools

import pytest

from bruhatzip.coxeter import (
    CartanType,
    DomainError,
    GroupTypeError,
    make_system,
)

ORDERS = {
    ("A", 2): 6,
    ("A", 3): 24,
    ("B", 2): 8,
    ("B", 3): 48,
    ("B", 4): 384,
    ("C", 3): 48,
    ("D", 3): 24,
    ("D", 4): 192,
}


def enumerate_group(sysm):
    seen = {sysm.identity}
    frontier = [sysm.identity]
    while frontier:
        nxt = []
        for w in frontier:
            for s in sysm.simple.values():
                v = sysm.multiply(w, s)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def bfs_lengths(sysm):
    """Word lengths from the Cayley-graph BFS — the length oracle."""
    dist = {sysm.identity: 0}
    frontier = [sysm.identity]
    while frontier:
        nxt = []
        for w in frontier:
            for s in sysm.simple.values():
                v = sysm.multiply(w, s)
                if v not in dist:
                    dist[v] = dist[w] + 1
                    nxt.append(v)
        frontier = nxt
    return dist


def test_cartan_type_validation():
    with pytest.raises(GroupTypeError):
        CartanType("E", 6)
    with pytest.raises(GroupTypeError):
        CartanType("D", 2)
    assert CartanType("B", 2).ambient_degree == 5
    assert CartanType("D", 3).ambient_degree == 6


@pytest.mark.parametrize("family,rank", sorted(ORDERS))
def test_group_order_and_lengths(family, rank):
    sysm = make_system(CartanType(family, rank))
    dist = bfs_lengths(sysm)
    assert len(dist) == ORDERS[(family, rank)]
    for w, d in dist.items():
        assert sysm.length(w) == d
        word = sysm.reduced_word(w)
        assert len(word) == d
        assert sysm.word_to_element(word) == w


def test_simple_relations():
    sysm = make_system(CartanType("B", 3))
    for i in sysm.simple:
        assert sysm.multiply(sysm.simple[i], sysm.simple[i]) == sysm.identity
    assert sysm.coxeter_order(1, 2) == 3
    assert sysm.coxeter_order(2, 3) == 4
    assert sysm.coxeter_order(1, 3) == 2
    d4 = make_system(CartanType("D", 4))
    assert d4.coxeter_order(2, 4) == 3
    assert d4.coxeter_order(3, 4) == 2


def test_check_element():
    sysm = make_system(CartanType("D", 3))
    for w in enumerate_group(sysm):
        sysm.check_element(w)
    with pytest.raises(DomainError):
        sysm.check_element((2, 1, 3, 4, 5, 6))  # not centrosymmetric
    with pytest.raises(DomainError):
        # centrosymmetric but odd number of sign changes: not in D_3
        sysm.check_element((6, 2, 3, 4, 5, 1))


def test_inverse_and_product():
    sysm = make_system(CartanType("B", 2))
    elements = list(enumerate_group(sysm))
    for w in elements:
        assert sysm.multiply(w, sysm.inverse(w)) == sysm.identity
    a, b, c = elements[1], elements[3], elements[5]
    assert sysm.product(a, b, c) == sysm.multiply(sysm.multiply(a, b), c)


@pytest.mark.parametrize("family,rank", [("A", 2), ("B", 2), ("B", 3), ("D", 3)])
def test_longest_element(family, rank):
    sysm = make_system(CartanType(family, rank))
    w0 = sysm.longest_element()
    top = max(bfs_lengths(sysm).values())
    assert sysm.length(w0) == top
    assert sysm.multiply(w0, w0) == sysm.identity
    # longest element of a parabolic lives in the parabolic
    wJ = sysm.longest_element({1})
    assert wJ == sysm.simple[1]


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("D", 3)])
def test_min_coset_reps(family, rank):
    sysm = make_system(CartanType(family, rank))
    I = frozenset(sysm.simple)
    for size in range(len(I) + 1):
        for J in map(frozenset, itertools.combinations(sorted(I), size)):
            reps = sysm.min_coset_reps(J)
            assert len(reps) == ORDERS[(family, rank)] // sysm.parabolic_order(J)
            for w in reps:
                assert not any(sysm.is_left_descent(j, w) for j in J)
            lengths = [sysm.length(w) for w in reps]
            assert lengths == sorted(lengths)


def test_min_double_reps_counts():
    sysm = make_system(CartanType("B", 3))
    group = enumerate_group(sysm)
    for J in [frozenset(), frozenset({1}), frozenset({2, 3}), frozenset({1, 2, 3})]:
        for K in [frozenset({1, 2}), frozenset({3})]:
            reps = set(sysm.min_double_reps(J, K))
            projected = {sysm.project_double(w, J, K) for w in group}
            assert reps == projected


def test_project_double_idempotent():
    sysm = make_system(CartanType("D", 3))
    J, K = frozenset({1}), frozenset({2, 3})
    for w in enumerate_group(sysm):
        p = sysm.project_double(w, J, K)
        assert sysm.project_double(p, J, K) == p


def test_kilmoyer_requires_minimal_rep():
    sysm = make_system(CartanType("B", 2))
    with pytest.raises(DomainError):
        sysm.kilmoyer_intersection(sysm.simple[1], {1}, {2})


def test_kilmoyer_matches_intersection():
    """W_J ∩ w W_K w⁻¹ is the standard parabolic on J_w conjugated — here
    checked as an equality of subgroup orders."""
    sysm = make_system(CartanType("B", 3))
    J, K = frozenset({1, 2}), frozenset({2, 3})
    WJ = set(sysm.parabolic_elements(J))
    WK = set(sysm.parabolic_elements(K))
    for w in sysm.min_double_reps(J, K):
        Jw = sysm.kilmoyer_intersection(w, J, K)
        winv = sysm.inverse(w)
        conj = {sysm.product(w, x, winv) for x in WK}
        assert len(WJ & conj) == sysm.parabolic_order(Jw)


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("D", 4), ("B", 4)])
def test_parabolic_order_closed_form(family, rank):
    sysm = make_system(CartanType(family, rank))
    I = sorted(sysm.simple)
    for size in range(len(I) + 1):
        for J in map(frozenset, itertools.combinations(I, size)):
            assert sysm.parabolic_order(J) == len(sysm.parabolic_elements(J))


def test_parabolic_elements_cap():
    sysm = make_system(CartanType("B", 4))
    with pytest.raises(DomainError):
        sysm.parabolic_elements({1, 2, 3, 4}, cap=10)


def test_bruhat_leq_basics():
    sysm = make_system(CartanType("B", 2))
    e = sysm.identity
    w0 = sysm.longest_element()
    for w in enumerate_group(sysm):
        assert sysm.bruhat_leq(e, w)
        assert sysm.bruhat_leq(w, w0)
    s1, s2 = sysm.simple[1], sysm.simple[2]
    assert not sysm.bruhat_leq(s1, s2)
    assert not sysm.bruhat_leq(s2, s1)
