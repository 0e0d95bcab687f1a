"""The finite-field oracle, checked against independent brute enumeration."""

import itertools
import random

import numpy as np
import pytest

from bruhatzip.coxeter import CartanType, DomainError, make_system
from bruhatzip.fzip_oracle import (
    arithmetic_orbits,
    bruhat_double_cosets,
    crosscheck,
    fzip_from_element,
    gl_order,
    intersection_table,
    orbit_partition,
    parabolics_from_cochar,
    perm_matrix,
    rank_mod,
    zip_generator_pairs,
    zip_group_elements,
    zip_stratum_invariant,
)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3)])
def test_gl_order_matches_enumeration(n, q):
    count = sum(
        1
        for entries in itertools.product(range(q), repeat=n * n)
        if rank_mod(np.array(entries).reshape(n, n), q) == n
    )
    assert gl_order(n, q) == count


def test_parabolic_block_data():
    data = parabolics_from_cochar((1, 0), 2)
    assert data.J == frozenset()
    assert data.levi_order == 1 and data.unipotent_order == 2
    data = parabolics_from_cochar((1, 0, 0), 2)
    assert data.J == frozenset({2})
    assert data.levi_order == 6 and data.unipotent_order == 4
    data = parabolics_from_cochar((0, 0, 0), 2)
    assert data.blocks == ((0, 1, 2),)
    assert data.unipotent_order == 1


def test_cochar_must_be_weakly_decreasing():
    with pytest.raises(DomainError):
        parabolics_from_cochar((3, 7), 2)


def test_oracle_bounds():
    with pytest.raises(DomainError):
        parabolics_from_cochar((1, 0, 0, 0, 0), 2)
    with pytest.raises(DomainError):
        parabolics_from_cochar((1, 0), 4)


@pytest.mark.parametrize("r,q,count", [((1, 0), 2, 4), ((1, 0, 0), 2, 96)])
def test_zip_group_size(r, q, count):
    pairs = zip_group_elements(r, q)
    assert len(pairs) == count
    data = parabolics_from_cochar(r, q)
    for plus, minus in pairs:
        assert data.in_p_plus(plus) and data.in_p_minus(minus)


def test_arithmetic_orbits_generator_invariance():
    base = arithmetic_orbits(2, 2, (1, 0))
    assert sum(base.sizes) == gl_order(2, 2)
    gens = zip_generator_pairs(parabolics_from_cochar((1, 0), 2))
    random.Random(7).shuffle(gens)
    again = arithmetic_orbits(2, 2, (1, 0), gen_pairs=gens)
    assert np.array_equal(base.orbit_of, again.orbit_of)


def test_arithmetic_orbits_match_full_action():
    """BFS under generators agrees with the orbit of the literal full action."""
    part = arithmetic_orbits(2, 2, (1, 0))
    pairs = zip_group_elements((1, 0), 2)
    g = np.array([[1, 1], [0, 1]])
    orbit = {
        tuple(((p @ g @ np.rint(np.linalg.inv(m)).astype(int)) % 2).ravel())
        for p, m in pairs
    }
    members = {tuple(h.ravel()) for h in part.members(part.orbit_of_matrix(g))}
    assert orbit == members


@pytest.mark.parametrize("n,q,r,count", [
    (2, 2, (1, 0), 2),
    (2, 2, (0, 0), 1),
    (3, 2, (1, 0, 0), 3),
])
def test_orbit_partition_counts(n, q, r, count):
    part = orbit_partition(n, q, r)
    assert part.count == count
    assert sum(part.sizes) == gl_order(n, q)
    assert part.suborbit_of is not None
    # strata coarsen the rational orbits
    assert int(part.suborbit_of.max()) + 1 >= count


@pytest.mark.parametrize("n,q,r", [(2, 2, (1, 0)), (3, 2, (1, 0, 0))])
def test_invariant_constant_on_strata(n, q, r):
    part = orbit_partition(n, q, r)
    values = {}
    for orbit in range(part.count):
        for g in part.members(orbit):
            inv = zip_stratum_invariant(g, r, q)
            values.setdefault(orbit, inv)
            assert inv == values[orbit]
    assert len(set(values.values())) == part.count


def test_invariant_rejects_three_weights():
    with pytest.raises(DomainError):
        zip_stratum_invariant(np.eye(3, dtype=np.int64), (2, 1, 0), 2)


def test_bruhat_double_cosets():
    full = bruhat_double_cosets(3, 2, {1, 2}, {1, 2})
    assert len(full.reps) == 1  # P_I = GL_n
    dc = bruhat_double_cosets(3, 2, {2}, {1})
    assert len(dc.reps) == 2
    assert sum(dc.partition.sizes) == gl_order(3, 2)
    borel = bruhat_double_cosets(2, 3, (), ())
    assert len(borel.reps) == 2  # Bruhat decomposition of GL_2
    sysm = make_system(CartanType("A", 1))
    for w in borel.reps:
        assert borel.class_of(perm_matrix(w)) == borel.reps.index(w)
        sysm.check_element(w)


def test_fzip_from_identity():
    fz = fzip_from_element(np.eye(3, dtype=np.int64), (1, 0, 0), 3)
    assert [fz.C[i].shape[1] for i in sorted(fz.C)] == [3, 1, 0]
    assert [fz.D[i].shape[1] for i in sorted(fz.D)] == [0, 2, 3]
    assert all(rank_mod(phi, 3) == phi.shape[0] for phi in fz.phi.values())


def test_intersection_table_constant_on_arithmetic_orbits():
    part = arithmetic_orbits(3, 2, (1, 0, 0))
    for orbit in range(part.count):
        members = part.members(orbit)
        tables = {
            intersection_table(fzip_from_element(g, (1, 0, 0), 2))
            for g in members[:: max(1, len(members) // 8)]
        }
        assert len(tables) == 1


def test_crosscheck_small():
    report = crosscheck(2, 2, (1, 0))
    assert report["pass"] is True
    assert report["orbit_count"] == 2
    assert report["double_coset_count"] == 2
    assert all(report["checks"].values())
    assert report["mismatches"] == []
