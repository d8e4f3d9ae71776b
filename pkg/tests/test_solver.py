from math import comb

import pytest
from hypothesis import given, settings

from conftest import brute_max_intersecting, fam, families, uniform_families
from ekr.family import SetFamily, downward_closure, full_layer, head, is_intersecting
from ekr.solver import (
    BudgetExceeded,
    CapExceeded,
    enumerate_maximum_intersecting,
    has_nonstar_maximum,
    intersecting_number,
    max_intersecting,
)


def test_empty_family():
    res = max_intersecting(SetFamily(3))
    assert res.size == 0 and not res.witness.members and res.optimality_proved
    assert list(enumerate_maximum_intersecting(SetFamily(3))) == [SetFamily(3)]
    assert has_nonstar_maximum(SetFamily(3)) == (False, None)


def test_two_disjoint_pairs():
    H = fam(4, [1, 2], [3, 4])
    maxima = list(enumerate_maximum_intersecting(H))
    assert [F.labels() for F in maxima] == [[[1, 2]], [[3, 4]]]


def test_triangle_closure_maxima():
    H = downward_closure(fam(3, [1, 2], [1, 3], [2, 3]))
    i, brute = brute_max_intersecting(H)
    got = list(enumerate_maximum_intersecting(H))
    assert i == 3
    assert sorted(F.members for F in got) == sorted(brute)
    # the triangle plus the three stars {x},{x,y},{x,z}
    assert len(got) == 4
    assert fam(3, [1, 2], [1, 3], [2, 3]) in got


def test_eight_choose_three():
    res = max_intersecting(full_layer(8, 3))
    assert res.size == comb(7, 2) == 21
    assert head(res.witness) != 0


def test_witness_is_lexicographically_smallest():
    H = downward_closure(fam(4, [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]))
    res = max_intersecting(H)
    first = next(enumerate_maximum_intersecting(H))
    assert res.witness == first
    _, brute = brute_max_intersecting(H)
    assert res.witness.members == min(brute)


def test_nonstar_witness_case1():
    H = downward_closure(fam(4, [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]))
    ok, W = has_nonstar_maximum(H)
    assert ok
    assert W.labels() == [[1, 2], [1, 3], [2, 3], [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]
    assert len(W) == 7 and head(W) == 0 and is_intersecting(W)


def test_budget_exceeded_carries_partial_star():
    H = full_layer(9, 3)
    with pytest.raises(BudgetExceeded) as info:
        max_intersecting(H, budget=5)
    partial = info.value.result
    assert not partial.optimality_proved
    assert partial.size == len(partial.witness) == comb(8, 2)


def test_cap_exceeded():
    H = full_layer(6, 2)  # five maximum stars of size 5, plus triangles of size 3
    with pytest.raises(CapExceeded):
        list(enumerate_maximum_intersecting(H, cap=2))


@given(families(max_n=8, max_members=14))
@settings(max_examples=200, deadline=None)
def test_matches_brute_force(H):
    i, brute = brute_max_intersecting(H)
    res = max_intersecting(H)
    assert res.size == i == intersecting_number(H)
    assert res.witness.members in brute
    assert res.witness.members == min(brute)


@given(uniform_families(r=3, max_n=8, max_members=14))
@settings(max_examples=100, deadline=None)
def test_enumeration_and_nonstar_match_brute_force(H):
    i, brute = brute_max_intersecting(H)
    got = [F.members for F in enumerate_maximum_intersecting(H)]
    assert got == sorted(brute)
    nonstar = [m for m in brute if m and head(m) == 0]
    ok, W = has_nonstar_maximum(H, i)
    assert ok == bool(nonstar)
    if ok:
        assert W.members == min(nonstar)
