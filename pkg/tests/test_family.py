from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import brute_closure, brute_covering_number, fam, families
from ekr.family import (
    UNBOUNDED,
    EmptyFamily,
    MalformedFamily,
    SetFamily,
    covering_number,
    cross_intersecting,
    downward_closure,
    format_fam,
    full_layer,
    head,
    is_covering_set,
    is_downset,
    is_intersecting,
    is_star,
    link,
    make_set,
    parse_fam,
    parse_fam_stream,
    star,
    star_size_max,
    star_sizes,
)


def S(*labels):
    return make_set(labels)


class TestSetFamily:
    def test_members_sorted_and_deduplicated(self):
        F = SetFamily(3, (S(2, 3), S(1), S(2, 3)))
        assert F.members == (S(1), S(2, 3))

    def test_rejects_empty_member(self):
        with pytest.raises(MalformedFamily):
            SetFamily(3, (0,))

    def test_rejects_out_of_ground(self):
        with pytest.raises(MalformedFamily):
            SetFamily(2, (S(3),))

    def test_labels_roundtrip(self):
        F = fam(4, [1, 2], [3])
        assert F.labels() == [[1, 2], [3]]
        assert S(3) in F and S(4) not in F


class TestClosure:
    def test_single_triple(self):
        got = downward_closure(fam(3, [1, 2, 3]))
        want = fam(3, [1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3])
        assert got == want

    def test_idempotent(self):
        H = downward_closure(fam(5, [1, 2, 3], [3, 4]))
        assert downward_closure(H) == H

    def test_closure_of_z(self):
        Z = fam(4, [1, 2], [1, 3], [2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4])
        H = downward_closure(Z)
        assert S(4) in H
        assert all(S(i, 4) in H for i in (1, 2, 3))
        assert S(1, 2, 3) not in H
        assert len(H) == len(brute_closure(Z)) == 13

    @given(families(max_n=7, max_members=8))
    @settings(max_examples=150, deadline=None)
    def test_matches_brute_force(self, F):
        H = downward_closure(F)
        assert set(H.members) == brute_closure(F)
        assert is_downset(H)

    def test_is_downset_detects_gap(self):
        assert not is_downset(fam(3, [1, 2]))
        assert is_downset(SetFamily(3))


class TestIntersectingAndHead:
    def test_triangle(self):
        T = fam(3, [1, 2], [1, 3], [2, 3])
        assert is_intersecting(T)
        assert head(T) == 0
        assert not is_star(T)

    def test_disjoint_pair(self):
        assert not is_intersecting(fam(4, [1, 2], [3, 4]))

    def test_head_values(self):
        assert head(fam(3, [1, 2], [1, 3])) == S(1)
        assert head(fam(3, [1, 2, 3])) == S(1, 2, 3)

    def test_head_of_empty_family(self):
        with pytest.raises(EmptyFamily):
            head(SetFamily(3))

    @given(families(max_n=6, max_members=8))
    @settings(max_examples=100, deadline=None)
    def test_stars_are_intersecting(self, F):
        for x in range(F.n):
            Fx = star(F, x)
            assert is_intersecting(Fx)
            assert len(Fx) == star_sizes(F)[x]
        if F.members:
            s, c = star_size_max(F)
            assert s == max(star_sizes(F))
            assert star_sizes(F).index(s) == c


class TestLink:
    def test_basic(self):
        L = link(fam(5, [1, 2, 3], [1, 4, 5]), S(1))
        assert L.labels() == [[2, 3], [4, 5]] and not L.has_empty

    def test_member_equal_to_core(self):
        L = link(fam(3, [1, 2, 3]), S(1, 2, 3))
        assert L.has_empty and not L.members

    def test_core_not_contained(self):
        L = link(fam(4, [2, 3, 4]), S(1))
        assert not L.members and not L.has_empty


class TestCovering:
    def test_disjoint_pairs(self):
        assert covering_number(fam(6, [1, 2], [3, 4], [5, 6])).value == 3

    def test_common_element(self):
        res = covering_number(fam(7, [1, 2, 3], [1, 4, 5], [1, 6, 7]))
        assert res.value == 1 and res.witness == S(1)

    def test_unbounded_and_empty(self):
        assert covering_number(link(fam(3, [1, 2, 3]), S(1, 2, 3))).value == UNBOUNDED
        assert covering_number(SetFamily(4)).value == 0

    @given(families(max_n=7, max_members=9))
    @settings(max_examples=150, deadline=None)
    def test_matches_brute_force(self, F):
        res = covering_number(F)
        assert res.value == brute_covering_number(F)
        if F.members:
            assert is_covering_set(res.witness, F)

    def test_intersecting_triples_have_tau_at_most_3(self):
        # all intersecting families of 3-subsets of [6] built from small stars and triangles
        pool = list(full_layer(6, 3).members)
        for combo in combinations(pool, 4):
            F = SetFamily(6, combo)
            if is_intersecting(F):
                assert covering_number(F).value <= 3


class TestCrossIntersecting:
    def test_examples(self):
        A = fam(6, [3, 4], [5, 6])
        B = fam(6, [3, 5], [4, 6])
        assert cross_intersecting(A, B)
        assert not cross_intersecting(fam(2, [1]), fam(2, [2]))
        assert cross_intersecting(SetFamily(3), fam(3, [1]))


class TestFamFormat:
    def test_roundtrip_normalized(self):
        text = "n=4\n1\n1 2\n3 4\n"
        assert format_fam(parse_fam(text)) == text

    def test_comments_and_blank_lines(self):
        F = parse_fam("# hello\n\nn=3\n\n1 2\n# inner\n2 3\n")
        assert F == fam(3, [1, 2], [2, 3])

    def test_empty_family(self):
        assert parse_fam("n=5\n") == SetFamily(5)

    def test_stream(self):
        fams = list(parse_fam_stream("n=2\n1\n\nn=3\n\nn=1\n1\n"))
        assert [len(F) for F in fams] == [1, 0, 1]

    @pytest.mark.parametrize("text", [
        "1 2\n",
        "n=3\n1 4\n",
        "n=3\n1 x\n",
        "n=3\n1 2\n2 1\n",
        "n=abc\n",
        "n=0\n",
        "",
    ])
    def test_malformed(self, text):
        with pytest.raises(MalformedFamily):
            parse_fam(text)

    @given(families(max_n=9, max_members=10))
    @settings(max_examples=100, deadline=None)
    def test_roundtrip_property(self, F):
        text = format_fam(F)
        assert parse_fam(text) == F
        assert format_fam(parse_fam(text)) == text
