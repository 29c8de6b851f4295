import math
from collections import defaultdict
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depthdist.errors import CeilingError, VerificationError
from depthdist.motzkin import MotzkinPath, area, enumerate_paths, parse_path, weight
from depthdist.permutation import Permutation, depth, enumerate_sn, parse_permutation
from depthdist.phi_map import (
    ArrowDiagram,
    choice_ranges,
    depth_via_path,
    diagram,
    diagram_from_choices,
    enumerate_preimage,
    phi,
    preimage_count,
)

from oracles import s4_fibers


def classify(image):
    """Three-way rule evaluated straight from w and a searched inverse."""
    n = len(image)
    word = []
    for i in range(1, n + 1):
        out = image[i - 1]
        into = image.index(i) + 1
        word.append("U" if into > i < out else "D" if into < i > out else "H")
    return "".join(word)


class TestPhi:
    @pytest.mark.parametrize(
        "perm, path",
        [("3715246", "UUDUDHD"), ("3542176", "UUHDDUD"), ("12345", "HHHHH"), ("2143", "UDUD")],
    )
    def test_examples(self, perm, path):
        assert str(phi(parse_permutation(perm))) == path

    @pytest.mark.parametrize("n", range(0, 8))
    def test_matches_direct_rule_and_is_valid(self, n):
        for image in permutations(range(1, n + 1)):
            p = phi(Permutation(image))
            assert str(p) == classify(image)
            MotzkinPath(p.steps)  # revalidates balance

    def test_s4_catalog(self):
        fibers = defaultdict(set)
        for w in enumerate_sn(4):
            fibers[str(phi(w))].add(str(w))
        assert dict(fibers) == {path: members for path, _, members in s4_fibers()}


class TestDiagram:
    def test_worked_example(self):
        d = diagram(parse_permutation("3542176"))
        assert set(d.above) == {(1, 3, 4), (2, 5), (6, 7)}
        assert set(d.below) == {(4, 2), (5, 1), (7, 6)}
        assert d.fixed_points == frozenset()

    def test_identity(self):
        d = diagram(Permutation.identity(3))
        assert d.above == d.below == ()
        assert d.fixed_points == {1, 2, 3}

    def test_first_example(self):
        # arrows of 3715246: 1->3, 2->7, 4->5 above; 3->1, 5->2, 7->6->4 below
        d = diagram(parse_permutation("3715246"))
        assert set(d.above) == {(1, 3), (2, 7), (4, 5)}
        assert set(d.below) == {(3, 1), (5, 2), (7, 6, 4)}

    @pytest.mark.parametrize("n", range(0, 7))
    def test_diagram_round_trip(self, n):
        for w in enumerate_sn(n):
            d = diagram(w)
            assert d.to_permutation() == w
            ups = str(phi(w)).count("U")
            assert len(d.above) == len(d.below) == ups

    def test_assembly_rejects_clashes(self):
        with pytest.raises(VerificationError):
            ArrowDiagram(3, ((1, 3),), ((3, 1),), frozenset({1})).to_permutation()
        with pytest.raises(VerificationError):
            ArrowDiagram(3, ((1, 2),), (), frozenset({3})).to_permutation()
        with pytest.raises(VerificationError):
            ArrowDiagram(2, ((2, 1),), ((1, 2),), frozenset()).to_permutation()


class TestDepthViaPath:
    @pytest.mark.parametrize("perm, expected", [("3542176", 7), ("3715246", 8), ("1234", 0)])
    def test_examples(self, perm, expected):
        assert depth_via_path(parse_permutation(perm)) == expected

    @pytest.mark.parametrize("n", range(0, 9))
    def test_exhaustive(self, n):
        for w in enumerate_sn(n):
            assert depth_via_path(w) == depth(w)

    @given(st.integers(9, 12).flatmap(lambda n: st.permutations(range(1, n + 1))))
    def test_random_large(self, image):
        w = Permutation(tuple(image))
        assert depth_via_path(w) == depth(w)


class TestPreimage:
    @pytest.mark.parametrize("path, expected", [("UUHDDUD", 20), ("UHHD", 9), ("HHHHHH", 1)])
    def test_count(self, path, expected):
        assert preimage_count(parse_path(path)) == expected

    def test_worked_example(self):
        p = parse_path("UUHDDUD")
        fiber = list(enumerate_preimage(p))
        assert len(fiber) == len(set(fiber)) == 20
        assert all(phi(w) == p and depth(w) == 7 for w in fiber)

    def test_s4_row(self):
        fiber = {str(w) for w in enumerate_preimage(parse_path("UHHD"))}
        assert fiber == {"2341", "2413", "2431", "3142", "3241", "4123", "4132", "4213", "4231"}

    def test_single_peak(self):
        assert [str(w) for w in enumerate_preimage(parse_path("UD"))] == ["21"]

    def test_choice_ranges_multiply_to_weight(self):
        p = parse_path("UHDHUUUDHUDDHD")
        assert math.prod(choice_ranges(p)) == weight(p) == 14580

    def test_canonical_order_is_deterministic(self):
        p = parse_path("UUHDDUD")
        assert list(enumerate_preimage(p)) == list(enumerate_preimage(p))
        first = diagram_from_choices(p, (0,) * len(choice_ranges(p))).to_permutation()
        assert next(enumerate_preimage(p)) == first

    def test_bad_choice_vector(self):
        with pytest.raises(ValueError):
            diagram_from_choices(parse_path("UD"), (1, 0))

    @pytest.mark.parametrize("n", range(0, 8))
    def test_fibers_partition_sn(self, n):
        seen = set()
        for p in enumerate_paths(n):
            fiber = list(enumerate_preimage(p))
            assert len(fiber) == len(set(fiber)) == weight(p)
            for w in fiber:
                assert phi(w) == p
                assert depth(w) == area(p)
            seen.update(fiber)
        assert seen == set(enumerate_sn(n))

    def test_ceiling(self):
        p = MotzkinPath.peak(20)
        with pytest.raises(CeilingError):
            next(enumerate_preimage(p))
        w = next(enumerate_preimage(p, force=True))
        assert phi(w) == p
