import math

import pytest

from depthdist import distribution as dist
from depthdist.errors import CeilingError, VerificationError
from depthdist.motzkin import MotzkinPath, area, enumerate_paths, parse_path, weight
from depthdist.series import TruncatedSeries, monomial

from oracles import (
    binomial_eval,
    depth_histogram,
    forward_differences,
    max_depth_count_direct,
    paper_table,
    walsh_table,
)


def plain_jfrac(N):
    """J-fraction in one fixed box with the tail F_(L+1) = 1, L = N // 2."""
    box = (N, N * N // 4)
    one = TruncatedSeries.one(*box)
    F = one
    for m in range(N // 2, -1, -1):
        b = monomial(2 * m + 1, m, 1, *box)
        q = monomial((m + 1) ** 2, 2 * m + 1, 2, *box)
        F = (one - b - q * F).reciprocal()
    return F


def plain_sfrac(N):
    box = (N, N * N // 4)
    one = TruncatedSeries.one(*box)
    G = one
    for j in range(N, -1, -1):
        k = j // 2
        c = monomial(k + 1, k + (j % 2), 1, *box)
        G = (one - c * G).reciprocal()
    return G


class TestBruteAndMotzkin:
    def test_brute_matches_oracle(self):
        table = dist.table_brute(8)
        for n in range(9):
            assert list(table[n]) == depth_histogram(n)

    def test_brute_examples(self):
        table = dist.table_brute(4)
        assert table[4] == (1, 3, 7, 9, 4)
        assert table[1] == (1,)
        assert table[0] == (1,)

    def test_motzkin_examples(self):
        table = dist.table_motzkin(5)
        assert table[5] == (1, 4, 12, 24, 35, 24, 20)
        assert table[2] == (1, 1)
        contributions = [(str(p), weight(p)) for p in enumerate_paths(4) if area(p) == 3]
        assert contributions == [("UHHD", 9)]
        assert table[4][3] == 9

    def test_motzkin_matches_python_enumeration(self):
        table = dist.table_motzkin(10)
        for n in range(11):
            row = [0] * (n * n // 4 + 1)
            for p in enumerate_paths(n):
                row[area(p)] += weight(p)
            assert list(table[n]) == row

    @pytest.mark.parametrize("method", ["brute", "motzkin"])
    def test_jobs_do_not_change_output(self, method):
        assert dist.table(8, method, jobs=3) == dist.table(8, method, jobs=1)

    def test_numpy_backend_tables(self, kernel_backend):
        assert dist.table_brute(7).rows == dist.table_jfrac(7).rows
        assert dist.table_motzkin(9).rows == dist.table_jfrac(9).rows

    def test_ceilings(self):
        with pytest.raises(CeilingError):
            dist.table_brute(dist.BRUTE_CEILING + 1)
        with pytest.raises(CeilingError):
            dist.table_motzkin(dist.MOTZKIN_CEILING + 1)
        with pytest.raises(CeilingError):
            dist.table_motzkin(21, force=True)

    def test_brute_past_ceiling_with_force(self):
        table = dist.table_brute(10, force=True)
        assert table.rows == dist.table_jfrac(10).rows


class TestFractions:
    def test_jfrac_reproduces_published_table(self):
        table = dist.table_jfrac(8)
        for n, row in paper_table().items():
            assert list(table[n]) == row
        assert table[8][-3:] == (2844, 1764, 576)

    def test_euler_specialisation(self):
        series = dist.jfrac_series(20)
        assert series.at_t_one() == tuple(math.factorial(n) for n in range(21))

    def test_trivial_sizes(self):
        assert dist.jfrac_series(0) == TruncatedSeries.one(0)
        assert dist.table_sfrac(1).rows == ((1,), (1,))
        assert dist.table_jfrac(0).rows == ((1,),)

    def test_sfrac_row7(self):
        assert dist.table_sfrac(7)[7] == (1, 6, 25, 76, 187, 366, 591, 744, 884, 832, 716, 360, 252)

    @pytest.mark.parametrize("N", [1, 2, 5, 10, 25])
    def test_sfrac_equals_jfrac(self, N):
        assert dist.sfrac_series(N) == dist.jfrac_series(N)

    @pytest.mark.parametrize("N", range(0, 15))
    def test_shrinking_boxes_match_plain_evaluation(self, N):
        assert dist.jfrac_series(N) == plain_jfrac(N)
        assert dist.sfrac_series(N) == plain_sfrac(N)

    @pytest.mark.parametrize("t_cap", [0, 3, 10, 30])
    def test_smaller_t_cap_is_a_truncation(self, t_cap):
        full = dist.jfrac_series(16)
        assert dist.jfrac_series(16, t_cap) == full.truncate(16, t_cap)
        assert dist.sfrac_series(16, t_cap) == full.truncate(16, t_cap)

    def test_invariants_up_to_40(self):
        table = dist.table_jfrac(40)
        assert table.problems() == []
        assert table.interior_zeros() == []


class TestMaxDepth:
    @pytest.mark.parametrize("n, expected", [(7, 12), (0, 0), (8, 16)])
    def test_max_depth(self, n, expected):
        assert dist.max_depth(n) == expected

    @pytest.mark.parametrize("n, expected", [(5, 20), (8, 576), (2, 1)])
    def test_max_depth_count(self, n, expected):
        assert dist.max_depth_count(n) == expected

    def test_max_depth_count_rejects_zero(self):
        with pytest.raises(ValueError):
            dist.max_depth_count(0)

    @pytest.mark.parametrize("n", range(1, 25))
    def test_count_is_peak_weight(self, n):
        assert dist.max_depth_count(n) == weight(MotzkinPath.peak(n)) == max_depth_count_direct(n)


class TestFixedDepth:
    @pytest.mark.parametrize("k", range(0, 8))
    def test_published_coefficients(self, k):
        poly = dist.fixed_depth_polynomial(k, 40)
        assert list(poly.coefficients) == walsh_table()[k]

    def test_examples(self):
        assert dist.fixed_depth_polynomial(4).coefficients == (4, 31, 27, 9, 1)
        assert dist.fixed_depth_polynomial(0).coefficients == (1,)
        assert str(dist.fixed_depth_polynomial(5)) == "24 113 116 54 12 1"

    @pytest.mark.parametrize("k", [8, 9, 10])
    def test_self_consistent_beyond_table(self, k):
        poly = dist.fixed_depth_polynomial(k, 40)
        table = dist.table_jfrac(30)
        for n in range(k, 31):
            assert poly(n) == table.entry(n, k) == binomial_eval(poly.coefficients, k, n)

    def test_n_max_too_small(self):
        with pytest.raises(ValueError, match="too small"):
            dist.fixed_depth_polynomial(5, 12)

    @pytest.mark.parametrize("k", range(0, 11))
    def test_differences_of_order_k_plus_1_vanish(self, k):
        series = dist.jfrac_series(40, t_cap=k)
        values = [series.coeff(n, k) for n in range(k, 41)]
        assert set(forward_differences(values, k + 1)) == {0}
        assert forward_differences(values, k) == [1] * (41 - 2 * k)

    def test_polynomial_rejects_small_n(self):
        with pytest.raises(ValueError):
            dist.fixed_depth_polynomial(3)(2)

    def test_non_monic_rejected(self):
        with pytest.raises(VerificationError):
            dist.BinomialPolynomial(1, (0, 2), 10)


class TestTableType:
    def test_row_length_enforced(self):
        with pytest.raises(VerificationError):
            dist.DepthTable(((1,), (1,), (1, 1, 0)), "test")

    def test_entry_outside_triangle(self):
        table = dist.table_jfrac(4)
        assert table.entry(4, 5) == 0 and table.entry(9, 0) == 0 and table.entry(4, 4) == 4

    def test_first_divergence(self):
        good = dist.table_jfrac(5)
        rows = [list(r) for r in good.rows]
        rows[4][2] += 1
        bad = dist.DepthTable(tuple(map(tuple, rows)), "planted")
        assert dist.first_divergence([good, dist.table_sfrac(6)]) is None
        assert dist.first_divergence([good, bad]) == (4, 2, {"jfrac": 7, "planted": 8})
        assert "n=4" in bad.problems()[0]

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            dist.table(3, "magic")
