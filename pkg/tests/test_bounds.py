import math

import numpy as np
import pytest

from cramanujan import (
    InvalidArgumentError,
    RationalC,
    build_table,
    constant_A,
    cubic_u_c,
    f_lower,
    generate,
    interval_count,
    rosser_window,
    upper_bound,
    validity_threshold_M,
)
from cramanujan.bounds import ANALYTIC, P3N_FALLBACK, cubic_coefficients, real_cubic_roots

GRID = [RationalC(k, 20) for k in range(1, 20)]


def _cubic(c, u):
    A = constant_A(c)
    cf = float(c)
    return (u - 1) * (u - (A - 0.5)) ** 2 - cf * (u - (A + 0.5)) * u**2


class TestConstantA:
    def test_half(self):
        # 3/2 + ln 2 to 30 digits from mpmath
        assert constant_A(RationalC(1, 2)) == pytest.approx(2.193147180559945309417, rel=1e-15)

    def test_exceeds_three_halves(self):
        assert all(constant_A(c) > 1.5 for c in GRID)

    def test_analytic_points(self):
        # c = 1/e and c = e^{-3/2} are irrational; check the formula on close rationals
        c = RationalC(367879441, 10**9)  # 1/e to 9 digits
        assert constant_A(c) == pytest.approx(2.5, abs=1e-8)
        c = RationalC(223130160, 10**9)  # e^{-3/2}
        assert constant_A(c) == pytest.approx(3.0, abs=1e-8)


class TestCubic:
    def test_expansion(self):
        for c in GRID:
            co = cubic_coefficients(c)
            for u in (-3.0, 0.0, 0.7, 2.5, 11.0):
                assert np.polyval(co, u) == pytest.approx(_cubic(c, u), rel=1e-12, abs=1e-9)

    @pytest.mark.parametrize("c", GRID)
    def test_greatest_root_against_numpy(self, c):
        u = cubic_u_c(c)
        roots = np.roots(cubic_coefficients(c))
        real = roots[np.abs(roots.imag) < 1e-9].real
        assert u == pytest.approx(real.max(), rel=1e-9)
        assert abs(_cubic(c, u)) <= 1e-9 * max(1.0, abs(u) ** 3)
        assert _cubic(c, u + 1.0) > 0

    def test_all_roots(self):
        # (u-1)(u-2)(u-3)
        assert real_cubic_roots((1.0, -6.0, 11.0, -6.0)) == pytest.approx([1, 2, 3], abs=1e-10)
        assert real_cubic_roots((2.0, 0.0, 0.0, -16.0)) == pytest.approx([2.0], abs=1e-10)
        with pytest.raises(InvalidArgumentError):
            real_cubic_roots((-1.0, 0.0, 0.0, 1.0))


class TestFLower:
    def test_half_at_100(self, small_table):
        c = RationalC(1, 2)
        assert interval_count(small_table, c, 100) == 10
        assert f_lower(c, 100) < 10

    def test_half_at_10k(self, small_table):
        c = RationalC(1, 2)
        assert f_lower(c, 10**4) < small_table.pi(10**4) - small_table.pi(5000)

    def test_threshold(self):
        with pytest.raises(InvalidArgumentError, match="67"):
            f_lower(RationalC(1, 2), 50)
        c = RationalC(1, 20)
        with pytest.raises(InvalidArgumentError):
            f_lower(c, math.exp(1.5) * 20 - 1)

    def test_is_lower_bound(self, table):
        rng = np.random.default_rng(7)
        for c in GRID[:-1]:
            M = validity_threshold_M(c)
            lo = math.ceil(M)
            for x in rng.integers(lo, min(20 * lo, table.limit), size=40):
                assert f_lower(c, int(x)) < interval_count(table, c, int(x))


class TestThresholdM:
    def test_at_least_67(self):
        assert all(validity_threshold_M(c) >= 67 for c in GRID)

    @pytest.mark.parametrize("c", GRID)
    def test_monotone_beyond(self, c):
        M = validity_threshold_M(c)
        xs = M + (10 * M / 1000) * np.arange(1001)
        xs[0] = math.nextafter(M, math.inf)
        vals = [f_lower(c, float(x)) for x in xs[1:]]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_small_c_branch(self):
        # below e^{3/2}/67 ~ 0.0669 the e^{3/2}/c term dominates
        assert math.exp(1.5) / 67 == pytest.approx(0.06689, abs=1e-5)
        c = RationalC(1, 20)
        assert validity_threshold_M(c) == pytest.approx(math.exp(1.5) * 20)
        assert math.exp(cubic_u_c(c) + 0.5) < math.exp(1.5) * 20
        assert validity_threshold_M(RationalC(7, 100)) == 67.0


class TestUpperBound:
    def test_half_fallback(self):
        cert = upper_bound(RationalC(1, 2), 100)
        assert cert.method == P3N_FALLBACK and cert.x0 == 1987
        assert generate(RationalC(1, 2), 100).R(100) <= 1987

    def test_three_quarter_first(self):
        cert = upper_bound(RationalC(3, 4), 1)
        assert cert.method == ANALYTIC
        assert cert.x0 >= cert.M_c and cert.x0 >= 11
        assert f_lower(RationalC(3, 4), cert.x0) >= 1

    def test_half_second(self):
        assert upper_bound(RationalC(1, 2), 2).x0 >= 11

    def test_certificate_invariants(self, small_table):
        for c in GRID:
            for n in (1, 2, 10, 57):
                cert = upper_bound(c, n, small_table)
                if cert.method == ANALYTIC:
                    assert cert.x0 >= cert.M_c
                    assert f_lower(c, cert.x0) >= n
                else:
                    assert c <= RationalC(1, 2) and n >= 2
                    assert cert.x0 == small_table.nth_prime(3 * n)
                    assert cert.x0 <= upper_bound(c, n, small_table).x0

    def test_rejects_zero(self):
        with pytest.raises(InvalidArgumentError):
            upper_bound(RationalC(1, 2), 0)


class TestRosser:
    def test_six(self):
        lo, hi = rosser_window(6)
        assert lo == pytest.approx(8.2497, abs=1e-3) and hi == pytest.approx(20.2497, abs=1e-3)
        assert lo <= 13 <= hi

    def test_small(self):
        with pytest.raises(InvalidArgumentError):
            rosser_window(5)

    def test_ten_thousand(self, table):
        assert table.nth_prime(10**4) == 104729
        lo, hi = rosser_window(10**4)
        assert lo <= 104729 <= hi
