import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cramanujan import (
    InvalidArgumentError,
    OutOfRangeError,
    RationalC,
    ResourceLimitError,
    build_table,
    floor_mul,
    integer_in_step,
)
from cramanujan.primes import parse_size, resolve_mem_cap

from oracles import plain_sieve, trial_division

rationals = st.builds(
    lambda d, n: RationalC(n % (d - 1) + 1, d), st.integers(2, 10**6), st.integers(0, 10**9)
)


class TestRationalC:
    def test_reduces(self):
        c = RationalC(10, 20)
        assert (c.numerator, c.denominator) == (1, 2)

    @pytest.mark.parametrize("bad", [(0, 1), (1, 1), (3, 2), (-1, 2), (1, 0)])
    def test_rejects_outside_unit_interval(self, bad):
        with pytest.raises(InvalidArgumentError):
            RationalC(*bad)

    @pytest.mark.parametrize(
        "text, frac", [("1/4", (1, 4)), ("0.25", (1, 4)), ("0.45", (9, 20)), (" 2/6 ", (1, 3))]
    )
    def test_parse(self, text, frac):
        c = RationalC.parse(text)
        assert (c.numerator, c.denominator) == frac

    @pytest.mark.parametrize("text", ["0", "1", "abc", "1/0", "-0.5"])
    def test_parse_rejects(self, text):
        with pytest.raises(InvalidArgumentError):
            RationalC.parse(text)

    def test_order_and_labels(self):
        assert RationalC(1, 4) < RationalC(1, 3)
        assert RationalC(1, 2).decimal_label() == "0.50"
        assert RationalC(1, 8).decimal_label() == "0.125"
        assert RationalC(1, 3).decimal_label() == "1/3"


class TestFloorMul:
    @pytest.mark.parametrize("c, k, want", [((1, 3), 10, 3), ((2, 3), 7, 4), ((1, 2), 11, 5)])
    def test_examples(self, c, k, want):
        assert floor_mul(RationalC(*c), k) == want

    def test_no_overflow(self):
        c = RationalC(2**70 - 1, 2**70)
        assert floor_mul(c, 10**30) == (10**30 * (2**70 - 1)) // 2**70

    @given(rationals, st.integers(1, 10**12))
    def test_step_property(self, c, k):
        d = floor_mul(c, k) - floor_mul(c, k - 1)
        assert d in (0, 1)
        m = integer_in_step(c, k)
        if d == 1:
            assert m == floor_mul(c, k)
            assert Fraction(c.numerator, c.denominator) * (k - 1) < m <= Fraction(c.numerator, c.denominator) * k
        else:
            assert m is None

    @pytest.mark.parametrize("c, k, want", [((1, 2), 4, 2), ((1, 3), 4, None), ((1, 3), 3, 1)])
    def test_integer_in_step(self, c, k, want):
        assert integer_in_step(RationalC(*c), k) == want


class TestPrimeTable:
    def test_tiny(self):
        t = build_table(10)
        assert t.pi(10) == 4
        assert list(t.primes) == [2, 3, 5, 7]
        t2 = build_table(2)
        assert t2.pi(2) == 1 and t2.nth_prime(1) == 2

    def test_limit_below_two(self):
        with pytest.raises(InvalidArgumentError):
            build_table(1)

    def test_counts(self, small_table, table):
        assert small_table.pi(1) == 0
        assert small_table.pi(13) == 6
        assert small_table.pi(10**5) == 9592
        assert table.pi(10**6) == 78498

    def test_matches_plain_sieve(self, table):
        flags = plain_sieve(10**6)
        assert np.array_equal(table.primes_between(0, 10**6), np.flatnonzero(flags))

    def test_nth_prime(self, small_table):
        assert small_table.nth_prime(1) == 2
        assert small_table.nth_prime(7.5) == 17
        assert small_table.nth_prime(Fraction(15, 2)) == 17
        assert small_table.nth_prime(300) == 1987
        with pytest.raises(OutOfRangeError):
            small_table.nth_prime(9593)
        with pytest.raises(InvalidArgumentError):
            small_table.nth_prime(0.5)

    def test_out_of_range(self, small_table):
        with pytest.raises(OutOfRangeError):
            small_table.pi(10**5 + 1)
        with pytest.raises(OutOfRangeError):
            small_table.is_prime(10**5 + 1)

    def test_pi_steps(self, small_table):
        ks = np.arange(0, 10**5 + 1)
        pi = small_table.pi_many(ks)
        steps = np.diff(pi)
        assert set(np.unique(steps)) <= {0, 1}
        flags = plain_sieve(10**5)
        assert np.array_equal(steps == 1, flags[1:])
        for k in range(2, 2000):
            assert small_table.nth_prime(small_table.pi(k)) <= k

    def test_trial_division_sample(self, table):
        rng = random.Random(12345)
        for k in (rng.randint(0, table.limit) for _ in range(10**4)):
            assert table.is_prime(k) == trial_division(k), k

    @pytest.mark.parametrize("seg", [1, 7, 64, 1000, 1 << 20])
    def test_segment_size_independent(self, seg):
        ref = build_table(30011)
        assert np.array_equal(build_table(30011, segment_size=seg).primes, ref.primes)

    def test_immutable(self, small_table):
        with pytest.raises(ValueError):
            small_table.primes[0] = 4

    def test_mem_cap(self, monkeypatch):
        with pytest.raises(ResourceLimitError, match="1000 bytes"):
            build_table(10**6, mem_cap=1000)
        monkeypatch.setenv("CRAMANUJAN_MEM_CAP", "2K")
        assert resolve_mem_cap() == 2048
        assert resolve_mem_cap(5) == 5
        with pytest.raises(ResourceLimitError):
            build_table(10**5)

    def test_parse_size(self):
        assert parse_size("512M") == 512 << 20
        assert parse_size("2GiB") == 2 << 30
        assert parse_size("123") == 123
        with pytest.raises(InvalidArgumentError):
            parse_size("lots")
