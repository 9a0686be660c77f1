"""
Exact prime infrastructure.

A segmented, odd-only sieve of Eratosthenes builds an immutable
:class:`PrimeTable` holding the ordered list of primes up to a limit.
Prime counting and nth-prime queries are answered from that list by
binary search and direct indexing.  The parameter ``c`` is carried as an
exact reduced fraction (:class:`RationalC`) so every boundary decision
(``floor(c*k)``, "does ``(c(k-1), ck]`` contain an integer") is made in
integer arithmetic.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Optional, Union

import numpy as np

from .errors import InvalidArgumentError, OutOfRangeError, ResourceLimitError

#: Odd-number flags per sieve segment.  Performance knob only.
DEFAULT_SEGMENT_SIZE = 1 << 18

#: Memory cap for the prime list when neither an explicit cap nor the
#: environment variable is given.
DEFAULT_MEM_CAP = 2 << 30

MEM_CAP_ENV = "CRAMANUJAN_MEM_CAP"

_SIZE_RE = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*([kmgt]?)i?b?\s*$", re.IGNORECASE)
_SIZE_MULT = {"": 1, "k": 1 << 10, "m": 1 << 20, "g": 1 << 30, "t": 1 << 40}


def parse_size(text: str) -> int:
    """Parse a byte count such as ``"1500000"``, ``"512M"`` or ``"2GiB"``."""
    m = _SIZE_RE.match(str(text))
    if not m:
        raise InvalidArgumentError(f"cannot parse memory size {text!r}")
    return int(float(m.group(1)) * _SIZE_MULT[m.group(2).lower()])


def resolve_mem_cap(mem_cap: Optional[int] = None) -> int:
    """Explicit cap wins, then ``$CRAMANUJAN_MEM_CAP``, then the default."""
    if mem_cap is not None:
        return int(mem_cap)
    env = os.environ.get(MEM_CAP_ENV)
    if env:
        return parse_size(env)
    return DEFAULT_MEM_CAP


# ---------------------------------------------------------------------------
# Exact rational parameter
# ---------------------------------------------------------------------------

@total_ordering
@dataclass(frozen=True)
class RationalC:
    """The parameter ``c`` in ``(0, 1)`` as a reduced fraction."""

    numerator: int
    denominator: int

    def __post_init__(self):
        num, den = self.numerator, self.denominator
        if not isinstance(num, int) or not isinstance(den, int):
            raise InvalidArgumentError("numerator and denominator must be integers")
        if den <= 0 or num <= 0 or num >= den:
            raise InvalidArgumentError(f"c = {num}/{den} is not in (0, 1)")
        g = math.gcd(num, den)
        if g != 1:
            object.__setattr__(self, "numerator", num // g)
            object.__setattr__(self, "denominator", den // g)

    @classmethod
    def parse(cls, value: Union[str, Fraction, "RationalC", int, float]) -> "RationalC":
        """Build from ``"a/b"``, a decimal string like ``"0.45"``, or a Fraction.

        Decimal strings are read exactly: ``"0.45"`` becomes ``9/20``.
        Floats are accepted only through their shortest decimal repr.
        """
        if isinstance(value, RationalC):
            return value
        if isinstance(value, float):
            value = repr(value)
        try:
            frac = Fraction(value.strip() if isinstance(value, str) else value)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise InvalidArgumentError(f"cannot parse c from {value!r}") from exc
        return cls(frac.numerator, frac.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def __lt__(self, other: "RationalC") -> bool:
        if not isinstance(other, RationalC):
            return NotImplemented
        return self.numerator * other.denominator < other.numerator * self.denominator

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def decimal_label(self, min_places: int = 2) -> str:
        """``"0.50"`` style label when ``c`` has a terminating decimal, else ``"a/b"``."""
        den = self.denominator
        twos = fives = 0
        while den % 2 == 0:
            den //= 2
            twos += 1
        while den % 5 == 0:
            den //= 5
            fives += 1
        if den != 1:
            return str(self)
        places = max(min_places, twos, fives)
        scaled = self.numerator * 10**places // self.denominator
        return f"0.{scaled:0{places}d}"


def floor_mul(c: RationalC, k: int) -> int:
    """Exact ``floor(c * k)`` for integer ``k >= 0``."""
    return (c.numerator * k) // c.denominator


def integer_in_step(c: RationalC, k: int) -> Optional[int]:
    """The integer ``m`` with ``c(k-1) < m <= ck``, or ``None``.

    Since ``c < 1`` the half-open interval is shorter than one, so there
    is at most one such ``m``.
    """
    if k < 1:
        raise InvalidArgumentError("k must be >= 1")
    m = floor_mul(c, k)
    return m if m > floor_mul(c, k - 1) else None


def floor_mul_array(num: int, den: int, ks: np.ndarray, offset: int = 0) -> np.ndarray:
    """Vectorised ``floor((num * ks + offset) / den)`` for ``ks >= 0``.

    Falls back to Python integers when int64 could overflow.
    """
    if ks.size == 0:
        return ks.astype(np.int64)
    top = int(ks.max())
    if num * top + abs(offset) < (1 << 62):
        return (ks.astype(np.int64) * num + offset) // den
    return np.array([(num * int(k) + offset) // den for k in ks], dtype=object)


# ---------------------------------------------------------------------------
# Sieve
# ---------------------------------------------------------------------------

def _small_primes(n: int) -> np.ndarray:
    """Plain sieve for the base primes up to ``n``."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.flatnonzero(flags).astype(np.int64)


def prime_count_upper(x: int) -> int:
    """Upper bound for pi(x): 1.25506 x / log x (x > 1), used to size buffers."""
    if x < 17:
        return 6
    return int(1.25506 * x / math.log(x)) + 1


def _segment_primes(lo: int, count: int, base: np.ndarray) -> np.ndarray:
    """Primes among the ``count`` odd numbers ``lo, lo+2, ...`` (``lo`` odd)."""
    flags = np.ones(count, dtype=bool)
    hi = lo + 2 * (count - 1)
    for p in base:
        p = int(p)
        sq = p * p
        if sq > hi:
            break
        start = max(sq, -(-lo // p) * p)
        if start % 2 == 0:
            start += p
        flags[(start - lo) // 2::p] = False
    if lo == 1:
        flags[0] = False
    return np.flatnonzero(flags) * 2 + lo


class PrimeTable:
    """Immutable prime oracle for ``2 <= k <= limit``.

    Stores only the ordered prime list; ``is_prime`` and ``pi`` are binary
    searches over it and ``nth_prime`` is an index lookup.  Safe for
    concurrent readers.
    """

    def __init__(self, limit: int, primes: np.ndarray):
        self.limit = int(limit)
        primes.setflags(write=False)
        self._primes = primes

    @property
    def primes(self) -> np.ndarray:
        """Read-only array of all primes ``<= limit``."""
        return self._primes

    def __len__(self) -> int:
        return len(self._primes)

    def __repr__(self) -> str:
        return f"PrimeTable(limit={self.limit}, count={len(self)})"

    def _check(self, k: int) -> None:
        if k > self.limit:
            raise OutOfRangeError(f"{k} exceeds the table limit {self.limit}")

    def is_prime(self, k: int) -> bool:
        self._check(k)
        if k < 2:
            return False
        i = int(np.searchsorted(self._primes, self._key(k)))
        return i < len(self._primes) and int(self._primes[i]) == k

    def pi(self, k: int) -> int:
        """Number of primes ``<= k``."""
        self._check(k)
        if k < 2:
            return 0
        return int(np.searchsorted(self._primes, self._key(k), side="right"))

    def pi_many(self, ks: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`pi` for nonnegative integer arrays."""
        ks = np.asarray(ks)
        if ks.size and int(ks.max()) > self.limit:
            raise OutOfRangeError(f"{int(ks.max())} exceeds the table limit {self.limit}")
        return np.searchsorted(self._primes, ks.astype(self._primes.dtype), side="right")

    def nth_prime(self, m: Union[int, float, Fraction]) -> int:
        """The ``floor(m)``-th prime (1-based: ``nth_prime(1) == 2``)."""
        idx = math.floor(m)
        if idx < 1:
            raise InvalidArgumentError(f"prime index floor({m}) must be >= 1")
        if idx > len(self._primes):
            raise OutOfRangeError(
                f"p_{idx} requested but the table up to {self.limit} holds "
                f"only {len(self._primes)} primes"
            )
        return int(self._primes[idx - 1])

    def primes_between(self, lo: int, hi: int) -> np.ndarray:
        """Primes ``p`` with ``lo <= p <= hi`` (view into the table)."""
        self._check(hi)
        a = np.searchsorted(self._primes, self._key(max(lo, 0)), side="left")
        b = np.searchsorted(self._primes, self._key(hi), side="right")
        return self._primes[a:b]

    def _key(self, k: int):
        return self._primes.dtype.type(k)


def build_table(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    mem_cap: Optional[int] = None,
) -> PrimeTable:
    """Sieve all primes up to ``limit`` into a :class:`PrimeTable`.

    Parameters
    ----------
    limit : int
        Inclusive upper end; must be at least 2.
    segment_size : int
        Odd-number flags per segment.  Has no effect on the result.
    mem_cap : int, optional
        Byte ceiling for the prime list.  Defaults to ``$CRAMANUJAN_MEM_CAP``
        or 2 GiB.

    Raises
    ------
    InvalidArgumentError
        If ``limit < 2`` or ``segment_size < 1``.
    ResourceLimitError
        If the prime list could exceed the memory cap.
    """
    limit = int(limit)
    if limit < 2:
        raise InvalidArgumentError(f"limit must be >= 2, got {limit}")
    if segment_size < 1:
        raise InvalidArgumentError("segment_size must be positive")
    dtype = np.uint32 if limit < (1 << 32) else np.int64
    capacity = prime_count_upper(limit)
    cap = resolve_mem_cap(mem_cap)
    need = capacity * np.dtype(dtype).itemsize
    if need > cap:
        raise ResourceLimitError(
            f"prime list up to {limit} needs about {need} bytes, over the "
            f"memory cap of {cap} bytes (raise --mem-cap or ${MEM_CAP_ENV})"
        )

    base = _small_primes(math.isqrt(limit) + 1)[1:]
    out = np.empty(capacity, dtype=dtype)
    out[0] = 2
    filled = 1
    n_odd = (limit + 1) // 2  # odd numbers 1, 3, ..., <= limit
    for i0 in range(0, n_odd, segment_size):
        count = min(segment_size, n_odd - i0)
        seg = _segment_primes(2 * i0 + 1, count, base)
        out[filled:filled + len(seg)] = seg
        filled += len(seg)
    return PrimeTable(limit, out[:filled].copy())
