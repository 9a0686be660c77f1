"""
Densities of c-Ramanujan primes among the primes, longest runs, and the
biased-coin (Schilling) expectation for the longest run of heads.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import InvalidArgumentError, OutOfRangeError
from .generator import RamanujanList, generate
from .primes import PrimeTable, RationalC

EULER_GAMMA = 0.5772156649
#: Bound on the periodic remainder omitted from the Schilling variance.
SCHILLING_R2_BOUND = 0.00006


@dataclass(frozen=True)
class DensityReport:
    c: RationalC
    limit: int
    pi_c: int
    pi: int
    actual_density: float
    expected_density: float
    ratio_last: float


@dataclass(frozen=True)
class RunReport:
    c: RationalC
    lo: int
    hi: int
    N: int
    P: float
    longest_ram_actual: int
    longest_nonram_actual: int
    longest_ram_expected: float
    longest_nonram_expected: float
    variance_ram: float
    variance_nonram: float
    r2_bound: float = SCHILLING_R2_BOUND

    def as_dict(self) -> dict:
        d = asdict(self)
        d["c"] = str(self.c)
        return d


def _require_complete(lst: RamanujanList, limit: int) -> None:
    if not lst.values or lst.values[-1] < limit:
        last = lst.values[-1] if lst.values else None
        raise InvalidArgumentError(
            f"list for c={lst.c} ends at {last}; it must reach {limit} to be complete"
        )


def asymptotic_index(c: RationalC, n: int) -> int:
    """``floor(n / (1 - c))`` in exact arithmetic."""
    return n * c.denominator // (c.denominator - c.numerator)


def density(lst: RamanujanList, table: PrimeTable, limit: int) -> DensityReport:
    """Fraction of primes ``<= limit`` that are c-Ramanujan primes below ``limit``.

    The list must be complete through ``limit`` (last value ``>= limit``).
    ``ratio_last`` is ``R_{c,n}/p_{floor(n/(1-c))}`` at ``n = pi_c``.
    """
    _require_complete(lst, limit)
    values = np.asarray(lst.values, dtype=np.int64)
    pi_c = int(np.searchsorted(values, limit, side="left"))
    pi = table.pi(limit)
    ratio = math.nan
    if pi_c >= 1:
        ratio = lst.values[pi_c - 1] / table.nth_prime(asymptotic_index(lst.c, pi_c))
    return DensityReport(
        c=lst.c,
        limit=limit,
        pi_c=pi_c,
        pi=pi,
        actual_density=pi_c / pi,
        expected_density=1.0 - float(lst.c),
        ratio_last=ratio,
    )


def interval_density(lst: RamanujanList, table: PrimeTable, lo: int, hi: int) -> float:
    """Fraction of the primes in ``(lo, hi]`` that are c-Ramanujan."""
    if hi <= lo:
        raise InvalidArgumentError("need lo < hi")
    _require_complete(lst, hi)
    ps = table.primes_between(lo + 1, hi)
    if len(ps) == 0:
        raise InvalidArgumentError(f"no primes in ({lo}, {hi}]")
    values = np.asarray(lst.values, dtype=np.int64)
    hits = np.searchsorted(values, hi, side="right") - np.searchsorted(values, lo, side="right")
    return int(hits) / len(ps)


def mark_primes(table: PrimeTable, lst: RamanujanList, lo: int, hi: int) -> np.ndarray:
    """One flag per prime ``p`` with ``lo < p < hi``: is ``p`` in the list."""
    if hi <= lo + 1:
        return np.zeros(0, dtype=bool)
    _require_complete(lst, hi - 1)
    ps = table.primes_between(lo + 1, hi - 1)
    return np.isin(ps.astype(np.int64), np.asarray(lst.values, dtype=np.int64))


def longest_runs(marks: Sequence[bool]) -> Tuple[int, int]:
    """Longest block of consecutive ``True`` and of consecutive ``False``."""
    m = np.asarray(marks, dtype=bool)
    if m.size == 0:
        return 0, 0
    edges = np.flatnonzero(m[1:] != m[:-1]) + 1
    starts = np.concatenate(([0], edges))
    lengths = np.diff(np.concatenate((starts, [m.size])))
    kinds = m[starts]
    best_true = int(lengths[kinds].max()) if kinds.any() else 0
    best_false = int(lengths[~kinds].max()) if (~kinds).any() else 0
    return best_true, best_false


def _check_p(P: float) -> None:
    if not 0.0 < P < 1.0:
        raise InvalidArgumentError(f"probability must be in (0, 1), got {P}")


def schilling_expected(N: int, P: float) -> float:
    """Approximate mean longest run of heads in ``N`` tosses with head probability ``P``.

    ``log N / log(1/P) - (1/2 - (log(1-P) + gamma) / log(1/P))``
    """
    _check_p(P)
    if N < 2:
        raise InvalidArgumentError("N must be >= 2")
    lq = math.log(1.0 / P)
    return math.log(N) / lq - (0.5 - (math.log(1.0 - P) + EULER_GAMMA) / lq)


def schilling_variance(P: float) -> float:
    """``pi^2 / (6 log^2(1/P)) + 1/12``; the remainder (at most 6e-5) is dropped."""
    _check_p(P)
    lq = math.log(1.0 / P)
    return math.pi**2 / (6.0 * lq * lq) + 1.0 / 12.0


def run_report(lst: RamanujanList, table: PrimeTable, lo: int, hi: int) -> RunReport:
    """Longest runs over primes in ``(lo, hi)`` against the coin model.

    The model probability ``P`` and toss count ``N`` use ``(lo, hi]``.
    """
    marks = mark_primes(table, lst, lo, hi)
    ram, nonram = longest_runs(marks)
    N = table.pi(hi) - table.pi(lo)
    P = interval_density(lst, table, lo, hi)
    return RunReport(
        c=lst.c,
        lo=lo,
        hi=hi,
        N=N,
        P=P,
        longest_ram_actual=ram,
        longest_nonram_actual=nonram,
        longest_ram_expected=schilling_expected(N, P),
        longest_nonram_expected=schilling_expected(N, 1.0 - P),
        variance_ram=schilling_variance(P),
        variance_nonram=schilling_variance(1.0 - P),
    )


def ratio_trend(
    c: RationalC, table: PrimeTable, checkpoints: Sequence[int]
) -> List[Tuple[int, float]]:
    """``(n, R_{c,n} / p_{floor(n/(1-c))})`` at each checkpoint ``n``."""
    c = RationalC.parse(c)
    if not checkpoints:
        return []
    lst = generate(c, max(checkpoints), table)
    out = []
    for n in checkpoints:
        idx = asymptotic_index(c, n)
        if idx > len(table):
            raise OutOfRangeError(f"p_{idx} is beyond the table limit {table.limit}")
        out.append((n, lst.R(n) / table.nth_prime(idx)))
    return out
