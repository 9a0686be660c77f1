"""
Generation of c-Ramanujan primes by the interval sweep.

For ``k = 1, 2, ...`` the sweep keeps ``s`` = number of primes in
``(ck, k]``: add one when ``k`` is prime, subtract one when the step
``(c(k-1), ck]`` contains a prime ``m``.  ``L[j]`` records the last ``k``
at which ``s == j``; then ``R_{c,n} = L[n-1] + 1``.  Since ``s`` moves by
at most one per step, this equals ``1 + max{k : s(k) < n}``.

:func:`generate` evaluates the same counter chunk by chunk: ``s`` only
changes at primes ``k`` and at the first ``k`` with ``floor(ck) = q`` for
a prime ``q``, so the per-``k`` loop is replayed over those change points
with numpy.  :func:`sweep_reference` is the literal per-``k`` loop.

Two readings of "for all ``x >= R``" are supported.  The default
(``integer-sweep``) evaluates the count only at integers, with
``pi(cx) = pi(floor(cx))``.  ``strict-real`` uses the infimum over real
``x in [k, k+1)``, which is ``pi(k) - #{p < c(k+1)}``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .bounds import BoundCertificate, upper_bound
from .errors import InvalidArgumentError, OutOfRangeError, ResourceLimitError
from .primes import PrimeTable, RationalC, build_table, floor_mul, floor_mul_array

log = logging.getLogger(__name__)

INTEGER_SWEEP = "integer-sweep"
STRICT_REAL = "strict-real"
SEMANTICS = (INTEGER_SWEEP, STRICT_REAL)

#: Integers k handled per vectorised chunk.
SWEEP_CHUNK = 1 << 22


@dataclass(frozen=True)
class RamanujanList:
    """``values[i] = R_{c,i+1}`` for ``i < n_max``."""

    c: RationalC
    values: Tuple[int, ...]
    horizon: int
    semantics: str = INTEGER_SWEEP
    certificate: Optional[BoundCertificate] = field(default=None, compare=False)

    @property
    def n_max(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def R(self, n: int) -> int:
        """``R_{c,n}`` (1-based)."""
        if not 1 <= n <= len(self.values):
            raise OutOfRangeError(f"n={n} outside 1..{len(self.values)}")
        return self.values[n - 1]


# ---------------------------------------------------------------------------
# Counts
# ---------------------------------------------------------------------------

def interval_count(table: PrimeTable, c: RationalC, k: int) -> int:
    """``pi(k) - pi(floor(ck))``: primes in ``(ck, k]``."""
    if k < 0:
        raise InvalidArgumentError("k must be nonnegative")
    return table.pi(k) - table.pi(floor_mul(c, k))


def strict_infimum_count(table: PrimeTable, c: RationalC, k: int) -> int:
    """Infimum of ``pi(x) - pi(cx)`` over real ``x in [k, k+1)``.

    Equals ``pi(k) - #{p : p < c(k+1)}``, where ``p < c(k+1)`` is tested as
    ``p * den < num * (k+1)``, i.e. ``p <= (num*(k+1) - 1) // den``.
    """
    if k < 1:
        raise InvalidArgumentError("k must be >= 1")
    if k + 1 > table.limit:
        raise OutOfRangeError(f"k+1 = {k + 1} exceeds the table limit {table.limit}")
    below = (c.numerator * (k + 1) - 1) // c.denominator
    return table.pi(k) - table.pi(below)


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

def _drop_positions(c: RationalC, qs: np.ndarray, semantics: str) -> np.ndarray:
    """The ``k`` at which prime ``q`` leaves the counted interval.

    Integer sweep: first ``k`` with ``floor(ck) >= q``, i.e. ``ceil(q/c)``.
    Strict real: first ``k`` with ``c(k+1) > q``, i.e. ``floor(q/c)``.
    """
    num, den = c.numerator, c.denominator
    if semantics == INTEGER_SWEEP:
        return floor_mul_array(den, num, qs.astype(np.int64), offset=num - 1)
    return floor_mul_array(den, num, qs)


def sweep_reference(table: PrimeTable, c: RationalC, horizon: int, n_max: int) -> List[int]:
    """Literal per-``k`` sweep; returns ``L[0..n_max-1]`` (``0`` if unseen).

    Integer semantics only.  Slow; kept as a cross-check for :func:`sweep`.
    """
    if horizon > table.limit:
        raise OutOfRangeError(f"horizon {horizon} exceeds the table limit {table.limit}")
    L = [0] * n_max
    s = 0
    prev = 0
    for k in range(1, horizon + 1):
        if table.is_prime(k):
            s += 1
        m = floor_mul(c, k)
        if m > prev and table.is_prime(m):
            s -= 1
        prev = m
        if s < n_max:
            L[s] = k
    return L


def sweep(
    table: PrimeTable,
    c: RationalC,
    horizon: int,
    n_max: int,
    semantics: str = INTEGER_SWEEP,
    chunk: int = SWEEP_CHUNK,
) -> np.ndarray:
    """Run the counter sweep over ``k = 1..horizon``.

    Returns ``L`` of length ``n_max`` where ``L[j]`` is the largest
    ``k <= horizon`` with ``s(k) == j`` (``0`` if none).
    """
    if semantics not in SEMANTICS:
        raise InvalidArgumentError(f"unknown semantics {semantics!r}")
    if horizon > table.limit:
        raise OutOfRangeError(f"horizon {horizon} exceeds the table limit {table.limit}")
    L = np.zeros(n_max, dtype=np.int64)
    primes = table.primes
    num, den = c.numerator, c.denominator
    carry = 0
    lo = 1
    while lo <= horizon:
        hi = min(lo + chunk - 1, horizon)
        ups = table.primes_between(lo, hi).astype(np.int64)
        # primes whose drop position lands in [lo, hi]; superset then filter
        q_lo = max(2, (num * (lo - 1)) // den - 1)
        q_hi = min(table.limit, (num * (hi + 1)) // den + 1)
        qs = table.primes_between(q_lo, q_hi) if q_hi >= q_lo else primes[:0]
        drops = _drop_positions(c, qs, semantics)
        drops = np.asarray(drops[(drops >= lo) & (drops <= hi)], dtype=np.int64)

        pos = np.concatenate(([lo], ups, drops))
        delta = np.concatenate(([0], np.ones(len(ups), np.int64), -np.ones(len(drops), np.int64)))
        uniq, inv = np.unique(pos, return_inverse=True)
        net = np.bincount(inv, weights=delta, minlength=len(uniq)).astype(np.int64)
        level = carry + np.cumsum(net)
        ends = np.empty_like(uniq)
        ends[:-1] = uniq[1:] - 1
        ends[-1] = hi
        keep = level < n_max
        if keep.any():
            lv, en = level[keep], ends[keep]
            if lv.min() < 0:
                raise AssertionError("negative interval count")
            # last block per level wins: ends are ascending
            rev_lv = lv[::-1]
            u, first = np.unique(rev_lv, return_index=True)
            L[u] = en[::-1][first]
        carry = int(level[-1])
        lo = hi + 1
    return L


def _table_for(horizon: int, table: Optional[PrimeTable], mem_cap, sieve_cap=None) -> PrimeTable:
    if table is not None and table.limit >= horizon:
        return table
    if sieve_cap is not None and horizon > sieve_cap:
        raise ResourceLimitError(f"sweep needs primes up to {horizon}, above the sieve cap {sieve_cap}")
    log.info("building prime table up to %d", horizon)
    return build_table(horizon, mem_cap=mem_cap)


def generate(
    c: RationalC,
    n_max: int,
    table: Optional[PrimeTable] = None,
    *,
    semantics: str = INTEGER_SWEEP,
    horizon: Optional[int] = None,
    mem_cap: Optional[int] = None,
    sieve_cap: Optional[int] = None,
) -> RamanujanList:
    """Compute ``R_{c,1}, ..., R_{c,n_max}``.

    The sweep horizon defaults to :func:`upper_bound` for ``n_max``.  If
    the count has not permanently reached ``n_max`` by the horizon (some
    ``L[j]``, ``j < n_max``, touches it) the horizon is doubled and the
    sweep repeated.  ``table`` is reused when large enough, else a new
    one is built, subject to ``mem_cap`` bytes and ``sieve_cap`` as the
    largest sieve limit allowed.
    """
    c = RationalC.parse(c)
    if n_max < 1:
        raise InvalidArgumentError("n_max must be >= 1")
    if semantics not in SEMANTICS:
        raise InvalidArgumentError(f"unknown semantics {semantics!r}")
    cert = None
    if horizon is None:
        cert = upper_bound(c, n_max, table, mem_cap=mem_cap)
        horizon = cert.x0
    while True:
        table = _table_for(horizon + 1, table, mem_cap, sieve_cap)
        L = sweep(table, c, horizon, n_max, semantics)
        if int(L.max()) < horizon - 1 and int(L.min()) > 0:
            break
        log.info("c=%s: count below %d near horizon %d; doubling", c, n_max, horizon)
        horizon *= 2
    values = tuple(int(v) + 1 for v in L)
    return RamanujanList(c, values, horizon, semantics, cert)


def generate_through(
    c: RationalC,
    limit: int,
    table: Optional[PrimeTable] = None,
    *,
    semantics: str = INTEGER_SWEEP,
    mem_cap: Optional[int] = None,
    sieve_cap: Optional[int] = None,
) -> RamanujanList:
    """Shortest-effort list whose last value is ``>= limit``.

    Every c-Ramanujan prime below ``limit`` is then present.  ``n_max``
    starts near ``(1-c) pi(limit)`` and grows by 25% until it suffices.
    """
    c = RationalC.parse(c)
    table = _table_for(limit, table, mem_cap, sieve_cap)
    n = max(2, math.ceil((1 - float(c)) * table.pi(limit)) + 8)
    while True:
        lst = generate(c, n, table, semantics=semantics, mem_cap=mem_cap, sieve_cap=sieve_cap)
        if lst.values[-1] >= limit:
            return lst
        n = math.ceil(n * 1.25)


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def count_range(table: PrimeTable, c: RationalC, lo: int, hi: int) -> np.ndarray:
    """``pi(k) - pi(floor(ck))`` for every integer ``k`` in ``[lo, hi]``.

    Evaluates both prime counts directly from prefix sums of prime flags,
    without reference to the sweep.
    """
    if lo < 0 or hi < lo:
        raise InvalidArgumentError(f"bad range [{lo}, {hi}]")
    if hi > table.limit:
        raise OutOfRangeError(f"{hi} exceeds the table limit {table.limit}")
    ks = np.arange(lo, hi + 1, dtype=np.int64)
    pi_k = _prefix_pi(table, lo, hi)
    m = floor_mul_array(c.numerator, c.denominator, ks).astype(np.int64)
    m_lo, m_hi = int(m[0]), int(m[-1])
    pi_m = _prefix_pi(table, m_lo, m_hi)[m - m_lo]
    return pi_k - pi_m


def _prefix_pi(table: PrimeTable, lo: int, hi: int) -> np.ndarray:
    """``pi(j)`` for ``j = lo..hi`` from flags and a running sum."""
    flags = np.zeros(hi - lo + 1, dtype=np.int64)
    ps = table.primes_between(lo, hi).astype(np.int64)
    flags[ps - lo] = 1
    base = table.pi(lo - 1) if lo >= 1 else 0
    return base + np.cumsum(flags)


def verify_definitions(
    table: PrimeTable,
    c: RationalC,
    claims: Iterable[Tuple[int, int]],
    horizon: int,
    chunk: int = 1 << 23,
) -> List[bool]:
    """Batch form of :func:`verify_definition` for ``(candidate, n)`` pairs.

    One pass over ``[min candidate - 1, horizon]`` computes brute-force
    counts.  Each claim then checks the minimum over ``[candidate, horizon]``
    and the single count at ``candidate - 1``.
    """
    claims = list(claims)
    if not claims:
        return []
    if horizon > table.limit:
        raise OutOfRangeError(f"horizon {horizon} exceeds the table limit {table.limit}")
    for cand, n in claims:
        if cand > horizon:
            raise InvalidArgumentError(f"horizon {horizon} is below candidate {cand}")
        if n < 1:
            raise InvalidArgumentError("n must be >= 1")
    cands = sorted({max(cand, 1) for cand, _ in claims})
    start = max(cands[0] - 1, 0)
    # minimum count over each gap [cands[i], cands[i+1]-1] and the last to horizon
    cuts = np.array(cands + [horizon + 1], dtype=np.int64)
    gap_min = np.full(len(cands), np.iinfo(np.int64).max, dtype=np.int64)
    at = {}
    want = set(cand - 1 for cand in cands)
    lo = start
    while lo <= horizon:
        hi = min(lo + chunk - 1, horizon)
        counts = count_range(table, c, lo, hi)
        for w in want:
            if lo <= w <= hi:
                at[w] = int(counts[w - lo])
        # split the chunk at candidate cuts; gap g spans [cuts[g], cuts[g+1])
        g0 = int(np.searchsorted(cuts, lo, side="right")) - 1
        inner = cuts[(cuts > lo) & (cuts <= hi)]
        starts = np.concatenate(([lo], inner)) - lo
        mins = np.minimum.reduceat(counts, starts)
        gaps = np.arange(g0, g0 + len(starts))
        ok = gaps >= 0
        gap_min[gaps[ok]] = np.minimum(gap_min[gaps[ok]], mins[ok])
        lo = hi + 1
    suffix = np.minimum.accumulate(gap_min[::-1])[::-1]
    index = {cand: i for i, cand in enumerate(cands)}
    out = []
    for cand, n in claims:
        cand = max(cand, 1)
        before = at.get(cand - 1, 0)
        out.append(bool(suffix[index[cand]] >= n and before < n))
    return out


def verify_definition(
    table: PrimeTable, c: RationalC, candidate: int, n: int, horizon: int
) -> bool:
    """Brute-force check that ``candidate == R_{c,n}`` up to ``horizon``.

    True iff every integer ``k`` in ``[candidate, horizon]`` has at least
    ``n`` primes in ``(ck, k]`` and ``candidate - 1`` has fewer.  The
    caller is responsible for ``horizon`` being a sound upper bound.
    """
    if horizon < candidate:
        raise InvalidArgumentError(f"horizon {horizon} is below candidate {candidate}")
    return verify_definitions(table, c, [(candidate, n)], horizon)[0]


# ---------------------------------------------------------------------------
# Semantics diagnostic
# ---------------------------------------------------------------------------

def semantics_discrepancy_scan(
    table: PrimeTable,
    c: RationalC,
    n_max: int,
    horizon: int,
    reference: Optional[RamanujanList] = None,
) -> List[Tuple[int, int, int]]:
    """Integers ``k`` where the strict real-x count dips and moves some ``R_{c,n}``.

    A dip at ``k`` (strict count below the integer count) happens exactly
    when a prime ``q`` lies strictly inside ``(ck, c(k+1))``, i.e. at
    ``k = floor(q/c)`` with ``q/c`` not an integer.  The dip changes
    ``R_{c,n}`` for ``n = strict + 1`` when ``n <= min(integer count, n_max)``
    and ``R_{c,n} <= k``.  Returns ``(k, integer count, strict count)``
    triples in increasing ``k``; an empty list means both readings agree
    on ``R_{c,1..n_max}`` for ``k <= horizon``.
    """
    if horizon > table.limit - 1:
        raise OutOfRangeError(f"horizon {horizon} exceeds table limit - 1 = {table.limit - 1}")
    if reference is None:
        reference = generate(c, n_max, table)
    R = np.asarray(reference.values[:n_max], dtype=np.int64)
    num, den = c.numerator, c.denominator
    qmax = (num * (horizon + 1)) // den + 1
    primes = table.primes_between(2, min(qmax, table.limit)).astype(np.int64)
    found = []
    step = 1 << 22
    for i0 in range(0, len(primes), step):
        qs = primes[i0:i0 + step]
        idx = np.arange(i0, i0 + len(qs), dtype=np.int64)  # primes below q
        if int(qs[-1]) * den >= (1 << 62):
            raise OutOfRangeError("denominator too large for the vectorised scan")
        prod = qs * den
        exact = prod % num == 0
        ks = prod // num
        sel = (~exact) & (ks >= 1) & (ks <= horizon)
        ks, idx = ks[sel], idx[sel]
        if ks.size == 0:
            continue
        int_count = table.pi_many(ks).astype(np.int64) - idx
        strict = int_count - 1
        n = strict + 1
        ok = (n >= 1) & (n <= np.minimum(int_count, n_max))
        ok[ok] &= R[n[ok] - 1] <= ks[ok]
        for k, a, b in zip(ks[ok], int_count[ok], strict[ok]):
            found.append((int(k), int(a), int(b)))
    found.sort()
    return found
