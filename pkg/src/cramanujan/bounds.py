"""
Analytic search horizons for c-Ramanujan primes.

Combining the Rosser-Schoenfeld estimates

    x / (log x - 1/2) < pi(x)            for x >= 67
    pi(y) < y / (log y - 3/2)            for y > e^{3/2}

at ``y = cx`` gives the lower bound

    pi(x) - pi(cx) > x/(log x - 1/2) - cx/(log x - A) = f(x),   A = 3/2 - log c,

valid for ``x >= 67`` and ``x > e^{3/2}/c``.  ``f`` is increasing once
``log x - 1/2`` exceeds the largest real root ``u_c`` of a cubic, so any
``x0 >= M_c`` with ``f(x0) >= n`` bounds ``R_{c,n}`` from above.  For
``c <= 1/2`` the Laishram bound ``R_{1/2,n} < p_{3n}`` together with
monotonicity in ``c`` offers a second, usually tighter, certificate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import InvalidArgumentError, ResourceLimitError
from .primes import PrimeTable, RationalC, build_table

ANALYTIC = "analytic-f"
P3N_FALLBACK = "p3n-fallback"

#: Relative slack applied to floating-point upper bounds before rounding up.
SLACK = 1e-9
#: Largest x the analytic bisection may bracket before giving up.
X_CEILING = 1e18

_HALF = RationalC(1, 2)


@dataclass(frozen=True)
class BoundCertificate:
    """A certified upper bound ``x0 >= R_{c,n}``."""

    c: RationalC
    n: int
    x0: int
    method: str
    A: Optional[float]
    u_c: float
    M_c: float

    def as_dict(self) -> dict:
        return {
            "c": str(self.c),
            "n": self.n,
            "x0": self.x0,
            "method": self.method,
            "A": self.A,
            "u_c": self.u_c,
            "M_c": self.M_c,
        }


def constant_A(c: RationalC) -> float:
    """``3/2 - log c``; always greater than 3/2."""
    return 1.5 - _log_c(c)


def _log_c(c: RationalC) -> float:
    return math.log(c.numerator) - math.log(c.denominator)


def _f(c: float, A: float, x: float) -> float:
    L = math.log(x)
    if L - A <= 0.0:
        return -math.inf
    return x / (L - 0.5) - c * x / (L - A)


def f_threshold(c: RationalC) -> float:
    """Smallest admissible x for :func:`f_lower` (the ``e^{3/2}/c`` end is open)."""
    return max(67.0, math.exp(constant_A(c)))


def f_lower(c: RationalC, x: float) -> float:
    """Lower bound ``f(x)`` on the number of primes in ``(cx, x]``.

    Raises :class:`InvalidArgumentError` below ``max(67, e^{3/2}/c)``, where
    the underlying prime-count estimates are not available.
    """
    A = constant_A(c)
    if x < 67 or math.log(x) <= A:
        raise InvalidArgumentError(
            f"f_lower needs x >= 67 and x > e^(3/2)/c = {math.exp(A):.6g}; got x = {x}"
        )
    return _f(float(c), A, x)


def cubic_coefficients(c: RationalC) -> Tuple[float, float, float, float]:
    """Coefficients (highest degree first) of

    ``(u-1)(u-(A-1/2))^2 - c(u-(A+1/2))u^2``.
    """
    A = constant_A(c)
    cf = float(c)
    a = A - 0.5
    b = A + 0.5
    return (1.0 - cf, -(2.0 * a + 1.0) + cf * b, a * a + 2.0 * a, -a * a)


def _horner(coeffs, u: float) -> float:
    acc = 0.0
    for co in coeffs:
        acc = acc * u + co
    return acc


def _bisect_root(coeffs, lo: float, hi: float, rtol: float = 1e-12) -> float:
    flo = _horner(coeffs, lo)
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rtol * max(1.0, abs(mid)):
            break
        fm = _horner(coeffs, mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def real_cubic_roots(coeffs) -> list:
    """All real roots of a cubic with positive leading coefficient, ascending.

    The Cauchy bound brackets every root.  The critical points split that
    range into monotone pieces, and each piece with a sign change is
    bisected.
    """
    a3, a2, a1, a0 = coeffs
    if a3 <= 0:
        raise InvalidArgumentError("leading coefficient must be positive")
    bound = 1.0 + max(abs(a2 / a3), abs(a1 / a3), abs(a0 / a3))
    # derivative 3 a3 u^2 + 2 a2 u + a1
    knots = [-bound]
    disc = (2 * a2) ** 2 - 12 * a3 * a1
    if disc > 0:
        sq = math.sqrt(disc)
        for r in sorted(((-2 * a2 - sq) / (6 * a3), (-2 * a2 + sq) / (6 * a3))):
            if -bound < r < bound:
                knots.append(r)
    knots.append(bound)
    roots = []
    for lo, hi in zip(knots, knots[1:]):
        flo, fhi = _horner(coeffs, lo), _horner(coeffs, hi)
        if flo == 0.0:
            roots.append(lo)
        elif (flo < 0) != (fhi < 0):
            roots.append(_bisect_root(coeffs, lo, hi))
    if _horner(coeffs, knots[-1]) == 0.0:
        roots.append(knots[-1])
    return sorted(set(roots))


def cubic_u_c(c: RationalC) -> float:
    """Greatest real root of the monotonicity cubic for ``f``."""
    coeffs = cubic_coefficients(c)
    u = max(real_cubic_roots(coeffs))
    resid = abs(_horner(coeffs, u))
    if resid > 1e-9 * max(1.0, abs(u) ** 3) or _horner(coeffs, u + 1.0) <= 0:
        raise ArithmeticError(f"cubic root check failed for c={c}: u={u}, residual={resid}")
    return u


def validity_threshold_M(c: RationalC) -> float:
    """``M_c = max(67, e^{3/2}/c, e^{u_c + 1/2})``."""
    return max(67.0, math.exp(constant_A(c)), math.exp(cubic_u_c(c) + 0.5))


def _round_up(x: float) -> int:
    return math.ceil(x * (1.0 + SLACK))


def analytic_bound(c: RationalC, n: int, rtol: float = 1e-6) -> BoundCertificate:
    """Certificate from solving ``f(x) = n`` on ``[M_c, inf)`` by bisection."""
    if n < 1:
        raise InvalidArgumentError("n must be >= 1")
    A = constant_A(c)
    u_c = cubic_u_c(c)
    M = max(67.0, math.exp(A), math.exp(u_c + 0.5))
    cf = float(c)
    if _f(cf, A, M) >= n:
        x0 = _round_up(M)
    else:
        lo, hi = M, 2.0 * M
        while _f(cf, A, hi) < n:
            lo, hi = hi, 2.0 * hi
            if hi > X_CEILING:
                raise ResourceLimitError(
                    f"analytic bound for c={c}, n={n} exceeds {X_CEILING:.0e}"
                )
        while hi - lo > rtol * hi:
            mid = 0.5 * (lo + hi)
            if _f(cf, A, mid) >= n:
                hi = mid
            else:
                lo = mid
        x0 = _round_up(hi)
    return BoundCertificate(c, n, x0, ANALYTIC, A, u_c, M)


def rosser_window(m: int) -> Tuple[float, float]:
    """Interval ``m log m + m log log m -/+ m`` that contains ``p_m`` for ``m >= 6``."""
    if m < 6:
        raise InvalidArgumentError(f"the window is asserted only for m >= 6, got {m}")
    mid = m * math.log(m) + m * math.log(math.log(m))
    return mid - m, mid + m


def nth_prime_ceiling(m: int) -> int:
    """An integer at least ``p_m``, for sizing sieves."""
    if m < 6:
        return 13
    return math.ceil(rosser_window(m)[1])


def upper_bound(
    c: RationalC,
    n: int,
    table: Optional[PrimeTable] = None,
    mem_cap: Optional[int] = None,
) -> BoundCertificate:
    """Best available certificate ``x0 >= R_{c,n}``.

    The analytic certificate is always computed.  For ``c <= 1/2`` and
    ``n >= 2`` the ``p_{3n}`` certificate is also formed and the smaller
    ``x0`` wins.  ``table`` is used (or grown) to look up ``p_{3n}``.
    """
    if n < 1:
        raise InvalidArgumentError("n must be >= 1")
    cert = analytic_bound(c, n)
    if c <= _HALF and n >= 2:
        need = nth_prime_ceiling(3 * n)
        if table is None or len(table) < 3 * n:
            if table is None or table.limit < need:
                table = build_table(need, mem_cap=mem_cap)
        p3n = table.nth_prime(3 * n)
        if p3n < cert.x0:
            cert = BoundCertificate(c, n, p3n, P3N_FALLBACK, None, cert.u_c, cert.M_c)
    return cert
