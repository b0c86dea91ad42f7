"""Dilogarithm on [-1, 1], digamma at integer/half-integer points, and the
functional-equation checks built on them.

The dilogarithm uses the defining power series for |x| <= 1/2 and reduces
larger arguments with the reflection identity
``Li2(x) + Li2(1-x) = pi^2/6 - log(x) log(1-x)`` and the square identity
``Li2(x) + Li2(-x) = Li2(x^2)/2`` so the series ratio never exceeds 1/2 and
the term count stays O(digits).  Arguments outside [-1, 1] are rejected:
the real branch is ambiguous beyond that interval.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpfr

from . import exact, hpreal
from .errors import DomainError
from .hpreal import PrecisionContext, Real

HalfInteger = Union[int, Fraction]


def _dilog_series(x: mpfr) -> mpfr:
    # direct power series, |x| <= 1/2; runs in the caller's gmpy2 context
    tol = mpfr(2) ** (-gmpy2.get_context().precision)
    total = mpfr(0)
    p = x
    m = 1
    while True:
        term = p / (m * m)
        total += term
        if abs(term) < tol * max(mpfr(1), abs(total)):
            return total
        p *= x
        m += 1


def _dilog(x: mpfr, pi2_6: mpfr) -> mpfr:
    if x == 1:
        return pi2_6
    if x == -1:
        return -pi2_6 / 2
    if abs(x) <= mpfr(1) / 2:
        return _dilog_series(x)
    if x > 0:
        # reflection: argument moves to 1-x in [0, 1/2)
        return pi2_6 - gmpy2.log(x) * gmpy2.log1p(-x) - _dilog_series(1 - x)
    # x in (-1, -1/2): Li2(x) = Li2(x^2)/2 - Li2(-x), with -x in (1/2, 1)
    return _dilog(x * x, pi2_6) / 2 - _dilog(-x, pi2_6)


def dilog(x: Real, ctx: PrecisionContext) -> mpfr:
    """Li2(x) for -1 <= x <= 1, accurate to the context's working digits."""
    with ctx.guard(extra_bits=16):
        v = hpreal.to_mpfr(x, ctx)
        if v < -1 or v > 1:
            raise DomainError(f"dilog argument {v} outside [-1, 1]")
        pi = gmpy2.const_pi()
        return _dilog(v, pi * pi / 6)


def digamma_half(m: HalfInteger, ctx: PrecisionContext) -> mpfr:
    """psi(m) for m in {1/2, 1, 3/2, 2, ...}.

    psi(n) = -gamma + H_{n-1};  psi(n + 1/2) = -gamma - 2 log 2
    + 2 sum_{k=1..n} 1/(2k-1).  The rational part is exact.
    """
    q = Fraction(m)
    if q <= 0 or q.denominator not in (1, 2):
        raise DomainError(f"digamma_half needs a positive half-integer, got {m}")
    gamma = hpreal.const_gamma(ctx)
    with ctx.guard():
        if q.denominator == 1:
            n = int(q)
            return -gamma + hpreal.from_rational(exact.harmonic(n - 1), ctx)
        n = int(q - Fraction(1, 2))
        odd = Fraction(0)
        for k in range(1, n + 1):
            odd += Fraction(1, 2 * k - 1)
        return (-gamma - 2 * hpreal.const_log2(ctx)
                + 2 * hpreal.from_rational(odd, ctx))


def alt_harmonic_closed(n: int, ctx: PrecisionContext) -> mpfr:
    """H'_n via the digamma closed form
    H'_n = log 2 + ((-1)^n / 2) [psi((n+1)/2) - psi((n+2)/2)].
    """
    if n < 1:
        raise DomainError("n must be a positive integer")
    with ctx.guard():
        a = digamma_half(Fraction(n + 1, 2), ctx)
        b = digamma_half(Fraction(n + 2, 2), ctx)
        sign = 1 if n % 2 == 0 else -1
        return hpreal.const_log2(ctx) + sign * (a - b) / 2


def eq21_check(ctx: PrecisionContext) -> tuple[mpfr, mpfr]:
    """Both sides of 2 Li2(1/3) - Li2(-1/3) = pi^2/6 - (log^2 3)/2."""
    with ctx.guard():
        lhs = 2 * dilog(Fraction(1, 3), ctx) - dilog(Fraction(-1, 3), ctx)
        pi = hpreal.const_pi(ctx)
        log3 = hpreal.const_log3(ctx)
        rhs = pi * pi / 6 - log3 * log3 / 2
        return lhs, rhs
