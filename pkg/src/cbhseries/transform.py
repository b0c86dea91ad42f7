"""Euler's transformation of series (Knopp's form) and Boyadzhiev's
binomial-coefficient variant.

Both operations return the two N-term partial evaluations side by side and
leave the tolerance policy to the caller; the inner binomial convolutions are
done in exact rational arithmetic before any rounding, which matters for
alternating coefficient sequences where the convolution cancels massively
(e.g. a_k = (-1)^(k-1) H_k collapses to 1/n).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence, Union

import gmpy2
from gmpy2 import mpfr

from . import exact, hpreal
from .errors import DomainError
from .hpreal import PrecisionContext, Real

ExactSeq = Union[Sequence[Fraction], Callable[[int], Fraction]]


def _getter(a: ExactSeq) -> Callable[[int], Fraction]:
    if callable(a):
        return lambda k: Fraction(a(k))
    return lambda k: Fraction(a[k])


def binomial_sums(a: ExactSeq, N: int) -> list[Fraction]:
    """b_n = sum_{m<=n} binom(n,m) a_m for n = 0..N-1, exactly."""
    get = _getter(a)
    avals = [get(k) for k in range(N)]
    out = []
    for n in range(N):
        b = 1  # binom(n, m)
        s = Fraction(0)
        for m in range(n + 1):
            s += b * avals[m]
            b = b * (n - m) // (m + 1)
        out.append(s)
    return out


def euler_partial_sums(a: ExactSeq, x: Real, N: int,
                       ctx: PrecisionContext) -> tuple[mpfr, mpfr]:
    """N-term evaluations of both sides of Euler's transformation.

    Left: sum_{k<N} a_k x^(k+1).  Right: sum_{n<N} b_n y^(n+1) with
    b_n the binomial sums of a and y = x/(1+x), which solves x = y/(1-y).
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    with ctx.guard():
        xv = hpreal.to_mpfr(x, ctx)
        if abs(xv) >= 1:
            raise DomainError(f"|x| must be < 1, got x = {xv}")
        yv = xv / (1 + xv)
        if abs(yv) >= 1:
            raise DomainError(
                f"transformed point y = x/(1+x) = {yv} leaves |y| < 1")
        get = _getter(a)
        lhs = mpfr(0)
        xp = xv
        for k in range(N):
            lhs += hpreal.to_mpfr(get(k), ctx) * xp
            xp *= xv
        rhs = mpfr(0)
        yp = yv
        for bn in binomial_sums(a, N):
            rhs += hpreal.to_mpfr(bn, ctx) * yp
            yp *= yv
        return lhs, rhs


def general_binomial_coefficients(alpha: mpfr, N: int) -> list[mpfr]:
    """binom(alpha, n) for n = 0..N-1 via the product recurrence, in the
    caller's gmpy2 context."""
    out = [mpfr(1)]
    for n in range(1, N):
        out.append(out[-1] * (alpha - (n - 1)) / n)
    return out


def boyadzhiev_lhs(a: ExactSeq, alpha: Real, z: Real, N: int,
                   ctx: PrecisionContext) -> mpfr:
    """The untransformed side sum_{n<N} binom(alpha,n) (-1)^n a_n z^n."""
    if N < 1:
        raise ValueError("N must be at least 1")
    with ctx.guard():
        av = hpreal.to_mpfr(alpha, ctx)
        zv = hpreal.to_mpfr(z, ctx)
        get = _getter(a)
        coeffs = general_binomial_coefficients(av, N)
        total = mpfr(0)
        zp = mpfr(1)
        for n in range(N):
            t = coeffs[n] * hpreal.to_mpfr(get(n), ctx) * zp
            total += -t if n % 2 else t
            zp *= zv
        return total


def boyadzhiev_two_sided(a: ExactSeq, alpha: Real, z: Real, N: int,
                         ctx: PrecisionContext) -> tuple[mpfr, mpfr]:
    """N-term evaluations of both sides of the binomial transformation
    identity: sum binom(alpha,n)(-1)^n a_n z^n against
    (z+1)^alpha sum binom(alpha,n)(-1)^n b_n (z/(z+1))^n, with b_n the
    binomial sums of a.

    alpha is restricted to real values (every use here has alpha = -1/2).
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    with ctx.guard():
        av = hpreal.to_mpfr(alpha, ctx)
        zv = hpreal.to_mpfr(z, ctx)
        if abs(zv) >= 1:
            raise DomainError(f"|z| must be < 1, got z = {zv}")
        if zv == -1:
            raise DomainError("z = -1 makes the transformed side singular")
        wv = zv / (zv + 1)
        if abs(wv) >= 1:
            raise DomainError(
                f"transformed point z/(z+1) = {wv} leaves the unit disk")
        lhs = boyadzhiev_lhs(a, alpha, z, N, ctx)
        coeffs = general_binomial_coefficients(av, N)
        prefactor = gmpy2.exp(av * gmpy2.log(zv + 1))
        rhs = mpfr(0)
        wp = mpfr(1)
        for n, bn in enumerate(binomial_sums(a, N)):
            t = coeffs[n] * hpreal.to_mpfr(bn, ctx) * wp
            rhs += -t if n % 2 else t
            wp *= wv
        return lhs, prefactor * rhs
