"""Asymptotic expansions and Euler-Maclaurin tail estimates for the
slowly-converging boundary series (the ones whose terms carry
binom(2n,n)/4^n ~ 1/sqrt(pi n)).

A tail function is represented as a finite combination of monomials
``(c_log * ln n + c_const + c_gamma * gamma) * n^(-e)`` with exact rational
coefficients and half-integer exponents.  The expansion of a whole term family
is assembled from three frozen ingredients:

* the central-binomial ratio:  binom(2n,n)/4^n * sqrt(pi n) = sum c_j n^(-j)
* the harmonic numbers:        H_n = ln n + gamma + 1/(2n) - sum B_2k/(2k n^2k)
* the printed denominator:     1/prod (a n + b)^m expanded around n = oo

The Euler-Maclaurin formula then turns the expansion into a numeric tail with
an error far below the last kept order.  The error estimate returned here is
heuristic (asymptotic series have no simple rigorous remainder); the engine
flags it as such and the tests audit it against closed forms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable

import gmpy2
from gmpy2 import mpfr

from .. import hpreal
from ..hpreal import PrecisionContext
from ..series import BoundaryForm, Weight

# binom(2n,n)/4^n = (pi n)^(-1/2) * sum_j CBC_RATIO_COEFFS[j] * n^(-j),
# obtained by expanding Gamma(n+1/2)/Gamma(n+1) via the Stirling series.
# tests/test_accel.py confirms the leading ones against exact ratios.
CBC_RATIO_COEFFS: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(-1, 8),
    Fraction(1, 128),
    Fraction(5, 1024),
    Fraction(-21, 32768),
    Fraction(-399, 262144),
    Fraction(869, 4194304),
    Fraction(39325, 33554432),
    Fraction(-334477, 2147483648),
    Fraction(-28717403, 17179869184),
    Fraction(59697183, 274877906944),
    Fraction(8400372435, 2199023255552),
    Fraction(-34429291905, 70368744177664),
    Fraction(-7199255611995, 562949953421312),
    Fraction(14631594576045, 9007199254740992),
)


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2 convention)."""
    if m == 0:
        return Fraction(1)
    total = Fraction(0)
    for k in range(m):
        total += comb(m + 1, k) * bernoulli(k)
    return -total / (m + 1)


def harmonic_expansion(order: int) -> dict[int, Fraction]:
    """Coefficients h_k of H_n - ln n - gamma = sum_{k>=1} h_k n^(-k)."""
    h = {1: Fraction(1, 2)}
    for k in range(2, order + 1):
        if k % 2 == 0:
            h[k] = -bernoulli(k) / k
    return h


# expansion entries: exponent -> [c_const, c_gamma, c_log], exponents are Fractions
Expansion = dict[Fraction, list[Fraction]]


def _mul_pure(exp: Expansion, shift: Fraction, coeff: Fraction) -> Expansion:
    out: Expansion = {}
    for e, (cc, cg, cl) in exp.items():
        out[e + shift] = [cc * coeff, cg * coeff, cl * coeff]
    return out


def _add_into(dst: Expansion, src: Expansion) -> None:
    for e, (cc, cg, cl) in src.items():
        cur = dst.setdefault(e, [Fraction(0)] * 3)
        cur[0] += cc
        cur[1] += cg
        cur[2] += cl


def _truncate(exp: Expansion, e_max: Fraction) -> Expansion:
    return {e: v for e, v in exp.items() if e <= e_max}


def _inverse_denominator_coeffs(factors: Iterable[tuple[int, int, int]],
                                order: int) -> tuple[Fraction, list[Fraction]]:
    """1/prod (a n + b)^m = n^(-deg) * (lead + sum_j d_j n^(-j)).

    Returns (deg, coefficient list d_0..d_order) with d_0 the leading
    1/prod a^m factor folded in.
    """
    deg = 0
    coeffs = [Fraction(1)] + [Fraction(0)] * order
    for a, b, m in factors:
        deg += m
        r = Fraction(b, a)
        # (1 + r/n)^(-m) = sum_j binom(-m, j) r^j n^(-j)
        fac = [Fraction(1)]
        binom_val = Fraction(1)
        for j in range(1, order + 1):
            binom_val = binom_val * Fraction(-m - j + 1, j)
            fac.append(binom_val * r**j)
        new = [Fraction(0)] * (order + 1)
        for i, ci in enumerate(coeffs):
            if ci == 0:
                continue
            for j in range(order + 1 - i):
                new[i + j] += ci * fac[j]
        scale = Fraction(1, a**m)
        coeffs = [c * scale for c in new]
    return deg, coeffs


def boundary_expansion(form: BoundaryForm, order: int) -> Expansion:
    """Asymptotic expansion of t_n * sqrt(pi) for a boundary term family.

    The overall 1/sqrt(pi) is left out (applied numerically by the caller)
    so every coefficient stays rational.
    """
    deg, dcoeffs = _inverse_denominator_coeffs(form.denom_factors, order)
    base: Expansion = {}
    # (central binomial ratio expansion) * (denominator expansion)
    for j, cj in enumerate(CBC_RATIO_COEFFS[:order + 1]):
        for i, di in enumerate(dcoeffs):
            if i + j > order or di == 0:
                continue
            e = Fraction(1, 2) + deg + i + j
            cur = base.setdefault(e, [Fraction(0)] * 3)
            cur[0] += cj * di * form.prefactor
    if form.weight is Weight.NONE:
        return base
    if form.weight not in (Weight.HARMONIC, Weight.HARMONIC_PREV):
        raise ValueError(f"unsupported boundary weight {form.weight}")
    out: Expansion = {}
    h = harmonic_expansion(order)
    for e, (cc, _, _) in base.items():
        # (ln n + gamma) * base
        cur = out.setdefault(e, [Fraction(0)] * 3)
        cur[1] += cc
        cur[2] += cc
        for k, hk in h.items():
            cur2 = out.setdefault(e + k, [Fraction(0)] * 3)
            cur2[0] += cc * hk
    if form.weight is Weight.HARMONIC_PREV:
        # H_{n-1} = H_n - 1/n
        for e, (cc, _, _) in base.items():
            cur = out.setdefault(e + 1, [Fraction(0)] * 3)
            cur[0] -= cc
    e_min = min(out)
    return _truncate(out, e_min + order)


def _tail_monomial_integral(e: mpfr, cc, cl, M: mpfr, logM: mpfr) -> mpfr:
    """integral_M^oo (cl ln x + cc) x^(-e) dx for e > 1."""
    em1 = e - 1
    return M**(-em1) * (cc / em1 + cl * (logM / em1 + 1 / (em1 * em1)))


def euler_maclaurin_tail(expansion: Expansion, M: int, ctx: PrecisionContext,
                         bernoulli_terms: int = 8) -> tuple[mpfr, mpfr]:
    """Sum_{n=M}^oo of the expanded term family, with a heuristic error term.

    Uses  sum_{n=M}^oo f(n) = int_M^oo f + f(M)/2
                              - sum_k B_2k/(2k)! f^(2k-1)(M) + R.
    """
    with ctx.guard(extra_bits=32):
        gamma = hpreal.const_gamma(ctx)
        sqrt_pi = gmpy2.sqrt(gmpy2.const_pi())
        Mf = mpfr(M)
        logM = gmpy2.log(Mf)
        # collapse gamma into the constant coefficient
        monomials = []  # (p, q, e): (p + q ln x) x^(-e)
        for e, (cc, cg, cl) in sorted(expansion.items()):
            p = hpreal.to_mpfr(cc, ctx) + hpreal.to_mpfr(cg, ctx) * gamma
            q = hpreal.to_mpfr(cl, ctx)
            monomials.append([p, q, hpreal.to_mpfr(e, ctx)])

        total = mpfr(0)
        # integral + f(M)/2, tracking the highest-order group for the estimate
        e_top = max(e for _, _, e in monomials)
        top_contrib = mpfr(0)
        for p, q, e in monomials:
            c = _tail_monomial_integral(e, p, q, Mf, logM)
            c += (p + q * logM) * Mf**(-e) / 2
            total += c
            if e == e_top:
                top_contrib += c

        # Bernoulli corrections on successive odd derivatives
        deriv = [list(m) for m in monomials]
        fact = mpfr(1)
        last_corr = mpfr(0)
        for k in range(1, bernoulli_terms + 1):
            # differentiate twice (from order 2k-2 to 2k-1 on first pass)
            steps = 1 if k == 1 else 2
            for _ in range(steps):
                deriv = [[q - e * p, -e * q, e + 1] for p, q, e in deriv]
            odd_order = 2 * k - 1
            fact = mpfr(1)
            for i in range(2, 2 * k + 1):
                fact *= i
            f_val = mpfr(0)
            for p, q, e in deriv:
                f_val += (p + q * logM) * Mf**(-e)
            b2k = hpreal.to_mpfr(bernoulli(2 * k), ctx)
            last_corr = b2k / fact * f_val
            total -= last_corr
        err = (abs(top_contrib) + abs(last_corr)) * 8
        return total / sqrt_pi, abs(err) / sqrt_pi


def cbc_ratio_asymptotic(n: int, k_terms: int, ctx: PrecisionContext = None) -> mpfr:
    """(1/sqrt(pi n)) * sum_{j<k_terms} c_j n^(-j), the leading behavior of
    binom(2n,n)/4^n."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= k_terms <= len(CBC_RATIO_COEFFS):
        raise ValueError(f"k_terms must be in 1..{len(CBC_RATIO_COEFFS)}")
    ctx = ctx or hpreal.DEFAULT_CONTEXT
    with ctx.guard():
        nf = mpfr(n)
        s = mpfr(0)
        for j in range(k_terms - 1, -1, -1):
            s = s / nf + hpreal.to_mpfr(CBC_RATIO_COEFFS[j], ctx)
        return s / gmpy2.sqrt(gmpy2.const_pi() * nf)
