"""Generating functions: closed-form evaluators paired with truncated-series
evaluators for cross-validation.

Every entry keeps its printed interval of validity and refuses arguments
outside it; the x = 1/4 boundary identities are never pushed through closed
forms containing 1/sqrt(1-4x) (they belong to the summation engine), with the
single exception of the integrated series, whose closed form stays finite on
the closed interval and degenerates to log 2 at the right endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from . import hpreal, special
from .errors import DomainError, MethodDisagreementError
from .hpreal import PrecisionContext, Real
from .series import Weight, real_x_series


class GenFunId(Enum):
    CBC = "CBC"                    # sum binom(2n,n) x^n
    CATALAN = "CATALAN"            # sum C_n x^n
    CBC_OVER_N = "CBC_OVER_N"      # sum binom(2n,n) x^n / n
    HARMONIC = "HARMONIC"          # sum H_n x^n
    ALT_HARMONIC = "ALT_HARMONIC"  # sum H'_n x^n
    ALT_H_OVER_N = "ALT_H_OVER_N"  # sum H'_n x^n / n
    HN_CBC_ALT = "HN_CBC_ALT"      # sum (-1)^(n+1) H_n binom(2n,n) x^n
    HN_CBC = "HN_CBC"              # sum H_n binom(2n,n) x^n
    HN_CBC_INT = "HN_CBC_INT"      # sum H_n binom(2n,n) x^(n+1)/(n+1)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def __str__(self) -> str:
        def fmt(q):
            return str(float(q))
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{fmt(self.lo)}, {fmt(self.hi)}{right}"


_QUARTER = Fraction(1, 4)
VALIDITY: dict[GenFunId, Interval] = {
    GenFunId.CBC: Interval(-_QUARTER, _QUARTER),
    GenFunId.CATALAN: Interval(-_QUARTER, _QUARTER),
    GenFunId.CBC_OVER_N: Interval(-_QUARTER, _QUARTER),
    GenFunId.HARMONIC: Interval(Fraction(-1), Fraction(1)),
    GenFunId.ALT_HARMONIC: Interval(Fraction(-1), Fraction(1)),
    GenFunId.ALT_H_OVER_N: Interval(Fraction(-1), Fraction(1), lo_closed=True),
    GenFunId.HN_CBC_ALT: Interval(-_QUARTER, _QUARTER),
    GenFunId.HN_CBC: Interval(-_QUARTER, _QUARTER),
    GenFunId.HN_CBC_INT: Interval(-_QUARTER, _QUARTER,
                                  lo_closed=True, hi_closed=True),
}


def _check_domain(gid: GenFunId, x) -> None:
    iv = VALIDITY[gid]
    if not iv.contains(x):
        raise DomainError(
            f"{gid.value} is only valid for x in {iv}; got x = {float(x)}")


def validity_interval(gid: GenFunId) -> Interval:
    return VALIDITY[gid]


def _alt_h_over_n_form_a(x: mpfr, ctx: PrecisionContext) -> mpfr:
    li_half = special.dilog(Fraction(1, 2), ctx)
    if x == -1:
        # the log((1-x)/2) log(1+x) product vanishes in the limit x -> -1
        return li_half - special.dilog(1, ctx)
    return (li_half - special.dilog(-x, ctx)
            - special.dilog((1 + x) / 2, ctx)
            - gmpy2.log((1 - x) / 2) * gmpy2.log(1 + x))


def _alt_h_over_n_form_b(x: mpfr, ctx: PrecisionContext) -> mpfr:
    return (special.dilog((1 - x) / 2, ctx)
            - special.dilog(Fraction(1, 2), ctx)
            - special.dilog(-x, ctx)
            - gmpy2.log(1 - x) * hpreal.const_log2(ctx))


def closed_form(gid: GenFunId, x: Real, ctx: PrecisionContext) -> mpfr:
    """Evaluate the printed closed form of the generating function at x."""
    with ctx.guard():
        v = hpreal.to_mpfr(x, ctx)
        _check_domain(gid, v)
        if gid is GenFunId.CBC:
            return 1 / gmpy2.sqrt(1 - 4 * v)
        if gid is GenFunId.CATALAN:
            if v == 0:
                return mpfr(1)
            return (1 - gmpy2.sqrt(1 - 4 * v)) / (2 * v)
        if gid is GenFunId.CBC_OVER_N:
            if v == 0:
                return mpfr(0)
            return 2 * gmpy2.log((1 - gmpy2.sqrt(1 - 4 * v)) / (2 * v))
        if gid is GenFunId.HARMONIC:
            return -gmpy2.log(1 - v) / (1 - v)
        if gid is GenFunId.ALT_HARMONIC:
            return gmpy2.log(1 + v) / (1 - v)
        if gid is GenFunId.ALT_H_OVER_N:
            a = _alt_h_over_n_form_a(v, ctx)
            b = _alt_h_over_n_form_b(v, ctx)
            agree = hpreal.digits_agreement(a, b, ctx)
            if agree < ctx.working_digits - 6:
                raise MethodDisagreementError(
                    f"the two printed forms disagree at x = {v}: "
                    f"only {agree} digits in common")
            return a
        if gid is GenFunId.HN_CBC_ALT:
            s = gmpy2.sqrt(1 + 4 * v)
            return 2 / s * gmpy2.log(2 * s / (1 + s))
        if gid is GenFunId.HN_CBC:
            s = gmpy2.sqrt(1 - 4 * v)
            return 2 / s * gmpy2.log((1 + s) / (2 * s))
        if gid is GenFunId.HN_CBC_INT:
            s = gmpy2.sqrt(1 - 4 * v)
            log2 = hpreal.const_log2(ctx)
            if s == 0:
                return log2  # analytic limit: both s-dependent terms vanish
            return (s * gmpy2.log(2 * s) - (1 + s) * gmpy2.log(1 + s) + log2)
        raise DomainError(f"unknown generating function {gid!r}")


def _structured(gid: GenFunId, v: mpfr):
    # built inside an active guarded gmpy2 context
    if gid is GenFunId.CBC:
        return real_x_series(v, True, (), 0)
    if gid is GenFunId.CATALAN:
        return real_x_series(v, True, ((1, 1, 1),), 0)
    if gid is GenFunId.CBC_OVER_N:
        return real_x_series(v, True, ((1, 0, 1),), 1)
    if gid is GenFunId.HARMONIC:
        return real_x_series(v, False, (), 1, weight=Weight.HARMONIC)
    if gid is GenFunId.ALT_HARMONIC:
        return real_x_series(v, False, (), 1, weight=Weight.ALT_HARMONIC)
    if gid is GenFunId.ALT_H_OVER_N:
        return real_x_series(v, False, ((1, 0, 1),), 1,
                             weight=Weight.ALT_HARMONIC)
    if gid is GenFunId.HN_CBC_ALT:
        return real_x_series(-v, True, (), 1, weight=Weight.HARMONIC, sign=-1)
    if gid is GenFunId.HN_CBC:
        return real_x_series(v, True, (), 1, weight=Weight.HARMONIC)
    if gid is GenFunId.HN_CBC_INT:
        return real_x_series(v, True, ((1, 1, 1),), 1, weight=Weight.HARMONIC)
    raise DomainError(f"unknown generating function {gid!r}")


def series_partial(gid: GenFunId, x: Real, N: int, ctx: PrecisionContext) -> mpfr:
    """Sum of the first N terms of the defining power series at x.

    Coefficients are generated exactly; only the running products are rounded.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    with ctx.guard():
        v = hpreal.to_mpfr(x, ctx)
        _check_domain(gid, v)
        st = _structured(gid, v)
        s, _ = st.partial_sum(N, ctx)
        if gid is GenFunId.HN_CBC_INT:
            s = s * v  # the printed series carries x^(n+1)
        return s
