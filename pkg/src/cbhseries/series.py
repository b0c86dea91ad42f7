"""Series descriptions consumed by the summation engine.

A :class:`StructuredTerms` describes a term family t_n = u_n * w_n where u is
hypergeometric (the consecutive ratio u_{n+1}/u_n is a fixed rational function
of n, optionally times a real factor) and w is an optional running harmonic
weight.  Every series in the catalog and every generating-function expansion
fits this mold, which is what lets the hot loop run inside one kernel.

The declared decay class selects the summation method; it is metadata supplied
by the catalog, never inferred.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Callable, Iterator, Optional, Union

from gmpy2 import mpfr, mpq

from . import hpreal, kernels
from .hpreal import PrecisionContext


class Weight(IntEnum):
    NONE = kernels.W_NONE
    HARMONIC = kernels.W_HARMONIC
    ALT_HARMONIC = kernels.W_ALT_HARMONIC
    HARMONIC_PREV = kernels.W_HARMONIC_PREV


@dataclass(frozen=True)
class Geometric:
    """|t_{n+1}/t_n| eventually <= ratio < 1."""
    ratio: Fraction

    def label(self) -> str:
        return f"GEOMETRIC(ratio={self.ratio})"


@dataclass(frozen=True)
class AlternatingGeometric:
    ratio: Fraction

    def label(self) -> str:
        return f"ALTERNATING_GEOMETRIC(ratio={self.ratio})"


@dataclass(frozen=True)
class Algebraic:
    """t_n ~ C log^p(n) / n^s with s > 1."""
    exponent: Fraction
    log_power: int = 0

    def label(self) -> str:
        return f"ALGEBRAIC(s={self.exponent}, log_power={self.log_power})"


@dataclass(frozen=True)
class AlternatingAlgebraic:
    """Alternating terms with |t_n| ~ C log^p(n) / n^s (any s > 0)."""
    exponent: Fraction
    log_power: int = 0

    def label(self) -> str:
        return f"ALTERNATING_ALGEBRAIC(s={self.exponent}, log_power={self.log_power})"


DecayClass = Union[Geometric, AlternatingGeometric, Algebraic, AlternatingAlgebraic]


@dataclass(frozen=True)
class BoundaryForm:
    """Exact shape t_n = prefactor * W_n * binom(2n,n)/4^n / prod (a n + b)^m.

    This is what the Euler-Maclaurin tail machinery consumes; the factors are
    the literal denominator of the printed series.
    """

    weight: Weight
    denom_factors: tuple[tuple[int, int, int], ...]  # (a, b, multiplicity)
    prefactor: Fraction = Fraction(1)


@dataclass(frozen=True)
class StructuredTerms:
    n0: int
    u0: Union[Fraction, mpfr]
    pcoeffs: tuple[int, ...]
    qcoeffs: tuple[int, ...]
    weight: Weight = Weight.NONE
    w0: Fraction = Fraction(0)
    xfac: Union[Fraction, mpfr, None] = None  # extra per-step real factor

    def initial_state(self, ctx: PrecisionContext) -> tuple[mpfr, mpfr, object]:
        u = hpreal.to_mpfr(self.u0, ctx) if not isinstance(self.u0, mpfr) else self.u0
        w = hpreal.to_mpfr(self.w0, ctx)
        x = self.xfac
        if isinstance(x, Fraction):
            x = hpreal.to_mpfr(x, ctx)
        return u, w, x

    def partial_sum(self, count: int, ctx: PrecisionContext,
                    state=None) -> tuple[mpfr, tuple]:
        """Sum `count` terms from the start (or from a saved state).

        Returns (partial_sum_increment, state); state is (n_next, u, w, xfac).
        """
        with ctx.guard():
            if state is None:
                u, w, x = self.initial_state(ctx)
                n = self.n0
            else:
                n, u, w, x = state
            s, u, w = kernels.weighted_partial_sum(
                list(self.pcoeffs), list(self.qcoeffs), x, u, w,
                int(self.weight), n, count)
            return s, (n + count, u, w, x)

    def terms(self, ctx: PrecisionContext, limit: Optional[int] = None
              ) -> Iterator[tuple[int, mpfr]]:
        """Yield (n, t_n) one term at a time (used by the extrapolators)."""
        with ctx.guard():
            u, w, x = self.initial_state(ctx)
            n = self.n0
            produced = 0
            while limit is None or produced < limit:
                t, u, w = kernels.weighted_partial_sum(
                    list(self.pcoeffs), list(self.qcoeffs), x, u, w,
                    int(self.weight), n, 1)
                yield n, t
                n += 1
                produced += 1


@dataclass(frozen=True)
class SeriesSpec:
    """A summable series: structured terms plus declared decay behavior."""

    structured: StructuredTerms
    decay: DecayClass
    boundary_form: Optional[BoundaryForm] = None
    term_fn: Optional[Callable[[int], Fraction]] = None  # exact oracle, if any

    @property
    def start_index(self) -> int:
        return self.structured.n0


# ---------------------------------------------------------------------------
# construction helpers

def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_from_factors(factors, shift: int = 0) -> list[int]:
    """prod (a (n+shift) + b)^m as coefficients in n."""
    out = [1]
    for a, b, m in factors:
        lin = [a * shift + b, a]
        for _ in range(m):
            out = _poly_mul(out, lin)
    return out


def _poly_eval(coeffs: list[int], n: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * n + c
    return v


def _scale(coeffs: list[int], k: int) -> list[int]:
    return [k * c for c in coeffs]


def _weight_value(weight: Weight, n: int) -> Fraction:
    from . import exact
    if weight is Weight.NONE:
        return Fraction(1)
    if weight is Weight.HARMONIC:
        return exact.harmonic(n)
    if weight is Weight.ALT_HARMONIC:
        return exact.alt_harmonic(n)
    return exact.harmonic(n - 1)


def binomial_series(x: Fraction, denom_factors, n0: int,
                    weight: Weight = Weight.NONE,
                    num_factors=(), prefactor: Fraction = Fraction(1)
                    ) -> StructuredTerms:
    """t_n = prefactor * W_n * binom(2n,n)/4^n * x^n * N(n)/D(n).

    N and D are given as ((a, b, multiplicity), ...) factor lists for
    prod (a n + b)^multiplicity.
    """
    from . import exact
    x = Fraction(x)
    dn = _poly_from_factors(denom_factors)
    dn1 = _poly_from_factors(denom_factors, shift=1)
    nn = _poly_from_factors(num_factors)
    nn1 = _poly_from_factors(num_factors, shift=1)
    # ratio: x * (2n+1)/(2(n+1)) * N(n+1) D(n) / (N(n) D(n+1))
    p = _poly_mul([1, 2], _poly_mul(nn1, dn))
    q = _poly_mul([2, 2], _poly_mul(nn, dn1))
    p = _scale(p, x.numerator)
    q = _scale(q, x.denominator)
    b0 = Fraction(exact.central_binomial(n0), 4**n0)
    u0 = prefactor * b0 * x**n0 * Fraction(_poly_eval(nn, n0), _poly_eval(dn, n0))
    return StructuredTerms(n0=n0, u0=u0, pcoeffs=tuple(p), qcoeffs=tuple(q),
                           weight=weight, w0=_weight_value(weight, n0))


def power_series(x: Fraction, denom_factors, n0: int,
                 weight: Weight = Weight.NONE,
                 num_factors=(), prefactor: Fraction = Fraction(1)
                 ) -> StructuredTerms:
    """t_n = prefactor * W_n * x^n * N(n)/D(n)."""
    x = Fraction(x)
    dn = _poly_from_factors(denom_factors)
    dn1 = _poly_from_factors(denom_factors, shift=1)
    nn = _poly_from_factors(num_factors)
    nn1 = _poly_from_factors(num_factors, shift=1)
    p = _scale(_poly_mul(nn1, dn), x.numerator)
    q = _scale(_poly_mul(nn, dn1), x.denominator)
    u0 = prefactor * x**n0 * Fraction(_poly_eval(nn, n0), _poly_eval(dn, n0))
    return StructuredTerms(n0=n0, u0=u0, pcoeffs=tuple(p), qcoeffs=tuple(q),
                           weight=weight, w0=_weight_value(weight, n0))


def real_x_series(x: mpfr, one_over_four: bool, denom_factors, n0: int,
                  weight: Weight = Weight.NONE, num_factors=(),
                  sign: int = 1) -> StructuredTerms:
    """Like the rational builders but with a real expansion point x.

    one_over_four selects the central-binomial family (the per-step ratio
    then carries (2n+1)/(2(n+1)) times 4x folded into xfac as x itself,
    i.e. u_n = binom(2n,n) x^n * N/D).
    """
    from . import exact
    dn = _poly_from_factors(denom_factors)
    dn1 = _poly_from_factors(denom_factors, shift=1)
    nn = _poly_from_factors(num_factors)
    nn1 = _poly_from_factors(num_factors, shift=1)
    if one_over_four:
        p = _poly_mul([2, 4], _poly_mul(nn1, dn))  # 2(2n+1)
        q = _poly_mul([1, 1], _poly_mul(nn, dn1))  # (n+1)
        base0 = Fraction(exact.central_binomial(n0))
    else:
        p = _poly_mul(nn1, dn)
        q = _poly_mul(nn, dn1)
        base0 = Fraction(1)
    frac = sign * base0 * Fraction(_poly_eval(nn, n0), _poly_eval(dn, n0))
    # runs in the caller's active gmpy2 context
    u0 = x**n0 * mpfr(mpq(frac.numerator, frac.denominator))
    return StructuredTerms(n0=n0, u0=u0, pcoeffs=tuple(p), qcoeffs=tuple(q),
                           weight=weight, w0=_weight_value(weight, n0), xfac=x)
