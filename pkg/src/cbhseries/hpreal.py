"""Configurable-precision real arithmetic and the transcendental constants.

Values are ``gmpy2.mpfr`` numbers (MPFR under the hood, so every elementary
operation is correctly rounded).  Precision is decimal-digit based because all
verification targets are stated in significant decimal digits; a
:class:`PrecisionContext` fixes the working digits plus guard digits and every
computation runs at ``working_digits + guard_digits`` (converted to bits).

Constants come from MPFR's provably-bounded algorithms; the test suite
cross-checks each one against an independent series oracle.  Domain errors are
always raised explicitly -- no silent NaN ever escapes this module.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import DomainError

HPReal = mpfr
Real = Union[mpfr, Fraction, int, float, str]

_LOG2_10 = math.log2(10)


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision plus guard digits."""

    working_digits: int = 64
    guard_digits: int = 10

    def __post_init__(self):
        if self.working_digits < 32:
            raise ValueError("working_digits must be at least 32")
        if self.guard_digits < 1:
            raise ValueError("guard_digits must be positive")

    @property
    def total_digits(self) -> int:
        return self.working_digits + self.guard_digits

    @property
    def prec_bits(self) -> int:
        return int(self.total_digits * _LOG2_10) + 8

    @contextmanager
    def guard(self, extra_bits: int = 0):
        """Activate a gmpy2 context at the guarded precision."""
        with gmpy2.context(precision=self.prec_bits + extra_bits):
            yield

    def eps(self) -> mpfr:
        """10^(-working_digits), the nominal accuracy of results."""
        with self.guard():
            return mpfr(10) ** (-self.working_digits)


DEFAULT_CONTEXT = PrecisionContext()


def to_mpfr(x: Real, ctx: PrecisionContext) -> mpfr:
    """Convert ints, Fractions, floats or decimal strings at ctx precision."""
    with ctx.guard():
        if isinstance(x, Fraction):
            return mpfr(mpq(x.numerator, x.denominator))
        return mpfr(x)


def from_rational(q: Fraction, ctx: PrecisionContext) -> mpfr:
    """Round an exact rational to the context's precision."""
    return to_mpfr(Fraction(q), ctx)


def add(a: mpfr, b: mpfr, ctx: PrecisionContext) -> mpfr:
    with ctx.guard():
        return a + b


def sub(a: mpfr, b: mpfr, ctx: PrecisionContext) -> mpfr:
    with ctx.guard():
        return a - b


def mul(a: mpfr, b: mpfr, ctx: PrecisionContext) -> mpfr:
    with ctx.guard():
        return a * b


def div(a: mpfr, b: mpfr, ctx: PrecisionContext) -> mpfr:
    if b == 0:
        raise DomainError("division by zero")
    with ctx.guard():
        return a / b


def sqrt(x: Real, ctx: PrecisionContext) -> mpfr:
    v = to_mpfr(x, ctx)
    if v < 0:
        raise DomainError(f"sqrt of negative value {v}")
    with ctx.guard():
        return gmpy2.sqrt(v)


def exp(x: Real, ctx: PrecisionContext) -> mpfr:
    with ctx.guard():
        return gmpy2.exp(to_mpfr(x, ctx))


def log(x: Real, ctx: PrecisionContext) -> mpfr:
    v = to_mpfr(x, ctx)
    if v <= 0:
        raise DomainError(f"log of non-positive value {v}")
    with ctx.guard():
        return gmpy2.log(v)


def atan(x: Real, ctx: PrecisionContext) -> mpfr:
    with ctx.guard():
        return gmpy2.atan(to_mpfr(x, ctx))


@lru_cache(maxsize=None)
def _const(name: str, bits: int) -> mpfr:
    with gmpy2.context(precision=bits):
        if name == "pi":
            return gmpy2.const_pi()
        if name == "log2":
            return gmpy2.const_log2()
        if name == "log3":
            return gmpy2.log(mpfr(3))
        if name == "gamma":
            return gmpy2.const_euler()
        if name == "zeta2":
            return gmpy2.const_pi() ** 2 / 6
        if name == "catalan":
            return gmpy2.const_catalan()
        raise KeyError(name)


def const_pi(ctx: PrecisionContext) -> mpfr:
    return _const("pi", ctx.prec_bits)


def const_log2(ctx: PrecisionContext) -> mpfr:
    return _const("log2", ctx.prec_bits)


def const_log3(ctx: PrecisionContext) -> mpfr:
    return _const("log3", ctx.prec_bits)


def const_gamma(ctx: PrecisionContext) -> mpfr:
    """Euler-Mascheroni constant (needed by tail asymptotics of H_n)."""
    return _const("gamma", ctx.prec_bits)


def const_zeta2(ctx: PrecisionContext) -> mpfr:
    return _const("zeta2", ctx.prec_bits)


def const_catalan(ctx: PrecisionContext) -> mpfr:
    return _const("catalan", ctx.prec_bits)


def format_significant(x: mpfr, digits: int) -> str:
    """Decimal string with exactly `digits` significant digits.

    Plain positional notation is used when the exponent is moderate,
    scientific notation otherwise.  Deterministic for a given (value, digits)
    pair, which keeps machine-readable reports stable.
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    if gmpy2.is_nan(x):
        return "nan"
    if x == 0:
        return "0." + "0" * (digits - 1)
    mant, exp10, _ = x.digits(10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    # x = 0.mant * 10^exp10
    if -3 < exp10 <= digits:
        if exp10 <= 0:
            body = "0." + "0" * (-exp10) + mant
        elif exp10 >= len(mant):
            body = mant  # exp10 == len(mant) here since exp10 <= digits
        else:
            body = mant[:exp10] + "." + mant[exp10:]
        return sign + body
    return f"{sign}{mant[0]}.{mant[1:]}e{exp10 - 1:+d}"


def digits_agreement(a: mpfr, b: mpfr, ctx: PrecisionContext) -> int:
    """Number of significant decimal digits to which a and b agree."""
    with ctx.guard():
        diff = abs(a - b)
        if diff == 0:
            return ctx.working_digits
        scale = max(abs(b), abs(a), mpfr(1))
        rel = diff / scale
        d = int(gmpy2.floor(-gmpy2.log10(rel)))
        return max(0, min(ctx.working_digits, d))
