"""Machine-readable catalog of the series identities under verification.

Each :class:`Identity` binds a left-hand series (a :class:`SeriesSpec` the
engine can sum) to a right-hand closed form built from the constants and
special functions in this package.  The two open sums carry no closed form;
they are evaluated and reported with a digit-stability check instead.

Identity ids are frozen strings: the JSON report schema keys on them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from gmpy2 import mpfr

from . import hpreal, special
from .accel import engine
from .errors import BudgetExceededError, CbhError, UnknownIdentityError
from .hpreal import PrecisionContext
from .series import (Algebraic, AlternatingAlgebraic, AlternatingGeometric,
                     BoundaryForm, Geometric, SeriesSpec, Weight,
                     binomial_series, power_series)

ClosedForm = Callable[[PrecisionContext], mpfr]


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    series: SeriesSpec
    closed_form: Optional[ClosedForm]
    paper_ref: str
    validity_notes: str = ""
    closed_form_alt: Optional[ClosedForm] = None  # second printed form, if any

    @property
    def convergence_class(self):
        return self.series.decay

    @property
    def has_closed_form(self) -> bool:
        return self.closed_form is not None


@dataclass(frozen=True)
class VerificationReport:
    id: str
    lhs_value: str
    rhs_value: str
    abs_diff: str
    rel_diff: str
    digits_verified: int
    terms_used: int
    elapsed_ms: float
    status: str
    # numeric companions for programmatic use; not part of the wire schema
    lhs_num: Optional[mpfr] = field(default=None, repr=False, compare=False)
    rhs_num: Optional[mpfr] = field(default=None, repr=False, compare=False)
    sum_result: Optional[engine.SumResult] = field(default=None, repr=False,
                                                   compare=False)
    error: str = field(default="", repr=False, compare=False)

    SCHEMA = ("id", "lhs_value", "rhs_value", "abs_diff", "rel_diff",
              "digits_verified", "terms_used", "elapsed_ms", "status")

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.SCHEMA}


# ---------------------------------------------------------------------------
# closed-form building blocks

def _pi2(ctx):  # pi^2
    pi = hpreal.const_pi(ctx)
    return pi * pi


def _log2sq(ctx):
    l2 = hpreal.const_log2(ctx)
    return l2 * l2


def _log3sq(ctx):
    l3 = hpreal.const_log3(ctx)
    return l3 * l3


def _make_inventory() -> list[Identity]:
    F = Fraction
    items: list[Identity] = []

    def add(id, description, structured, decay, closed_form, paper_ref,
            boundary=None, alt=None, notes=""):
        items.append(Identity(
            id=id, description=description,
            series=SeriesSpec(structured=structured, decay=decay,
                              boundary_form=boundary),
            closed_form=closed_form, closed_form_alt=alt,
            paper_ref=paper_ref, validity_notes=notes))

    N_ = lambda *f: tuple(f)  # factor lists: (a, b, multiplicity)

    # --- alternating partial-sum family -----------------------------------
    add("E1E", "sum (-1)^(n+1) H'_n/(n+1)",
        power_series(F(-1), N_((1, 1, 1)), 1, Weight.ALT_HARMONIC,
                     prefactor=F(-1)),
        AlternatingAlgebraic(F(1)),
        lambda ctx: _pi2(ctx) / 12 - _log2sq(ctx) / 2,
        "eq. (1e)")
    add("E1G", "sum (-1)^(n+1) H'_n/n",
        power_series(F(-1), N_((1, 0, 1)), 1, Weight.ALT_HARMONIC,
                     prefactor=F(-1)),
        AlternatingAlgebraic(F(1)),
        lambda ctx: _pi2(ctx) / 12 + _log2sq(ctx) / 2,
        "eq. (1g)")
    add("AH1", "sum (-1)^(n+1) H'_n/(n(n+1))",
        power_series(F(-1), N_((1, 0, 1), (1, 1, 1)), 1, Weight.ALT_HARMONIC,
                     prefactor=F(-1)),
        AlternatingAlgebraic(F(2)),
        _log2sq,
        "display after (1g)")
    add("AH2", "sum (-1)^(n+1) (2n+1) H'_n/(n(n+1))",
        power_series(F(-1), N_((1, 0, 1), (1, 1, 1)), 1, Weight.ALT_HARMONIC,
                     num_factors=N_((2, 1, 1)), prefactor=F(-1)),
        AlternatingAlgebraic(F(1)),
        lambda ctx: _pi2(ctx) / 6,
        "display after (1g)")
    add("E1H", "sum H'_n/(n 2^n)",
        power_series(F(1, 2), N_((1, 0, 1)), 1, Weight.ALT_HARMONIC),
        Geometric(F(3, 5)),
        lambda ctx: special.dilog(F(1, 4), ctx) / 2 + _log2sq(ctx),
        "eq. (1h)",
        alt=lambda ctx: (-special.dilog(F(1, 9), ctx) / 6 + _pi2(ctx) / 36
                         - _log3sq(ctx) / 3
                         + hpreal.const_log2(ctx) * hpreal.const_log3(ctx)))
    add("E1I", "sum H'_n/((n+1) 2^(n+1))",
        power_series(F(1, 2), N_((1, 1, 1)), 1, Weight.ALT_HARMONIC,
                     prefactor=F(1, 2)),
        Geometric(F(2, 3)),
        lambda ctx: (-special.dilog(F(1, 9), ctx) / 3 - _pi2(ctx) / 36
                     - _log2sq(ctx) / 2 - 2 * _log3sq(ctx) / 3
                     + 2 * hpreal.const_log2(ctx) * hpreal.const_log3(ctx)),
        "eq. (1i)")
    add("E1J", "sum (3n+4) H'_n/(n(n+1) 2^n)",
        power_series(F(1, 2), N_((1, 0, 1), (1, 1, 1)), 1, Weight.ALT_HARMONIC,
                     num_factors=N_((3, 4, 1))),
        Geometric(F(2, 3)),
        # (3n+4)/(n(n+1)) = 4/n - 1/(n+1), so this is 4*(1h) - 2*(1i); the
        # dilogarithms cancel leaving pi^2/6 + log^2 2 (twice the (1g) sum)
        lambda ctx: _pi2(ctx) / 6 + _log2sq(ctx),
        "eq. (1j)")

    # --- x = 1/4 boundary family (central binomial over 4^n) ---------------
    def boundary(id, description, denom, weight, decay, closed_form, ref,
                 n0=None, alt=None):
        if n0 is None:
            if weight is Weight.HARMONIC_PREV:
                n0 = 2  # the n=1 term vanishes (H_0 = 0)
            elif weight is not Weight.NONE:
                n0 = 1
            else:
                # start at 0 unless the printed denominator vanishes there
                n0 = 1 if any(b == 0 for _, b, _ in denom) else 0
        add(id, description,
            binomial_series(F(1), denom, n0, weight),
            decay, closed_form, ref,
            boundary=BoundaryForm(weight=weight, denom_factors=denom),
            alt=alt)

    boundary("EQ5", "sum H_n binom(2n,n)/((n+1) 4^n)",
             N_((1, 1, 1)), Weight.HARMONIC, Algebraic(F(3, 2), 1),
             lambda ctx: 4 * hpreal.const_log2(ctx), "eq. (5)")
    boundary("EQ6", "sum binom(2n,n)/((n+1)^2 4^n)",
             N_((1, 1, 2)), Weight.NONE, Algebraic(F(5, 2)),
             lambda ctx: 4 - 4 * hpreal.const_log2(ctx), "eq. (6)")
    boundary("EQ7", "sum H_n binom(2n,n)/((2n-1) 4^n)",
             N_((2, -1, 1)), Weight.HARMONIC, Algebraic(F(3, 2), 1),
             lambda ctx: hpreal.to_mpfr(2, ctx), "eq. (7)")
    add("EQ8", "sum (-1)^(n+1) H_n binom(2n,n)/((n+1) 16^n)",
        binomial_series(F(-1, 4), N_((1, 1, 1)), 1, Weight.HARMONIC,
                        prefactor=F(-1)),
        AlternatingGeometric(F(1, 4)),
        lambda ctx: (16 * hpreal.log(4 * hpreal.sqrt(5, ctx) - 8, ctx)
                     + 8 * hpreal.sqrt(5, ctx)
                     * hpreal.log(10 - 4 * hpreal.sqrt(5, ctx), ctx)),
        "eq. (8)")
    add("EQ9", "sum (-1)^(n+1) H_n binom(2n,n)/((2n-1) 16^n)",
        binomial_series(F(-1, 4), N_((2, -1, 1)), 1, Weight.HARMONIC,
                        prefactor=F(-1)),
        AlternatingGeometric(F(1, 4)),
        lambda ctx: (hpreal.sqrt(5, ctx) - 2 + hpreal.sqrt(5, ctx)
                     * hpreal.log(1 / hpreal.sqrt(5, ctx) + Fraction(1, 2), ctx)),
        "eq. (9)")
    boundary("ED2", "sum binom(2n,n)/((2n+1)^2 4^n)",
             N_((2, 1, 2)), Weight.NONE, Algebraic(F(5, 2)),
             lambda ctx: hpreal.const_pi(ctx) * hpreal.const_log2(ctx) / 2,
             "section 2.2")
    add("ED3", "sum binom(2n,n)/((2n+1)^2 8^n)",
        binomial_series(F(1, 2), N_((2, 1, 2)), 0),
        Geometric(F(1, 2)),
        lambda ctx: hpreal.sqrt(2, ctx)
        * (hpreal.const_pi(ctx) * hpreal.const_log2(ctx) / 8
           + hpreal.const_catalan(ctx) / 2),
        "section 2.2")
    boundary("EQ10", "sum H_n binom(2n,n)/(n 4^n)",
             N_((1, 0, 1)), Weight.HARMONIC, Algebraic(F(3, 2), 1),
             lambda ctx: _pi2(ctx) / 3, "eq. (10)")
    boundary("EQ11", "sum H_n binom(2n,n)/(n(n+1) 4^n)",
             N_((1, 0, 1), (1, 1, 1)), Weight.HARMONIC, Algebraic(F(5, 2), 1),
             lambda ctx: _pi2(ctx) / 3 - 4 * hpreal.const_log2(ctx),
             "eq. (11)")
    boundary("EQ12", "sum binom(2n,n)/(n^2 4^n)",
             N_((1, 0, 2)), Weight.NONE, Algebraic(F(5, 2)),
             lambda ctx: hpreal.const_zeta2(ctx) - 2 * _log2sq(ctx),
             "eq. (12)")
    boundary("EQ13", "sum (1/2)_n H_(n-1)/(n n!)",
             N_((1, 0, 1)), Weight.HARMONIC_PREV, Algebraic(F(3, 2), 1),
             lambda ctx: hpreal.const_zeta2(ctx) + 2 * _log2sq(ctx),
             "eq. (13)")
    boundary("EQ14", "sum binom(2n,n)/((n+1)^3 4^n)",
             N_((1, 1, 3)), Weight.NONE, Algebraic(F(7, 2)),
             lambda ctx: (8 - 8 * hpreal.const_log2(ctx) - _pi2(ctx) / 3
                          + 4 * _log2sq(ctx)), "eq. (14)")
    boundary("EQ15", "sum H_n binom(2n,n)/((n+1)^2 4^n)",
             N_((1, 1, 2)), Weight.HARMONIC, Algebraic(F(5, 2), 1),
             lambda ctx: (-_pi2(ctx) / 3 - 4 * _log2sq(ctx)
                          + 8 * hpreal.const_log2(ctx)), "eq. (15)")
    boundary("EQ16", "sum H_n binom(2n,n)/(n(n+1)^2 4^n)",
             N_((1, 0, 1), (1, 1, 2)), Weight.HARMONIC, Algebraic(F(7, 2), 1),
             lambda ctx: (2 * _pi2(ctx) / 3 + 4 * _log2sq(ctx)
                          - 12 * hpreal.const_log2(ctx)), "eq. (16)")
    boundary("EQ17", "sum H_n binom(2n,n)/((2n+1) 4^n)",
             N_((2, 1, 1)), Weight.HARMONIC, Algebraic(F(3, 2), 1),
             lambda ctx: (4 * hpreal.const_catalan(ctx)
                          - hpreal.const_pi(ctx) * hpreal.const_log2(ctx)),
             "eq. (17)")
    boundary("ARC", "sum binom(2n,n)/((2n+1) 4^n)",
             N_((2, 1, 1)), Weight.NONE, Algebraic(F(3, 2)),
             lambda ctx: hpreal.const_pi(ctx) / 2, "section 3 (arcsin series)")
    boundary("EQ18", "sum binom(2n,n)/((2n+1)(n+1)^2 4^n)",
             N_((2, 1, 1), (1, 1, 2)), Weight.NONE, Algebraic(F(7, 2)),
             lambda ctx: (2 * hpreal.const_pi(ctx)
                          + 4 * hpreal.const_log2(ctx) - 8), "eq. (18)")
    boundary("EQ19", "sum H_n binom(2n,n)/((2n-1)^2 4^n)",
             N_((2, -1, 2)), Weight.HARMONIC, Algebraic(F(5, 2), 1),
             lambda ctx: (hpreal.const_pi(ctx) * (1 - hpreal.const_log2(ctx))
                          - 4 * (1 - hpreal.const_catalan(ctx))), "eq. (19)")
    add("EQ20", "sum 2^n H_n binom(2n,n)/(n 9^n)",
        binomial_series(F(8, 9), N_((1, 0, 1)), 1, Weight.HARMONIC),
        Geometric(F(8, 9)),
        lambda ctx: _pi2(ctx) / 6 - _log2sq(ctx), "eq. (20)")
    add("EQ22", "sum 3^n H_n binom(2n,n)/(n 16^n)",
        binomial_series(F(3, 4), N_((1, 0, 1)), 1, Weight.HARMONIC),
        Geometric(F(3, 4)),
        lambda ctx: 2 * special.dilog(Fraction(1, 3), ctx), "eq. (22)",
        alt=lambda ctx: (special.dilog(Fraction(1, 9), ctx) / 3
                         + _pi2(ctx) / 9 - _log3sq(ctx) / 3))
    boundary("OS1", "sum H_n binom(2n,n)/(n^2 4^n)",
             N_((1, 0, 2)), Weight.HARMONIC, Algebraic(F(5, 2), 1),
             None, "concluding remarks (open)")
    boundary("OS2", "sum H_n binom(2n,n)/((2n+1)^2 4^n)",
             N_((2, 1, 2)), Weight.HARMONIC, Algebraic(F(5, 2), 1),
             None, "concluding remarks (open)")
    return items


_INVENTORY: Optional[list[Identity]] = None
_INDEX: dict[str, Identity] = {}


def inventory() -> list[Identity]:
    """All catalog identities, in frozen (report) order."""
    global _INVENTORY
    if _INVENTORY is None:
        _INVENTORY = _make_inventory()
        _INDEX.update({ident.id: ident for ident in _INVENTORY})
    return list(_INVENTORY)


def get(identity_id: str) -> Identity:
    inventory()
    try:
        return _INDEX[identity_id]
    except KeyError:
        raise UnknownIdentityError(identity_id) from None


def identity_ids() -> list[str]:
    return [ident.id for ident in inventory()]


def _stable_digits(ident: Identity, target: int, ctx: PrecisionContext,
                   term_budget: int, boundary_method: str
                   ) -> tuple[engine.SumResult, int]:
    """Evaluate an open sum at two precisions; count agreeing digits."""
    res = engine.summate(ident.series, target, ctx, term_budget,
                         boundary_method)
    hi_ctx = PrecisionContext(ctx.working_digits + 32, ctx.guard_digits)
    hi = engine.summate(ident.series, target + 16, hi_ctx, term_budget,
                        boundary_method)
    return res, hpreal.digits_agreement(res.value, hi.value, ctx)


def verify(identity_id: str, requested_digits: int, ctx: PrecisionContext,
           term_budget: int = engine.DEFAULT_TERM_BUDGET,
           boundary_method: str = "euler_maclaurin") -> VerificationReport:
    """Sum the left side, evaluate the right side, and compare."""
    ident = get(identity_id)
    wd = ctx.working_digits
    fmt = lambda v: hpreal.format_significant(v, wd)
    start = time.perf_counter()
    target = min(requested_digits + 6, wd)
    try:
        if ident.closed_form is None:
            res, stable = _stable_digits(ident, max(target, requested_digits),
                                         ctx, term_budget, boundary_method)
            elapsed = (time.perf_counter() - start) * 1000.0
            return VerificationReport(
                id=ident.id, lhs_value=fmt(res.value), rhs_value="open",
                abs_diff="", rel_diff="", digits_verified=stable,
                terms_used=res.terms_used, elapsed_ms=round(elapsed, 3),
                status="OPEN_EVALUATED", lhs_num=res.value, sum_result=res)
        res = engine.summate(ident.series, target, ctx, term_budget,
                             boundary_method)
        with ctx.guard():
            rhs = ident.closed_form(ctx)
            diff = abs(res.value - rhs)
            rel = diff / abs(rhs) if rhs != 0 else diff
        digits = hpreal.digits_agreement(res.value, rhs, ctx)
        elapsed = (time.perf_counter() - start) * 1000.0
        status = "PASS" if digits >= requested_digits else "FAIL"
        return VerificationReport(
            id=ident.id, lhs_value=fmt(res.value), rhs_value=fmt(rhs),
            abs_diff=fmt(diff), rel_diff=fmt(rel), digits_verified=digits,
            terms_used=res.terms_used, elapsed_ms=round(elapsed, 3),
            status=status, lhs_num=res.value, rhs_num=rhs, sum_result=res)
    except (BudgetExceededError, CbhError) as exc:
        elapsed = (time.perf_counter() - start) * 1000.0
        return VerificationReport(
            id=ident.id, lhs_value="", rhs_value="", abs_diff="",
            rel_diff="", digits_verified=0, terms_used=0,
            elapsed_ms=round(elapsed, 3), status="ERROR", error=str(exc))
