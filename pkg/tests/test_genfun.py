"""Generating functions: closed forms against truncated series over grids
inside the validity intervals, plus the cross-relations tying the family
together."""

from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr

from cbhseries import genfun, hpreal
from cbhseries.errors import DomainError
from cbhseries.genfun import GenFunId


def _tol(ctx, digits):
    with ctx.guard():
        return mpfr(10) ** (-digits)


def test_known_point_values(ctx64):
    with ctx64.guard():
        tol = _tol(ctx64, 60)
        # 1/sqrt(1 - 3/4) = 2
        assert abs(genfun.closed_form(GenFunId.CBC, Fraction(3, 16), ctx64)
                   - 2) < tol
        # sum H_n binom(2n,n) (3/16)^n = 4 log(3/2)
        want = 4 * gmpy2.log(mpfr(3) / 2)
        assert abs(genfun.closed_form(GenFunId.HN_CBC, Fraction(3, 16), ctx64)
                   - want) < tol
        # Catalan generating function at 0 is C_0 = 1
        assert genfun.closed_form(GenFunId.CATALAN, 0, ctx64) == 1
        assert genfun.closed_form(GenFunId.CBC_OVER_N, 0, ctx64) == 0
        # the integrated series is finite at the closed right endpoint
        v = genfun.closed_form(GenFunId.HN_CBC_INT, Fraction(1, 4), ctx64)
        assert abs(v - hpreal.const_log2(ctx64)) < tol


@pytest.mark.parametrize("gid", list(GenFunId))
def test_closed_form_matches_series_on_grid(gid, ctx40):
    # sample at +/- 0.8 of the radius; partial sums must agree to 30 digits
    iv = genfun.validity_interval(gid)
    pts = [iv.hi * Fraction(4, 5), iv.lo * Fraction(4, 5), iv.hi * Fraction(2, 5)]
    # geometric ratio 0.8 needs ~ log(10^-32)/log(0.8) ~ 330 terms; the
    # harmonic-weighted ones pick up a log factor, so leave headroom
    N = 600
    for x in pts:
        cf = genfun.closed_form(gid, x, ctx40)
        ps = genfun.series_partial(gid, x, N, ctx40)
        assert hpreal.digits_agreement(cf, ps, ctx40) >= 30, f"{gid} at {x}"


@pytest.mark.parametrize("x", [Fraction(1, 20), Fraction(1, 10), Fraction(1, 5)])
def test_alternating_mirror(x, ctx40):
    # sum (-1)^(n+1) H_n binom(2n,n) x^n = -[sum H_n binom(2n,n) y^n] at y=-x
    with ctx40.guard():
        a = genfun.closed_form(GenFunId.HN_CBC_ALT, x, ctx40)
        b = genfun.closed_form(GenFunId.HN_CBC, -x, ctx40)
        assert abs(a + b) < _tol(ctx40, 38)


@pytest.mark.parametrize("x", [Fraction(1, 10), Fraction(3, 20), Fraction(1, 5)])
def test_integrated_series_consistency(x, ctx40):
    # term-by-term integration: the HN_CBC_INT closed form differentiates
    # back to HN_CBC; check by agreeing with a high-order partial sum and
    # with a central difference of the integrated closed form
    cf = genfun.closed_form(GenFunId.HN_CBC_INT, x, ctx40)
    ps = genfun.series_partial(GenFunId.HN_CBC_INT, x, 900, ctx40)
    assert hpreal.digits_agreement(cf, ps, ctx40) >= 30
    with ctx40.guard():
        h = mpfr(10) ** -10
        v = hpreal.from_rational(x, ctx40)
        up = genfun.closed_form(GenFunId.HN_CBC_INT, v + h, ctx40)
        dn = genfun.closed_form(GenFunId.HN_CBC_INT, v - h, ctx40)
        deriv = (up - dn) / (2 * h)
        direct = genfun.closed_form(GenFunId.HN_CBC, x, ctx40)
        assert abs(deriv - direct) < mpfr(10) ** -17


@pytest.mark.parametrize("x", [Fraction(-9, 10), Fraction(-1, 2), Fraction(0),
                               Fraction(1, 2), Fraction(9, 10)])
def test_alt_h_over_n_both_forms(x, ctx40):
    # closed_form raises MethodDisagreementError if its two printed forms
    # split; reaching the series comparison means they agreed
    if x == 0:
        with ctx40.guard():
            got = genfun.closed_form(GenFunId.ALT_H_OVER_N, x, ctx40)
            assert abs(got) < _tol(ctx40, 40)
        return
    cf = genfun.closed_form(GenFunId.ALT_H_OVER_N, x, ctx40)
    ps = genfun.series_partial(GenFunId.ALT_H_OVER_N, x, 1400, ctx40)
    # ratio up to 0.9: 1400 terms gives ~ 0.9^1400 ~ 10^-64 truncation
    assert hpreal.digits_agreement(cf, ps, ctx40) >= 30


def test_alt_h_over_n_left_endpoint(ctx40):
    # x = -1 is included (the series converges there); value is
    # Li2(1/2) - zeta(2) = -pi^2/12 - (log^2 2)/2
    with ctx40.guard():
        got = genfun.closed_form(GenFunId.ALT_H_OVER_N, Fraction(-1), ctx40)
        pi = hpreal.const_pi(ctx40)
        log2 = hpreal.const_log2(ctx40)
        want = -pi * pi / 12 - log2 * log2 / 2
        assert abs(got - want) < _tol(ctx40, 38)


def test_domain_errors_carry_interval(ctx40):
    with pytest.raises(DomainError) as ei:
        genfun.closed_form(GenFunId.CBC, Fraction(3, 10), ctx40)
    assert "(-0.25, 0.25)" in str(ei.value)
    with pytest.raises(DomainError):
        genfun.closed_form(GenFunId.CBC, Fraction(1, 4), ctx40)
    with pytest.raises(DomainError):
        genfun.closed_form(GenFunId.HARMONIC, 1, ctx40)
    with pytest.raises(DomainError):
        genfun.series_partial(GenFunId.CATALAN, Fraction(-1, 2), 10, ctx40)
    # the closed endpoints really are accepted
    genfun.closed_form(GenFunId.HN_CBC_INT, Fraction(-1, 4), ctx40)
    genfun.closed_form(GenFunId.ALT_H_OVER_N, Fraction(-1), ctx40)


def test_series_partial_validates_count(ctx40):
    with pytest.raises(ValueError):
        genfun.series_partial(GenFunId.CBC, Fraction(1, 10), 0, ctx40)
