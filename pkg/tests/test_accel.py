"""Summation engine: rigorous geometric tails, Euler-Maclaurin boundary
tails, extrapolation cross-routes, and an audit that every reported error
bound is honest against the known closed forms."""

from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr

from cbhseries import catalog, exact, hpreal
from cbhseries.accel import asymptotics, engine, extrapolate
from cbhseries.errors import BudgetExceededError, DomainError
from cbhseries.hpreal import PrecisionContext
from cbhseries.series import (Algebraic, AlternatingAlgebraic, Geometric,
                              SeriesSpec, Weight, power_series)

F = Fraction


def _geometric_half() -> SeriesSpec:
    # sum_{n>=1} 2^-n = 1
    return SeriesSpec(structured=power_series(F(1, 2), (), 1),
                      decay=Geometric(F(1, 2)))


def _zeta2_series() -> SeriesSpec:
    # sum_{n>=1} 1/n^2
    return SeriesSpec(structured=power_series(F(1), ((1, 0, 2),), 1),
                      decay=Algebraic(F(2)))


# ---------------------------------------------------------------------------
# geometric route


def test_sum_geometric_exact_limit(ctx40):
    res = engine.summate(_geometric_half(), 35, ctx40)
    assert res.method is engine.Method.GEOMETRIC_TAIL
    assert not res.heuristic
    with ctx40.guard():
        assert abs(res.value - 1) < mpfr(10) ** -35
        assert abs(res.value - 1) <= res.error_bound


def test_sum_geometric_budget(ctx40):
    with pytest.raises(BudgetExceededError):
        engine.summate(_geometric_half(), 35, ctx40, term_budget=20)


def test_sum_geometric_ratio_audit(ctx40):
    # declare a ratio far below the true 9/10: the per-chunk audit must
    # notice once the summation runs past the settling window
    bad = SeriesSpec(structured=power_series(F(9, 10), (), 1),
                     decay=Geometric(F(1, 2)))
    with pytest.raises(DomainError):
        engine.sum_geometric(bad, 35, ctx40, term_budget=10**5)


def test_alternating_tail_bound(ctx40):
    # sum (-1)^(n+1)/2^n = 1/3 with the alternating |t_{N+1}| bound
    from cbhseries.series import AlternatingGeometric
    spec = SeriesSpec(structured=power_series(F(-1, 2), (), 1, prefactor=F(-1)),
                      decay=AlternatingGeometric(F(1, 2)))
    res = engine.summate(spec, 35, ctx40)
    assert res.method is engine.Method.ALTERNATING_TAIL
    with ctx40.guard():
        third = mpfr(1) / 3
        assert abs(res.value - third) <= res.error_bound
        assert abs(res.value - third) < mpfr(10) ** -35


# ---------------------------------------------------------------------------
# asymptotic ingredients


def test_bernoulli_values():
    assert asymptotics.bernoulli(0) == 1
    assert asymptotics.bernoulli(1) == F(-1, 2)
    assert asymptotics.bernoulli(2) == F(1, 6)
    assert asymptotics.bernoulli(3) == 0
    assert asymptotics.bernoulli(4) == F(-1, 30)
    assert asymptotics.bernoulli(12) == F(-691, 2730)


def test_harmonic_expansion_numeric(ctx64):
    # H_n - ln n - gamma matches the expansion at n = 1000 to ~ order digits
    h = asymptotics.harmonic_expansion(10)
    n = 1000
    with ctx64.guard():
        lhs = (hpreal.from_rational(exact.harmonic(n), ctx64)
               - gmpy2.log(mpfr(n)) - hpreal.const_gamma(ctx64))
        rhs = mpfr(0)
        for k, hk in sorted(h.items()):
            rhs += hpreal.to_mpfr(hk, ctx64) * mpfr(n) ** (-k)
        # remainder is O(n^-12) ~ 10^-36
        assert abs(lhs - rhs) < mpfr(10) ** -34


@pytest.mark.parametrize("k_terms", [1, 3, 6, 10])
def test_cbc_ratio_asymptotic_converges(k_terms, ctx64):
    # truncation error of the ratio expansion is O(n^(-k-1/2)) absolute
    n = 400
    with ctx64.guard():
        true = hpreal.from_rational(
            F(exact.central_binomial(n), 4**n), ctx64)
        approx = asymptotics.cbc_ratio_asymptotic(n, k_terms, ctx64)
        err = abs(approx - true)
        assert err < mpfr(n) ** (-k_terms) / gmpy2.sqrt(mpfr(n))


def test_cbc_ratio_leading_coefficients(ctx64):
    # fit c_1 from exact ratios: n (sqrt(pi n) binom(2n,n)/4^n - 1) -> -1/8
    with ctx64.guard():
        pi = hpreal.const_pi(ctx64)
        for n in (10**4, 10**5):
            r = hpreal.from_rational(F(exact.central_binomial(n), 4**n), ctx64)
            scaled = mpfr(n) * (r * gmpy2.sqrt(pi * n) - 1)
            assert abs(scaled - mpfr(-1) / 8) < mpfr(2) / n


def test_cbc_ratio_argument_validation():
    with pytest.raises(ValueError):
        asymptotics.cbc_ratio_asymptotic(0, 3)
    with pytest.raises(ValueError):
        asymptotics.cbc_ratio_asymptotic(10, 0)
    with pytest.raises(ValueError):
        asymptotics.cbc_ratio_asymptotic(10, 99)


def test_euler_maclaurin_tail_against_zeta2(ctx64):
    # feed f(n) = n^-2 directly; tail from M = 50 must match
    # zeta(2) - H^(2)_49 (the machinery divides by sqrt(pi), undo that)
    M = 50
    expansion = {F(2): [F(1), F(0), F(0)]}
    tail, err = asymptotics.euler_maclaurin_tail(expansion, M, ctx64)
    head = sum(F(1, n * n) for n in range(1, M))
    with ctx64.guard():
        sqrt_pi = gmpy2.sqrt(gmpy2.const_pi())
        want = hpreal.const_zeta2(ctx64) - hpreal.from_rational(head, ctx64)
        assert abs(tail * sqrt_pi - want) < mpfr(10) ** -25
        assert abs(tail * sqrt_pi - want) <= err * sqrt_pi * 2


# ---------------------------------------------------------------------------
# extrapolation


def test_levin_u_on_alternating_log2(ctx40):
    # sum (-1)^(n+1)/n with 36 terms: the u-transform reaches ~ 40 digits
    with PrecisionContext(90).guard():
        terms = []
        partials = []
        acc = mpfr(0)
        for n in range(1, 37):
            t = mpfr((-1) ** (n + 1)) / n
            acc += t
            terms.append(t)
            partials.append(acc)
        est = extrapolate.levin_u(terms, partials)
        assert abs(est - gmpy2.const_log2()) < mpfr(10) ** -40


def test_richardson_on_zeta2(ctx40):
    spec = _zeta2_series()
    value, err, used = extrapolate.richardson_log_fit(
        spec.structured, F(2), 0, 30, ctx40)
    with ctx40.guard():
        true = hpreal.const_zeta2(ctx40)
        assert abs(value - true) < mpfr(10) ** -30
        assert abs(value - true) <= err * 4
    assert used > 0


def test_alternating_algebraic_route(ctx40):
    # E1G: sum (-1)^(n+1) H'_n / n = pi^2/12 + (log^2 2)/2
    ident = catalog.get("E1G")
    res = engine.summate(ident.series, 30, ctx40)
    with ctx40.guard():
        rhs = ident.closed_form(ctx40)
        assert abs(res.value - rhs) < mpfr(10) ** -30
        assert abs(res.value - rhs) <= res.error_bound


# ---------------------------------------------------------------------------
# boundary routes on catalog entries


@pytest.mark.parametrize("ident_id", ["EQ10", "EQ17", "EQ6"])
def test_dual_route_agreement(ident_id, ctx40):
    ident = catalog.get(ident_id)
    res = engine.sum_algebraic_boundary(ident.series, 25, ctx40, method="both")
    assert res.method is engine.Method.DUAL_CHECKED
    with ctx40.guard():
        rhs = ident.closed_form(ctx40)
        assert abs(res.value - rhs) < mpfr(10) ** -25
        assert abs(res.value - rhs) <= res.error_bound


def test_boundary_budget(ctx40):
    ident = catalog.get("EQ10")
    with pytest.raises(BudgetExceededError):
        engine.summate(ident.series, 25, ctx40, term_budget=100)


def test_boundary_requires_s_above_one(ctx40):
    bad = SeriesSpec(structured=power_series(F(1), ((1, 0, 1),), 1),
                     decay=Algebraic(F(1)))
    with pytest.raises(DomainError):
        engine.sum_algebraic_boundary(bad, 12, ctx40)


def test_monotone_refinement(ctx40):
    # asking for more digits never loosens the achieved accuracy
    ident = catalog.get("EQ12")
    errs = []
    with ctx40.guard():
        rhs = ident.closed_form(ctx40)
        for target in (12, 20, 28):
            res = engine.summate(ident.series, target, ctx40)
            errs.append(abs(res.value - rhs))
    assert errs[0] >= errs[1] >= errs[2]


def test_honest_bounds_across_catalog(ctx40):
    # the reported bound must cover the true error for every identity with
    # a closed form (heuristic routes included: this is the audit)
    for ident in catalog.inventory():
        if not ident.has_closed_form:
            continue
        res = engine.summate(ident.series, 20, ctx40)
        with ctx40.guard():
            rhs = ident.closed_form(ctx40)
            diff = abs(res.value - rhs)
            assert diff <= res.error_bound, (
                f"{ident.id}: true error {diff} exceeds bound {res.error_bound}")
