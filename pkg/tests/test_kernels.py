"""Parity between the compiled kernel and the pure-Python fallback, plus the
backend-selection switch."""

import os
import subprocess
import sys
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr

from cbhseries import _kernels_py, kernels
from cbhseries.hpreal import PrecisionContext

try:
    from cbhseries import _kernels as _compiled
except ImportError:
    _compiled = None

CASES = [
    # (pcoeffs, qcoeffs, xfac_fraction, u0, w0, wmode, n0, count)
    ([1, 2], [2, 2], Fraction(1, 4), Fraction(1), Fraction(0),
     _kernels_py.W_NONE, 0, 40),                      # binom(2n,n)/4^n * (1/4)^n
    ([1, 2], [2, 2], Fraction(-1, 4), Fraction(1), Fraction(1),
     _kernels_py.W_HARMONIC, 1, 60),
    ([1], [1, 1], Fraction(1, 2), Fraction(1, 2), Fraction(1),
     _kernels_py.W_ALT_HARMONIC, 1, 50),
    ([1, 0, 1], [2, 2, 1], None, Fraction(1, 3), Fraction(1),
     _kernels_py.W_HARMONIC_PREV, 2, 35),
    ([3, 4], [1, 3, 2], Fraction(1, 9), Fraction(7, 5), Fraction(0),
     _kernels_py.W_NONE, 1, 45),
]


def _run(impl, case, ctx):
    pc, qc, xf, u0, w0, wm, n0, count = case
    with ctx.guard():
        x = None if xf is None else mpfr(gmpy2.mpq(xf.numerator, xf.denominator))
        u = mpfr(gmpy2.mpq(u0.numerator, u0.denominator))
        w = mpfr(gmpy2.mpq(w0.numerator, w0.denominator))
        return impl.weighted_partial_sum(pc, qc, x, u, w, wm, n0, count)


@pytest.mark.skipif(_compiled is None, reason="compiled kernel not built")
@pytest.mark.parametrize("case", CASES)
def test_bit_for_bit_parity(case):
    ctx = PrecisionContext(48)
    s_py, u_py, w_py = _run(_kernels_py, case, ctx)
    s_c, u_c, w_c = _run(_compiled, case, ctx)
    # identical rounding sequence, so identical bits
    assert s_py == s_c and s_py.digits() == s_c.digits()
    assert u_py.digits() == u_c.digits()
    assert w_py.digits() == w_c.digits()


@pytest.mark.parametrize("case", CASES)
def test_resumable_state(case):
    # summing 10 + (count-10) terms equals summing count terms in one call
    pc, qc, xf, u0, w0, wm, n0, count = case
    ctx = PrecisionContext(48)
    with ctx.guard():
        x = None if xf is None else mpfr(gmpy2.mpq(xf.numerator, xf.denominator))
        u = mpfr(gmpy2.mpq(u0.numerator, u0.denominator))
        w = mpfr(gmpy2.mpq(w0.numerator, w0.denominator))
        s_all, _, _ = kernels.weighted_partial_sum(pc, qc, x, u, w, wm, n0, count)
        s1, u1, w1 = kernels.weighted_partial_sum(pc, qc, x, u, w, wm, n0, 10)
        s2, _, _ = kernels.weighted_partial_sum(pc, qc, x, u1, w1, wm,
                                                n0 + 10, count - 10)
        assert abs((s1 + s2) - s_all) <= abs(s_all) * mpfr(2) ** (8 - ctx.prec_bits)


def test_kernel_matches_exact_terms():
    # harmonic-weighted central binomial terms against exact rationals
    from cbhseries import exact
    ctx = PrecisionContext(48)
    with ctx.guard():
        u = mpfr("0.5")  # binom(2,1) / 4 at n = 1
        w = mpfr(1)      # H_1
        x = mpfr("0.25")
        total = mpfr(0)
        n = 1
        for _ in range(30):
            t, u, w = kernels.weighted_partial_sum(
                [2, 4], [1, 1], x, u, w, kernels.W_HARMONIC, n, 1)
            want = (exact.harmonic(n) * exact.central_binomial(n)
                    * Fraction(1, 4) ** n)
            wantf = mpfr(gmpy2.mpq(want.numerator, want.denominator))
            assert abs(t - wantf) <= abs(wantf) * mpfr(2) ** (20 - ctx.prec_bits)
            total += t
            n += 1
        assert total > 0


def test_backend_selection_env():
    env = dict(os.environ, CBHSERIES_FORCE_PYTHON_KERNEL="1")
    out = subprocess.run(
        [sys.executable, "-c", "from cbhseries import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(_compiled is None, reason="compiled kernel not built")
def test_default_backend_is_compiled():
    env = {k: v for k, v in os.environ.items()
           if k != "CBHSERIES_FORCE_PYTHON_KERNEL"}
    out = subprocess.run(
        [sys.executable, "-c", "from cbhseries import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "compiled"
