"""Sequence extrapolation: Levin u-transform and a log-power Richardson fit.

These are the gamma-free summation routes: they see only partial sums, never
the H_n tail asymptotics, so a defect in the Euler-Maclaurin machinery (or in
the Euler-Mascheroni constant itself) cannot slip through the cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import gmpy2
from gmpy2 import mpfr

from .. import hpreal
from ..hpreal import PrecisionContext
from ..series import StructuredTerms


def levin_u(terms: Sequence[mpfr], partials: Sequence[mpfr],
            beta: int = 1) -> mpfr:
    """Levin u-transform estimate of the series limit.

    Direct evaluation of the order-k transform at the highest order the data
    supports; runs in the caller's gmpy2 context.  Alternating sequences with
    smoothly varying |terms| converge roughly one digit per term.
    """
    m = len(terms) - 1  # orders 0..m usable
    if m < 1:
        return partials[-1]
    num = mpfr(0)
    den = mpfr(0)
    binom_val = mpfr(1)
    for j in range(m + 1):
        # (-1)^j binom(m,j) (beta+j)^(m-1) / omega_j, omega_j = (beta+j) a_j
        phi = mpfr(beta + j) ** (m - 1)
        w = phi / ((beta + j) * terms[j])
        contrib = binom_val * w
        if j % 2:
            contrib = -contrib
        num += contrib * partials[j]
        den += contrib
        binom_val = binom_val * (m - j) / (j + 1)
    if den == 0:
        return partials[-1]
    return num / den


def _solve(matrix: list[list[mpfr]], rhs: list[mpfr]) -> list[mpfr]:
    """Gaussian elimination with partial pivoting, in the active context."""
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            raise ZeroDivisionError("singular extrapolation system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f == 0:
                continue
            for c in range(col, n + 1):
                a[r][c] -= f * a[col][c]
    x = [mpfr(0)] * n
    for r in range(n - 1, -1, -1):
        acc = a[r][n]
        for c in range(r + 1, n):
            acc -= a[r][c] * x[c]
        x[r] = acc / a[r][r]
    return x


def richardson_log_fit(structured: StructuredTerms, exponent: Fraction,
                       log_power: int, target_digits: int,
                       ctx: PrecisionContext,
                       n_base: int = 400, orders: int = None
                       ) -> tuple[mpfr, mpfr, int]:
    """Extrapolate S_oo from partial sums at arithmetic checkpoints.

    Model: S_N = S_oo - N^(-(s-1)) * sum_{j<J} N^(-j) (alpha_j [+ beta_j ln N]).
    The checkpoints N_i = n_base * (1 + i) and the basis functions form a
    square interpolation system solved at elevated precision; the returned
    error estimate is the difference against a one-order-lower fit (heuristic).

    Returns (value, error_estimate, terms_used).
    """
    s = Fraction(exponent)
    if orders is None:
        import math
        orders = max(6, int((target_digits + 10) / max(2.0, math.log10(n_base)))
                     - int(s - 1) + 1)
    per_node = 2 if log_power else 1
    unknowns = 1 + per_node * orders
    nodes = [n_base * (i + 1) for i in range(unknowns)]
    work = PrecisionContext(max(32, 2 * target_digits + 40), ctx.guard_digits)
    with work.guard():
        partials = []
        state = None
        reached = structured.n0
        acc = mpfr(0)
        for N in nodes:
            inc, state = structured.partial_sum(N - reached + 1, work, state)
            acc += inc
            reached = N + 1
            partials.append(acc)

        def fit(k_orders: int, count: int) -> mpfr:
            cols = 1 + per_node * k_orders
            mat = []
            for i in range(count):
                N = mpfr(nodes[i])
                logN = gmpy2.log(N)
                base = N ** hpreal.to_mpfr(-(s - 1), work)
                row = [mpfr(1)]
                p = base
                for j in range(k_orders):
                    row.append(p)
                    if log_power:
                        row.append(p * logN)
                    p = p / N
                mat.append(row)
            sol = _solve(mat, partials[:cols])
            return sol[0]

        best = fit(orders, unknowns)
        check = fit(orders - 1, 1 + per_node * (orders - 1))
        err = abs(best - check) * 4 + abs(best) * mpfr(10) ** (-work.working_digits + 5)
    return best, err, nodes[-1]
