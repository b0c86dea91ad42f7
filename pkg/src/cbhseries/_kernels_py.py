"""Pure-Python fallback for the hot summation kernel.

Semantics must stay identical to the Cython version in ``_kernels.pyx``;
``tests/test_kernels.py`` asserts bit-for-bit parity between the two.
"""

from __future__ import annotations

BACKEND = "python"

# weight modes
W_NONE = 0
W_HARMONIC = 1
W_ALT_HARMONIC = 2
W_HARMONIC_PREV = 3


def weighted_partial_sum(pcoeffs, qcoeffs, xfac, u, w, wmode, n0, count):
    """Sum `count` terms t_n = u_n * w_n starting at n = n0.

    u evolves by u <- u * xfac * P(n) / Q(n) with integer-coefficient
    polynomials P, Q (ascending coefficient lists); w is the running weight
    (H_n, H'_n, H_{n-1} or unused).  All arithmetic happens in the caller's
    active gmpy2 context.  Returns (sum, u_next, w_next) so summation can be
    resumed where it stopped.
    """
    s = u - u  # zero at the working precision
    one = s + 1
    for n in range(n0, n0 + count):
        if wmode == W_NONE:
            s += u
        else:
            s += u * w
        pn = 0
        for c in reversed(pcoeffs):
            pn = pn * n + c
        qn = 0
        for c in reversed(qcoeffs):
            qn = qn * n + c
        u = u * pn
        if xfac is not None:
            u = u * xfac
        u = u / qn
        if wmode == W_HARMONIC:
            w = w + one / (n + 1)
        elif wmode == W_ALT_HARMONIC:
            w = w + one / (n + 1) if n % 2 == 0 else w - one / (n + 1)
        elif wmode == W_HARMONIC_PREV:
            w = w + one / n
    return s, u, w
