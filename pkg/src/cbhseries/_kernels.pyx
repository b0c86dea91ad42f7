# cython: language_level=3
# cython: boundscheck=False, wraparound=False
"""Compiled summation kernel.

Same contract as the pure-Python fallback in ``_kernels_py.py``: the numbers
are gmpy2 objects (MPFR), so the win here is loop and dispatch overhead, not
the arithmetic itself.  Keep both implementations in lockstep.
"""

BACKEND = "compiled"

W_NONE = 0
W_HARMONIC = 1
W_ALT_HARMONIC = 2
W_HARMONIC_PREV = 3


def weighted_partial_sum(pcoeffs, qcoeffs, xfac, u, w, int wmode, long n0, long count):
    """Sum `count` terms t_n = u_n * w_n starting at n = n0.

    See ``_kernels_py.weighted_partial_sum`` for the full contract.
    """
    cdef long n, stop
    cdef int has_x = xfac is not None
    cdef Py_ssize_t i, np_ = len(pcoeffs), nq = len(qcoeffs)
    s = u - u
    one = s + 1
    stop = n0 + count
    for n in range(n0, stop):
        if wmode == 0:
            s = s + u
        else:
            s = s + u * w
        pn = pcoeffs[np_ - 1]
        for i in range(np_ - 2, -1, -1):
            pn = pn * n + pcoeffs[i]
        qn = qcoeffs[nq - 1]
        for i in range(nq - 2, -1, -1):
            qn = qn * n + qcoeffs[i]
        u = u * pn
        if has_x:
            u = u * xfac
        u = u / qn
        if wmode == 1:
            w = w + one / (n + 1)
        elif wmode == 2:
            if n % 2 == 0:
                w = w + one / (n + 1)
            else:
                w = w - one / (n + 1)
        elif wmode == 3:
            w = w + one / n
    return s, u, w
