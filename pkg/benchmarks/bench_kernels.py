"""Benchmark the compiled summation kernel against the pure-Python fallback.

Both backends run the identical hot loop (weighted hypergeometric partial
sums); the compiled version removes interpreter overhead around the mpfr
operations.  Run from the repository root:

    python3 benchmarks/bench_kernels.py [--terms N] [--digits D] [--repeat R]
"""

import argparse
import time
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from cbhseries import _kernels_py
from cbhseries.hpreal import PrecisionContext

try:
    from cbhseries import _kernels
except ImportError:
    _kernels = None


CASES = [
    # name, pcoeffs, qcoeffs, xfac, u0, wmode
    ("harmonic-weighted boundary", [2, 4], [2, 2], Fraction(1, 4),
     Fraction(1, 2), _kernels_py.W_HARMONIC),
    ("plain geometric", [1], [1], Fraction(8, 9), Fraction(8, 9),
     _kernels_py.W_NONE),
    ("alternating harmonic weight", [1, 0, 1], [2, 2, 1], Fraction(-1, 2),
     Fraction(1, 2), _kernels_py.W_ALT_HARMONIC),
]


def run_case(impl, case, terms, ctx, repeat):
    name, pc, qc, xf, u0, wm = case
    best = float("inf")
    with ctx.guard():
        x = mpfr(gmpy2.mpq(xf.numerator, xf.denominator))
        u_init = mpfr(gmpy2.mpq(u0.numerator, u0.denominator))
        for _ in range(repeat):
            start = time.perf_counter()
            impl.weighted_partial_sum(pc, qc, x, u_init, mpfr(1), wm, 1, terms)
            best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--terms", type=int, default=20000)
    parser.add_argument("--digits", type=int, default=64)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    ctx = PrecisionContext(args.digits)
    print(f"{args.terms} terms at {args.digits} working digits, "
          f"best of {args.repeat}\n")
    header = f"{'case':<32}{'python':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for case in CASES:
        t_py = run_case(_kernels_py, case, args.terms, ctx, args.repeat)
        if _kernels is None:
            print(f"{case[0]:<32}{t_py * 1e3:>10.2f}ms{'n/a':>12}{'n/a':>10}")
            continue
        t_c = run_case(_kernels, case, args.terms, ctx, args.repeat)
        print(f"{case[0]:<32}{t_py * 1e3:>10.2f}ms{t_c * 1e3:>10.2f}ms"
              f"{t_py / t_c:>9.2f}x")
    if _kernels is None:
        print("\ncompiled kernel not built; showing fallback timings only")


if __name__ == "__main__":
    main()
