"""High-precision verification of series built from central binomial
coefficients, harmonic numbers, dilogarithms, and Catalan's constant.

The package is organized as:

* :mod:`cbhseries.exact` -- exact integer/rational combinatorics;
* :mod:`cbhseries.hpreal` -- arbitrary-precision reals and constants;
* :mod:`cbhseries.special` -- dilogarithm and digamma evaluation;
* :mod:`cbhseries.genfun` -- generating-function closed forms and partial sums;
* :mod:`cbhseries.transform` -- Euler / binomial series transformations;
* :mod:`cbhseries.accel` -- the summation engine (tail bounds, Euler-Maclaurin,
  extrapolation);
* :mod:`cbhseries.catalog` -- the identity inventory and verifier;
* :mod:`cbhseries.cli` -- the command-line harness.
"""

from .hpreal import DEFAULT_CONTEXT, PrecisionContext

__version__ = "0.1.0"

__all__ = ["DEFAULT_CONTEXT", "PrecisionContext", "__version__"]
