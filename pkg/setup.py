"""Build script: compiles the optional Cython summation kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so any build failure here downgrades to a warning.
"""

import sys

from setuptools import Extension, setup


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("cbhseries: Cython not available, building without compiled kernel",
              file=sys.stderr)
        return []
    try:
        return cythonize(
            [Extension("cbhseries._kernels", ["src/cbhseries/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover
        print(f"cbhseries: kernel build skipped ({exc})", file=sys.stderr)
        return []


setup(ext_modules=extensions())
