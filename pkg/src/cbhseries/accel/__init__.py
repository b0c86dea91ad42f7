"""Summation engine subpackage: certified series summation, asymptotic tail
expansions, and sequence extrapolation."""

from . import asymptotics, engine, extrapolate
from .engine import (DEFAULT_TERM_BUDGET, Method, SumResult,
                     cbc_ratio_asymptotic, sum_algebraic_boundary,
                     sum_alternating_algebraic, sum_geometric, summate)

__all__ = [
    "asymptotics", "engine", "extrapolate",
    "DEFAULT_TERM_BUDGET", "Method", "SumResult", "cbc_ratio_asymptotic",
    "sum_algebraic_boundary", "sum_alternating_algebraic", "sum_geometric",
    "summate",
]
