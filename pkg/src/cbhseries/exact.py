"""Exact integer and rational arithmetic for the combinatorial quantities.

Integers are plain Python ``int`` (arbitrary precision); rationals are
``fractions.Fraction`` (always reduced, positive denominator).  Point lookups
are backed by growing caches so that summation loops touching n up to 10^5+
stay linear; the caches are guarded by a lock and values are immutable, so
everything here is safe to share across threads.

Sequences are also exposed as iterators yielding ``(n, value)`` pairs, which
avoids materializing large tables when only a running scan is needed.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Iterator, Sequence, Union

ExactRational = Fraction
ExactSequence = Union[Sequence[Fraction], Callable[[int], Fraction]]

_lock = threading.Lock()
_harmonic_cache: list[Fraction] = [Fraction(0)]
_alt_harmonic_cache: list[Fraction] = [Fraction(0)]
_pochhammer_half_cache: list[Fraction] = [Fraction(1)]


def _check_index(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"index must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")


def _extend(cache: list[Fraction], n: int, step: Callable[[Fraction, int], Fraction]) -> Fraction:
    # step(prev, k) produces the value at index k from the value at k-1
    with _lock:
        while len(cache) <= n:
            k = len(cache)
            cache.append(step(cache[-1], k))
        return cache[n]


def harmonic(n: int) -> Fraction:
    """H_n = sum_{k=1..n} 1/k, with H_0 = 0."""
    _check_index(n)
    return _extend(_harmonic_cache, n, lambda prev, k: prev + Fraction(1, k))


def alt_harmonic(n: int) -> Fraction:
    """H'_n = sum_{k=1..n} (-1)^(k+1)/k, with H'_0 = 0."""
    _check_index(n)
    return _extend(_alt_harmonic_cache, n,
                   lambda prev, k: prev + Fraction(1 if k % 2 else -1, k))


def central_binomial(n: int) -> int:
    """binom(2n, n)."""
    _check_index(n)
    return math.comb(2 * n, n)


def catalan_number(n: int) -> int:
    """C_n = binom(2n, n)/(n+1); the division is always exact."""
    _check_index(n)
    b = central_binomial(n)
    q, r = divmod(b, n + 1)
    assert r == 0
    return q


def binomial(n: int, k: int) -> int:
    """binom(n, k), defined as 0 for k < 0 or k > n."""
    _check_index(n)
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def pochhammer_half(n: int) -> Fraction:
    """Rising factorial (1/2)_n = prod_{k=0..n-1} (1/2 + k)."""
    _check_index(n)
    return _extend(_pochhammer_half_cache, n,
                   lambda prev, k: prev * Fraction(2 * k - 1, 2))


def binomial_transform(f: ExactSequence, n: int) -> Fraction:
    """sum_{k=0..n} binom(n,k) (-1)^k f(k)."""
    _check_index(n)
    get = f if callable(f) else f.__getitem__
    total = Fraction(0)
    b = 1  # binom(n, k), updated incrementally
    for k in range(n + 1):
        term = b * Fraction(get(k))
        total += term if k % 2 == 0 else -term
        b = b * (n - k) // (k + 1)
    return total


def harmonic_sequence() -> Iterator[tuple[int, Fraction]]:
    """Yields (n, H_n) for n = 0, 1, 2, ..."""
    h = Fraction(0)
    n = 0
    while True:
        yield n, h
        n += 1
        h += Fraction(1, n)


def alt_harmonic_sequence() -> Iterator[tuple[int, Fraction]]:
    """Yields (n, H'_n) for n = 0, 1, 2, ..."""
    h = Fraction(0)
    n = 0
    while True:
        yield n, h
        n += 1
        h += Fraction(1 if n % 2 else -1, n)


def central_binomial_sequence() -> Iterator[tuple[int, int]]:
    """Yields (n, binom(2n,n)) using the ratio 2(2n+1)/(n+1) between steps."""
    b = 1
    n = 0
    while True:
        yield n, b
        b = b * 2 * (2 * n + 1) // (n + 1)
        n += 1
