"""Chebyshev polynomials of the third (and first) kind at rational points.

V_0 = 1, V_1 = 2x - 1, V_n = 2x V_{n-1} - V_{n-2}, and V_n = 0 for n < 0.
Everything is exact; values come from the recurrence, never from cosines.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache

from .errors import UnsupportedArgument
from .series import _as_fraction


class ChebyshevEvaluator:
    """Memoised V_n(x) for one fixed x.  Safe to share between threads."""

    def __init__(self, x):
        self.x = _as_fraction(x)
        self._cache = [Fraction(1), 2 * self.x - 1]
        self._lock = threading.Lock()

    def __call__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        cache = self._cache
        if n >= len(cache):
            with self._lock:
                two_x = 2 * self.x
                while len(cache) <= n:
                    cache.append(two_x * cache[-1] - cache[-2])
        return cache[n]

    def plus_prev(self, n: int) -> Fraction:
        return self(n) + self(n - 1)


@lru_cache(maxsize=256)
def evaluator(x: Fraction) -> ChebyshevEvaluator:
    return ChebyshevEvaluator(x)


def cheb_v(x, n: int) -> Fraction:
    """V_n(x); zero for negative n."""
    return evaluator(_as_fraction(x))(n)


def cheb_v_plus_prev(x, n: int) -> Fraction:
    """V_n(x) + V_{n-1}(x), which is 2 T_n(x) for n >= 1."""
    return evaluator(_as_fraction(x)).plus_prev(n)


def cheb_t(x, n: int) -> Fraction:
    """First kind, by its own recurrence T_0 = 1, T_1 = x."""
    x = _as_fraction(x)
    if n < 0:
        raise ValueError("T_n needs n >= 0")
    prev, cur = Fraction(1), x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


@lru_cache(maxsize=None)
def _fib_pair(n: int):
    # (F_n, F_{n+1}) by fast doubling.
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    return (d, c + d) if n & 1 else (c, d)


def fibonacci(n: int) -> int:
    if n < 0:
        raise ValueError("F_n needs n >= 0")
    return _fib_pair(n)[0]


def lucas(n: int) -> int:
    if n < 0:
        raise ValueError("L_n needs n >= 0")
    f, f1 = _fib_pair(n)
    return 2 * f1 - f


SPECIAL_POINTS = tuple(
    Fraction(v) for v in ("-1", "-1/2", "0", "1/2", "1", "3/2", "-3/2")
)


def cheb_special(x, n: int) -> Fraction:
    """Closed-form V_n at the seven special points, by residue class."""
    x = _as_fraction(x)
    if n < 0:
        raise ValueError("closed forms are stated for n >= 0")
    if x == -1:
        return Fraction((-1) ** n * (2 * n + 1))
    if x == Fraction(-1, 2):
        return Fraction(-2 if n % 3 == 1 else 1)
    if x == 0:
        return Fraction(1 if n % 4 in (0, 3) else -1)
    if x == Fraction(1, 2):
        r = n % 6
        return Fraction(1 if r in (0, 5) else 0 if r in (1, 4) else -1)
    if x == 1:
        return Fraction(1)
    if x == Fraction(3, 2):
        return Fraction(fibonacci(2 * n + 1))
    if x == Fraction(-3, 2):
        return Fraction((-1) ** n * lucas(2 * n + 1))
    raise UnsupportedArgument(f"no closed form for V_n at x = {x}")
