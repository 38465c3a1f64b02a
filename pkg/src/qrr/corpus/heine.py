"""Andrews' limiting case of Heine's second transformation.

    sum q^{n^2 + a n} / ((q;q)_n (q;q)_{n+b})
        = 1/(q;q)_inf * sum (q^{a-b};q)_n (-1)^n q^{b n + n(n+1)/2} / (q;q)_n
"""

from __future__ import annotations

from ..bailey import recip_poch
from ..qfunctions import mono, pochhammer_factored, pochhammer_infinite
from ..series import FormalSeries


def heine_lhs(alpha: int, beta: int, order: int) -> FormalSeries:
    total = FormalSeries.zero(order)
    n = 0
    while n * n + alpha * n <= order or (alpha < 0 and n <= -alpha):
        d = n * n + alpha * n
        if 0 <= d <= order:
            sub = order - d
            term = recip_poch(mono(1, 1), 1, n, sub) * recip_poch(mono(1, 1), 1, n + beta, sub)
            total = total + term.shift(d, order)
        n += 1
    return total


def heine_rhs(alpha: int, beta: int, order: int) -> FormalSeries:
    total = FormalSeries.zero(order)
    n = 0
    # The n-th term has valuation >= min(n^2 + a n, b n + n(n+1)/2).
    while min(n * n + alpha * n, beta * n + n * (n + 1) // 2) <= order:
        scale, shift, poch = pochhammer_factored(1, alpha - beta, 1, n, order)
        d = beta * n + n * (n + 1) // 2 + shift
        if scale != 0 and d <= order:
            if d < 0:
                raise ValueError(f"negative total exponent at n = {n}")
            sub = order - d
            term = poch.truncate(sub) * recip_poch(mono(1, 1), 1, n, sub)
            total = total + term.scale(scale * (-1) ** n).shift(d, order)
        n += 1
    return total * pochhammer_infinite(mono(1, 1), 1, order).invert()


def heine_transform_sides(alpha: int, beta: int, order: int):
    if beta < 0:
        raise ValueError("beta must be non-negative")
    return heine_lhs(alpha, beta, order), heine_rhs(alpha, beta, order)
