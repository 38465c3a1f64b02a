"""q-Pochhammer symbols, Gaussian binomials, Jacobi triple product.

Parameters such as ``a`` in (a;q)_n are monomials c*q^e, see
:class:`SignedMonomial`.  A base q^b is given by its power ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DivergentProduct,
    MonomialOutOfRange,
    NegativeExponentTerm,
    NegativeLength,
)
from .series import FormalSeries, Scalar, _as_fraction


@dataclass(frozen=True)
class SignedMonomial:
    """coeff * q^exponent with exponent >= 0."""

    coeff: Fraction
    exponent: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", _as_fraction(self.coeff))
        if self.exponent < 0:
            raise NegativeExponentTerm(f"monomial exponent {self.exponent} < 0")

    def __neg__(self):
        return SignedMonomial(-self.coeff, self.exponent)

    def __str__(self):
        c = self.coeff
        if self.exponent == 0:
            return str(c)
        q = "q" if self.exponent == 1 else f"q^{self.exponent}"
        if c == 1:
            return q
        if c == -1:
            return "-" + q
        return f"{c}*{q}"


def mono(coeff: Scalar, exponent: int = 0) -> SignedMonomial:
    return SignedMonomial(_as_fraction(coeff), exponent)


def _factor_product(factors, order: int) -> FormalSeries:
    """Product of (1 - c q^e) over (c, e) pairs with e >= 0."""
    s = FormalSeries.one(order)
    scale = Fraction(1)
    for c, e in factors:
        if e == 0:
            scale *= 1 - c
        elif e <= order:
            s = s.mul_binomial(c, e)
    return s.scale(scale) if scale != 1 else s


@lru_cache(maxsize=4096)
def _poch_finite(coeff: Fraction, exponent: int, base_power: int, n: int, order: int) -> FormalSeries:
    return _factor_product(((coeff, exponent + base_power * j) for j in range(n)), order)


def pochhammer_finite(a: SignedMonomial, base_power: int, n: int, order: int) -> FormalSeries:
    """(a; q^b)_n = prod_{j<n} (1 - a q^{b j}).

    ``n = -1`` gives the usual 1/(1 - a q^{-b}), which needs ``a`` to carry at
    least q^b and a non-zero denominator.
    """
    if base_power < 1:
        raise ValueError("base power must be positive")
    if n < -1:
        raise NegativeLength(f"(a;q)_n undefined for n = {n}")
    if n == -1:
        return pochhammer_reciprocal(a, base_power, -1, order).invert()
    return _poch_finite(a.coeff, a.exponent, base_power, n, order)


def pochhammer_reciprocal(a: SignedMonomial, base_power: int, n: int, order: int) -> FormalSeries:
    """1/(a; q^b)_n, with the n = -1 value 1 - a q^{-b}.

    At n = -1 the reciprocal is a polynomial, so 1/(q^2;q^2)_{-1} = 1 - 1 = 0:
    exactly the "summand is zero" convention for such terms.
    """
    if n < -1:
        raise NegativeLength(f"(a;q)_n undefined for n = {n}")
    if n == -1:
        e = a.exponent - base_power
        if e < 0:
            raise NegativeExponentTerm(f"(a;q)_(-1) needs q^{base_power} | a, got {a}")
        return FormalSeries.one(order).mul_binomial(a.coeff, e)
    s = FormalSeries.one(order)
    for j in range(n):
        e = a.exponent + base_power * j
        if e > order:
            break
        s = s.div_binomial(a.coeff, e)
    return s


def multi_pochhammer(params, base_power: int, n, order: int) -> FormalSeries:
    """(a_1, ..., a_m; q^b)_n for finite n or ``n=None`` (infinite)."""
    s = FormalSeries.one(order)
    for a in params:
        if n is None:
            s = s * pochhammer_infinite(a, base_power, order)
        else:
            s = s * pochhammer_finite(a, base_power, n, order)
    return s


@lru_cache(maxsize=4096)
def _poch_infinite(coeff: Fraction, exponent: int, base_power: int, order: int) -> FormalSeries:
    if exponent == 0 and coeff == 1:
        return FormalSeries.zero(order)
    count = 0 if exponent > order else (order - exponent) // base_power + 1
    return _factor_product(((coeff, exponent + base_power * j) for j in range(count)), order)


def pochhammer_infinite(a: SignedMonomial, base_power: int, order: int) -> FormalSeries:
    """(a; q^b)_inf truncated to ``order``.  (1;q)_inf is the zero series."""
    if base_power < 1:
        raise DivergentProduct("(a;q^b)_inf needs b >= 1")
    return _poch_infinite(a.coeff, a.exponent, base_power, order)


def pochhammer_factored(coeff: Fraction, exponent: int, base_power: int, n: int, order: int):
    """(c q^e; q^b)_n for a possibly negative e, as (scale, shift, series).

    The product equals scale * q^shift * series.  Factors 1 - c q^k with k < 0
    are rewritten as -c q^k (1 - q^{-k}/c); a zero factor makes ``scale`` zero.
    """
    if n < 0:
        raise NegativeLength(f"(a;q)_n undefined for n = {n}")
    coeff = _as_fraction(coeff)
    scale = Fraction(1)
    shift = 0
    factors = []
    for j in range(n):
        k = exponent + base_power * j
        if k == 0 and coeff == 1:
            return Fraction(0), 0, FormalSeries.zero(order)
        if k < 0:
            scale *= -coeff
            shift += k
            factors.append((1 / coeff, -k))
        else:
            factors.append((coeff, k))
    series = _factor_product(factors, order)
    return scale, shift, series


@lru_cache(maxsize=4096)
def _qbinom(n: int, k: int, base_power: int, order: int) -> FormalSeries:
    if k < 0 or k > n:
        return FormalSeries.zero(order)
    k = min(k, n - k)
    s = FormalSeries.one(order)
    # [n,k] = prod_{i=1..k} (1 - q^{b(n-k+i)}) / (1 - q^{b i}); exact division
    # of a polynomial computed to its full degree.
    for i in range(1, k + 1):
        s = s.mul_binomial(1, base_power * (n - k + i))
        s = s.div_binomial(1, base_power * i)
    return s


def qbinomial_degree(n: int, k: int, base_power: int = 1) -> int:
    if k < 0 or k > n:
        return 0
    return base_power * k * (n - k)


def qbinomial(n: int, k: int, base_power: int = 1, order: int | None = None) -> FormalSeries:
    """Gaussian binomial [n choose k] in base q^b; zero when k<0 or k>n.

    With ``order=None`` the exact polynomial is returned (order = degree).
    """
    deg = qbinomial_degree(n, k, base_power)
    if order is None:
        return _qbinom(n, k, base_power, deg)
    if order <= deg:
        if k < 0 or k > n:
            return FormalSeries.zero(order)
        # Truncated evaluation: exact division is still valid mod q^(order+1).
        return _qbinom(n, k, base_power, order)
    return _qbinom(n, k, base_power, deg).extend_zero(order)


def _jtp_range(z: SignedMonomial, base_power: int, order: int):
    """Indices n whose term q^{b n(n-1)/2 + e n} has degree <= order."""
    b, e = base_power, z.exponent

    def deg(n):
        return b * n * (n - 1) // 2 + e * n

    lo = hi = 0
    while deg(hi + 1) <= order or deg(hi + 1) < deg(hi):
        hi += 1
    while deg(lo - 1) <= order or deg(lo - 1) < deg(lo):
        lo -= 1
    return lo, hi, deg


def jacobi_triple_sum(z: SignedMonomial, base_power: int, order: int) -> FormalSeries:
    """sum_{n in Z} (-1)^n q^{b n(n-1)/2} z^n, truncated to ``order``."""
    if z.coeff == 0:
        raise ValueError("z must be non-zero")
    lo, hi, deg = _jtp_range(z, base_power, order)
    acc: dict[int, Fraction] = {}
    for n in range(lo, hi + 1):
        d = deg(n)
        if d > order:
            continue
        c = (-1) ** (n & 1) * z.coeff ** n
        acc[d] = acc.get(d, Fraction(0)) + c
    bad = [d for d, c in acc.items() if d < 0 and c != 0]
    if bad:
        raise NegativeExponentTerm(f"bilateral sum leaves q^{min(bad)}")
    return FormalSeries.from_dict({d: c for d, c in acc.items() if d >= 0}, order)


def jacobi_triple_product(z: SignedMonomial, base_power: int, order: int) -> FormalSeries:
    """(q^b, z, q^b/z; q^b)_inf, the product side of the triple product."""
    if not 1 <= z.exponent <= base_power:
        raise MonomialOutOfRange(f"need 1 <= exponent(z) <= {base_power}, got {z}")
    if z.coeff == 0:
        raise ValueError("z must be non-zero")
    b = base_power
    return (
        pochhammer_infinite(mono(1, b), b, order)
        * pochhammer_infinite(z, b, order)
        * pochhammer_infinite(SignedMonomial(1 / z.coeff, b - z.exponent), b, order)
    )


def partition_oracle(order: int) -> FormalSeries:
    """p(0..order) by coin-change counting, independent of series division."""
    if order < 0:
        raise ValueError("order must be non-negative")
    ways = [1] + [0] * order
    for part in range(1, order + 1):
        for total in range(part, order + 1):
            ways[total] += ways[total - part]
    return FormalSeries(ways, order)
