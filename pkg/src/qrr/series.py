"""Truncated power series in q with exact rational coefficients.

A :class:`FormalSeries` stores the coefficients of q^0 .. q^order.  Internally
the coefficients are kept as integer numerators over one shared positive
denominator, which keeps the common all-integer case on plain ``int``
arithmetic.  Values are immutable.

Binary operations truncate to the smaller of the two orders; nothing is ever
silently extended with zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import NegativeExponentTerm, NonUnitSeries, OrderTooLarge

Scalar = Union[int, Fraction]

# Above this many coefficients (shorter operand) products go through
# Kronecker substitution into one big-integer multiply, which CPython runs
# with Karatsuba.  Chosen with benchmarks/bench_mul.py.
KRONECKER_THRESHOLD = 24


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


def _normalize(num: list, den: int):
    if den < 0:
        num = [-c for c in num]
        den = -den
    if den != 1:
        g = math.gcd(den, *num) if num else den
        if g > 1:
            num = [c // g for c in num]
            den //= g
    return tuple(num), den


def _schoolbook(a: list, b: list, n: int) -> list:
    out = [0] * n
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        lim = min(len(b), n - i)
        for j in range(lim):
            out[i + j] += ai * b[j]
    return out


def _pack(coeffs: list, nbytes: int) -> int:
    zero = bytes(nbytes)
    pos = b"".join(c.to_bytes(nbytes, "little") if c > 0 else zero for c in coeffs)
    neg = b"".join((-c).to_bytes(nbytes, "little") if c < 0 else zero for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker(a: list, b: list, n: int) -> list:
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    if ma == 0 or mb == 0:
        return [0] * n
    bound = ma * mb * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    slots = min(n, len(a) + len(b) - 1)
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes((bytes(nbytes - 1) + b"\x80") * slots, "little")
    # Slots above the truncation are multiples of 2^(8*nbytes*slots) and
    # vanish under the mask; the bias makes every kept digit non-negative.
    mask = (1 << (8 * nbytes * slots)) - 1
    raw = ((prod + bias) & mask).to_bytes(nbytes * slots, "little")
    out = [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(slots)
    ]
    out.extend([0] * (n - slots))
    return out


def _int_mul(a: list, b: list, n: int) -> list:
    """First ``n`` coefficients of the product of integer coefficient lists."""
    a = a[:n]
    b = b[:n]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        return [0] * n
    if min(len(a), len(b)) < KRONECKER_THRESHOLD:
        return _schoolbook(a, b, n)
    return _kronecker(a, b, n)


class FormalSeries:
    """Power series c_0 + c_1 q + ... + c_N q^N known exactly up to order N."""

    __slots__ = ("_num", "_den", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        fr = [_as_fraction(c) for c in coeffs]
        if order is None:
            order = len(fr) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        fr = fr[: order + 1] + [Fraction(0)] * (order + 1 - len(fr))
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        num = [c.numerator * (den // c.denominator) for c in fr]
        self._num, self._den = _normalize(num, den)
        self.order = order

    @classmethod
    def _raw(cls, num, den: int = 1) -> "FormalSeries":
        self = object.__new__(cls)
        self._num, self._den = _normalize(list(num), den) if den != 1 else (tuple(num), 1)
        self.order = len(self._num) - 1
        return self

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "FormalSeries":
        return cls._raw([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "FormalSeries":
        return cls.monomial(1, 0, order)

    @classmethod
    def constant(cls, c: Scalar, order: int) -> "FormalSeries":
        return cls.monomial(c, 0, order)

    @classmethod
    def monomial(cls, c: Scalar, exponent: int, order: int) -> "FormalSeries":
        if exponent < 0:
            raise NegativeExponentTerm(f"q^{exponent} is not a power series")
        c = _as_fraction(c)
        num = [0] * (order + 1)
        if exponent <= order:
            num[exponent] = c.numerator
        return cls._raw(num, c.denominator)

    @classmethod
    def from_dict(cls, terms: Mapping[int, Scalar], order: int) -> "FormalSeries":
        coeffs = [Fraction(0)] * (order + 1)
        for e, c in terms.items():
            if e < 0:
                raise NegativeExponentTerm(f"q^{e} is not a power series")
            if e <= order:
                coeffs[e] += _as_fraction(c)
        return cls(coeffs, order)

    # -- access -----------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        d = self._den
        return tuple(Fraction(c, d) for c in self._num)

    @property
    def denominator(self) -> int:
        return self._den

    def __getitem__(self, i: int) -> Fraction:
        if not 0 <= i <= self.order:
            raise IndexError(f"coefficient q^{i} outside order {self.order}")
        return Fraction(self._num[i], self._den)

    def __len__(self) -> int:
        return self.order + 1

    def is_integral(self) -> bool:
        return self._den == 1

    def integer_coeffs(self) -> tuple:
        if self._den != 1:
            raise ValueError("series has non-integer coefficients")
        return self._num

    def valuation(self) -> int | None:
        """Smallest exponent with non-zero coefficient, or None for zero."""
        for i, c in enumerate(self._num):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self._num)

    # -- equality ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.order == other.order and self._den == other._den and self._num == other._num

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return f"FormalSeries({self.to_string(12)})"

    def to_string(self, max_terms: int | None = None) -> str:
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if max_terms is not None and len(parts) >= max_terms:
                parts.append("...")
                break
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if mag == 1 else f"{mag}*{qpart}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            text = "0"
        else:
            text = ""
            for k, p in enumerate(parts):
                if p == "...":
                    text += " + ..."
                    continue
                sign, body = p
                if k == 0:
                    text = body if sign == "+" else "-" + body
                else:
                    text += f" {sign} {body}"
        return f"{text} + O(q^{self.order + 1})"

    # -- ring operations --------------------------------------------------
    def truncate(self, order: int) -> "FormalSeries":
        if order > self.order:
            raise OrderTooLarge(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        return FormalSeries._raw(self._num[: order + 1], self._den)

    def _coerce(self, other) -> "FormalSeries":
        if isinstance(other, FormalSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return FormalSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        if self._den == other._den:
            return FormalSeries._raw([a + b for a, b in zip(self._num[:n], other._num[:n])], self._den)
        l = math.lcm(self._den, other._den)
        sa, sb = l // self._den, l // other._den
        return FormalSeries._raw([a * sa + b * sb for a, b in zip(self._num[:n], other._num[:n])], l)

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries._raw([-c for c in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "FormalSeries":
        c = _as_fraction(c)
        if c == 1:
            return self
        return FormalSeries._raw([x * c.numerator for x in self._num], self._den * c.denominator)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, FormalSeries):
            return NotImplemented
        n = min(self.order, other.order) + 1
        return FormalSeries._raw(_int_mul(list(self._num), list(other._num), n), self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / _as_fraction(other))
        if not isinstance(other, FormalSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.truncate(n) * other.truncate(n).invert()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.invert().scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result = FormalSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> "FormalSeries":
        """Multiplicative inverse to the same order (Newton iteration)."""
        a0 = self._num[0]
        if a0 == 0:
            raise NonUnitSeries("constant term is zero")
        # b <- b + b(1 - a b), doubling the number of correct coefficients.
        inv = FormalSeries._raw([self._den], a0)
        prec = 0
        while prec < self.order:
            prec = min(2 * prec + 1, self.order)
            a = self.truncate(prec)
            b = inv.extend_zero(prec)
            err = FormalSeries.one(prec) - a * b
            inv = b + b * err
        return inv

    def extend_zero(self, order: int) -> "FormalSeries":
        """Pad with zero coefficients; only for values known to be exact."""
        if order <= self.order:
            return self.truncate(order)
        return FormalSeries._raw(list(self._num) + [0] * (order - self.order), self._den)

    # -- structured fast paths ---------------------------------------------
    def shift(self, exponent: int, order: int | None = None) -> "FormalSeries":
        """Multiply by q^exponent.

        The product is known to order ``self.order + exponent``; ``order``
        caps the result.
        """
        known = self.order + exponent
        if order is None:
            order = known
        order = min(order, known)
        if exponent < 0:
            lead = self._num[: -exponent]
            if any(lead):
                raise NegativeExponentTerm(f"shift by q^{exponent} leaves negative powers")
            return FormalSeries._raw(self._num[-exponent: -exponent + order + 1], self._den)
        if order < 0:
            raise OrderTooLarge("shift leaves nothing below the truncation order")
        num = [0] * min(exponent, order + 1) + list(self._num[: max(0, order + 1 - exponent)])
        return FormalSeries._raw(num, self._den)

    def mul_binomial(self, c: Scalar, exponent: int) -> "FormalSeries":
        """Multiply by (1 - c q^exponent), exponent >= 0."""
        c = _as_fraction(c)
        if exponent == 0:
            return self.scale(1 - c)
        num = self._num
        if c.denominator == 1:
            ci = c.numerator
            out = list(num)
            for i in range(exponent, len(num)):
                out[i] -= ci * num[i - exponent]
            return FormalSeries._raw(out, self._den)
        p, s = c.numerator, c.denominator
        out = [x * s for x in num]
        for i in range(exponent, len(num)):
            out[i] -= p * num[i - exponent]
        return FormalSeries._raw(out, self._den * s)

    def div_binomial(self, c: Scalar, exponent: int) -> "FormalSeries":
        """Divide by (1 - c q^exponent), exponent >= 0."""
        c = _as_fraction(c)
        if exponent == 0:
            if c == 1:
                raise NonUnitSeries("division by 1 - 1")
            return self.scale(1 / (1 - c))
        if c.denominator == 1:
            ci = c.numerator
            out = list(self._num)
            for i in range(exponent, len(out)):
                out[i] += ci * out[i - exponent]
            return FormalSeries._raw(out, self._den)
        out = list(self.coeffs)
        for i in range(exponent, len(out)):
            out[i] += c * out[i - exponent]
        return FormalSeries(out, self.order)

    def mul_sparse(self, terms) -> "FormalSeries":
        """Multiply by a polynomial given as (coeff, exponent) pairs, exponent >= 0."""
        terms = [(_as_fraction(c), e) for c, e in terms if c != 0]
        den = math.lcm(*(c.denominator for c, _ in terms)) if terms else 1
        n = len(self._num)
        out = [0] * n
        for c, e in terms:
            ci = c.numerator * (den // c.denominator)
            src = self._num
            for i in range(e, n):
                out[i] += ci * src[i - e]
        return FormalSeries._raw(out, self._den * den)

    def substitute_power(self, k: int) -> "FormalSeries":
        """a(q^k), truncated to the same order."""
        if k < 1:
            raise ValueError("substitution power must be positive")
        if k == 1:
            return self
        num = [0] * (self.order + 1)
        for i in range(self.order // k + 1):
            num[i * k] = self._num[i]
        return FormalSeries._raw(num, self._den)

    def substitute_negate(self) -> "FormalSeries":
        """a(-q)."""
        return FormalSeries._raw(
            [-c if i & 1 else c for i, c in enumerate(self._num)], self._den
        )


@dataclass(frozen=True)
class Term:
    """A single coeff * q^exponent; the exponent may be negative."""

    coeff: Fraction
    exponent: int

    def __mul__(self, other: "Term") -> "Term":
        return Term(self.coeff * other.coeff, self.exponent + other.exponent)

    def to_series(self, order: int) -> FormalSeries:
        if self.exponent < 0 and self.coeff != 0:
            raise NegativeExponentTerm(f"term q^{self.exponent} has negative degree")
        return FormalSeries.monomial(self.coeff, max(self.exponent, 0), order)


@dataclass(frozen=True)
class Mismatch:
    exponent: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class Comparison:
    equal: bool
    mismatch: Mismatch | None = None

    def __bool__(self):
        return self.equal


def series_add(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    return a + b


def series_mul(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    return a * b


def series_invert(a: FormalSeries) -> FormalSeries:
    return a.invert()


def substitute_power(a: FormalSeries, k: int) -> FormalSeries:
    return a.substitute_power(k)


def substitute_negate(a: FormalSeries) -> FormalSeries:
    return a.substitute_negate()


def equal_to_order(a: FormalSeries, b: FormalSeries, n: int) -> Comparison:
    """Compare coefficients 0..n exactly and report the first difference."""
    if n > a.order or n > b.order:
        raise OrderTooLarge(f"order {n} exceeds series orders ({a.order}, {b.order})")
    if a._den == b._den and a._num[: n + 1] == b._num[: n + 1]:
        return Comparison(True)
    for i in range(n + 1):
        if a[i] != b[i]:
            return Comparison(False, Mismatch(i, a[i], b[i]))
    return Comparison(True)
