"""Bilateral Appell-Lerch sums and residue-class regrouping.

    sum_{n in Z} scale * (-1)^{l n} P^{l n(n+1)/2} b^n / (1 - a P^n),  P = q^base

For negative n the denominator 1 - c q^E with E < 0 is rewritten as
-(1/c) q^{-E} / (1 - q^{-E}/c), so only non-negative powers are ever
materialised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import NegativeExponentTerm, NonRealSum, SingularTerm
from ..qfunctions import SignedMonomial
from ..series import FormalSeries, Term, _as_fraction


@dataclass(frozen=True)
class AppellLerchSpec:
    level: int
    a: SignedMonomial
    b: Term
    base_power: int = 1
    outer_scale: Fraction = Fraction(1)

    def numerator_degree(self, n: int) -> int:
        return self.base_power * self.level * n * (n + 1) // 2 + self.b.exponent * n

    def denominator_exponent(self, n: int) -> int:
        return self.a.exponent + self.base_power * n

    def min_degree(self, n: int) -> int:
        return self.numerator_degree(n) + max(0, -self.denominator_exponent(n))

    def index_range(self, order: int):
        if self.level * self.base_power <= 0:
            raise ValueError("Appell-Lerch sums need a positive level")
        f = self.min_degree
        hi = 0
        while f(hi + 1) <= order or f(hi + 1) < f(hi):
            hi += 1
        lo = 0
        while f(lo - 1) <= order or f(lo - 1) < f(lo):
            lo -= 1
        return lo, hi

    def term_series(self, n: int, order: int) -> list:
        """(coefficient, exponent) pairs of the n-th term expanded to ``order``."""
        c = self.a.coeff
        num = self.outer_scale * (-1) ** ((self.level * n) & 1) * self.b.coeff ** n
        deg = self.numerator_degree(n)
        E = self.denominator_exponent(n)
        if E == 0:
            if c == 1:
                raise SingularTerm(f"1 - a q^0 vanishes at n = {n}")
            return [(num / (1 - c), deg)] if deg <= order else []
        if E < 0:
            num, deg, c, E = -num / c, deg - E, 1 / c, -E
        out = []
        ck = Fraction(1)
        e = deg
        while e <= order:
            out.append((num * ck, e))
            ck *= c
            e += E
        return out


def appell_lerch_eval(spec: AppellLerchSpec, order: int, residue: tuple | None = None) -> FormalSeries:
    """Truncated bilateral sum; ``residue=(r, m)`` keeps only n = r (mod m)."""
    acc = [Fraction(0)] * (order + 1)
    lo, hi = spec.index_range(order)
    for n in range(lo, hi + 1):
        if residue is not None and n % residue[1] != residue[0] % residue[1]:
            continue
        for coeff, e in spec.term_series(n, order):
            if e < 0:
                raise NegativeExponentTerm(f"term n={n} has q^{e}")
            acc[e] += coeff
    return FormalSeries(acc, order)


def cyclotomic_regroup(s0: FormalSeries, s1: FormalSeries, s2: FormalSeries) -> FormalSeries:
    """Real value of sum w^n f(n), w = exp(2 pi i/3), from residue-class sums.

    The imaginary part is sqrt(3)/2 * (S1 - S2); it must vanish.
    """
    n = min(s0.order, s1.order, s2.order)
    s1, s2 = s1.truncate(n), s2.truncate(n)
    if s1 != s2:
        diff = s1 - s2
        raise NonRealSum(f"residue classes 1 and 2 differ from q^{diff.valuation()} on")
    return s0.truncate(n) - s1


def mono_term(coeff, exponent: int) -> Term:
    return Term(_as_fraction(coeff), exponent)
