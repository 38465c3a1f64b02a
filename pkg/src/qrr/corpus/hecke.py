"""Generalized Hecke-type double sums.

    sum_{n >= 0} sum_{j in D(n)} (-1)^{H(n,j)} w(j) q^{Q(n,j) + L(n,j)}

with an indefinite Q allowed.  D(n) is a floor-bounded j-range.  Totals must
stay non-negative integers inside D; that is asserted for every term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..errors import NegativeExponentTerm
from ..series import FormalSeries


@dataclass(frozen=True)
class Region:
    """j from -floor(n/div) (or 0) to floor(n/div)."""

    div: int = 1
    symmetric: bool = False

    def bounds(self, n: int):
        hi = n // self.div
        return (-hi if self.symmetric else 0), hi

    def indices(self, n: int):
        lo, hi = self.bounds(n)
        return range(lo, hi + 1)


@dataclass(frozen=True)
class HeckeSpec:
    # Q = qa n^2 + qb n j + qc j^2,  L = ld n + le j + lf,  H = hn n + hj j + h0
    quadratic: tuple
    linear: tuple
    sign: tuple
    region: Region
    weight: Callable[[int], Fraction] | None = field(default=None, compare=False)
    scale: Fraction = Fraction(1)

    def exponent(self, n: int, j: int) -> Fraction:
        qa, qb, qc = self.quadratic
        ld, le, lf = self.linear
        return qa * n * n + qb * n * j + qc * j * j + ld * n + le * j + lf

    def sign_of(self, n: int, j: int) -> int:
        hn, hj, h0 = self.sign
        return -1 if (hn * n + hj * j + h0) % 2 else 1

    def lower_bound(self, n: int) -> Fraction:
        """Lower bound of Q + L over D(n), valid for n >= 0."""
        qa, qb, qc = (Fraction(v) for v in self.quadratic)
        ld, le, lf = (Fraction(v) for v in self.linear)
        r = Fraction(1, self.region.div)
        lead = qa - abs(qb) * r + min(qc, 0) * r * r
        if lead <= 0:
            raise ValueError("quadratic form is not bounded below on the region")
        return lead * n * n + (ld - abs(le) * r) * n + lf

    def n_limit(self, order: int) -> int:
        """First n from which every term lies beyond ``order``."""
        n = 0
        while self.lower_bound(n) <= order or self.lower_bound(n + 1) < self.lower_bound(n):
            n += 1
        return n


def hecke_terms(spec: HeckeSpec, n: int):
    """(coefficient, exponent) for every j in D(n), before truncation."""
    out = []
    for j in spec.region.indices(n):
        e = Fraction(spec.exponent(n, j))
        if e.denominator != 1:
            raise NegativeExponentTerm(f"non-integral exponent {e} at (n, j) = ({n}, {j})")
        e = int(e)
        if e < 0:
            raise NegativeExponentTerm(f"q^{e} at (n, j) = ({n}, {j})")
        c = spec.scale * spec.sign_of(n, j)
        if spec.weight is not None:
            c *= spec.weight(j)
        out.append((j, c, e))
    return out


def hecke_eval(spec: HeckeSpec | Sequence[HeckeSpec], order: int, residue: tuple | None = None) -> FormalSeries:
    """Truncated double sum; several specs are added.  ``residue=(r, m)``
    keeps only j = r (mod m)."""
    specs = (spec,) if isinstance(spec, HeckeSpec) else tuple(spec)
    acc = [Fraction(0)] * (order + 1)
    for s in specs:
        for n in range(s.n_limit(order)):
            for j, c, e in hecke_terms(s, n):
                if residue is not None and j % residue[1] != residue[0] % residue[1]:
                    continue
                if e <= order:
                    acc[e] += c
    return FormalSeries(acc, order)
