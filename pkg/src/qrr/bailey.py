"""Bailey pairs, the four weak forms of Bailey's lemma and the multisum chain.

A pair is stored with its base q^b (``base_power``) and its ``a`` parameter as
a monomial in q.  The sequences are generators ``n, order -> FormalSeries``.

Infinite sums over n are cut where the weight's q-degree passes the
truncation order; every cut below is justified by a degree bound, never by
looking at computed coefficients.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .chebyshev import cheb_v, cheb_v_plus_prev
from .errors import UnsupportedAParameter
from .qfunctions import SignedMonomial, mono, pochhammer_finite, pochhammer_infinite
from .report import FAIL, PASS, Stopwatch, VerificationReport
from .series import FormalSeries, equal_to_order

Generator = Callable[[int, int], FormalSeries]


@dataclass(frozen=True)
class BaileyPair:
    name: str
    alpha: Generator
    beta: Generator
    a_param: SignedMonomial
    base_power: int
    # Lower bound for the q-valuation of alpha_n; must be non-decreasing.
    alpha_valuation: Callable[[int], int]

    @property
    def a_is_one(self) -> bool:
        return self.a_param.coeff == 1 and self.a_param.exponent == 0


class WeakFormId(enum.Enum):
    WF1 = "WF1"
    WF2 = "WF2"
    WF3 = "WF3"
    WF4 = "WF4"


@lru_cache(maxsize=8192)
def _recip_poch(coeff: Fraction, exponent: int, base_power: int, n: int, order: int) -> FormalSeries:
    s = FormalSeries.one(order)
    for j in range(n):
        e = exponent + base_power * j
        if e > order:
            break
        s = s.div_binomial(coeff, e)
    return s


def recip_poch(a: SignedMonomial, base_power: int, n: int, order: int) -> FormalSeries:
    """Cached 1/(a; q^b)_n for n >= 0."""
    return _recip_poch(a.coeff, a.exponent, base_power, n, order)


def product_factors(x: Fraction, step: int, n: int, order: int, offset: int = 0) -> FormalSeries:
    """prod_{j=1}^{n} (1 + 2x q^{e_j} + q^{2 e_j}), e_j = step*j - offset."""
    s = FormalSeries.one(order)
    two_x = 2 * Fraction(x)
    for j in range(1, n + 1):
        e = step * j - offset
        if e > order:
            break
        s = s.mul_sparse(((1, 0), (two_x, e), (1, 2 * e)))
    return s


# -- the two concrete pairs -------------------------------------------------

def key_pair(x, order: int | None = None) -> BaileyPair:
    """alpha_n = q^{n^2}(V_n + V_{n-1})(x),
    beta_n = prod_{j<=n}(1 + 2x q^{2j-1} + q^{4j-2}) / (q^2;q^2)_{2n};
    a = 1, base q^2."""
    x = Fraction(x)

    def alpha(n, order):
        return FormalSeries.monomial(cheb_v_plus_prev(x, n), n * n, order)

    def beta(n, order):
        return product_factors(x, 2, n, order, offset=1) * recip_poch(mono(1, 2), 2, 2 * n, order)

    return BaileyPair(f"key(x={x})", alpha, beta, mono(1, 0), 2, lambda n: n * n)


def andrews_pair(x, order: int | None = None) -> BaileyPair:
    """alpha_n = q^{n(n+1)/2} V_n(x) / (1-q),
    beta_n = prod_{j<=n}(1 + 2x q^j + q^{2j}) / (q;q)_{2n+1};  a = q, base q."""
    x = Fraction(x)

    def alpha(n, order):
        return FormalSeries.monomial(cheb_v(x, n), n * (n + 1) // 2, order).div_binomial(1, 1)

    def beta(n, order):
        return product_factors(x, 1, n, order) * recip_poch(mono(1, 1), 1, 2 * n + 1, order)

    return BaileyPair(f"andrews(x={x})", alpha, beta, mono(1, 1), 1, lambda n: n * (n + 1) // 2)


# -- definition checker -----------------------------------------------------

def bailey_relation(p: BaileyPair, n: int, order: int) -> FormalSeries:
    """sum_j alpha_j / ((q^b;q^b)_{n-j} (a q^b; q^b)_{n+j})."""
    b = p.base_power
    base = mono(1, b)
    aq = SignedMonomial(p.a_param.coeff, p.a_param.exponent + b)
    total = FormalSeries.zero(order)
    for j in range(n + 1):
        if p.alpha_valuation(j) > order:
            break
        total = total + p.alpha(j, order) * recip_poch(base, b, n - j, order) * recip_poch(aq, b, n + j, order)
    return total


def check_bailey_pair(p: BaileyPair, n_max: int, order: int) -> VerificationReport:
    """Check beta_n against the defining sum for every n <= n_max."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    sw = Stopwatch()
    for n in range(n_max + 1):
        cmp = equal_to_order(p.beta(n, order), bailey_relation(p, n, order), order)
        if not cmp:
            return VerificationReport(f"bailey:{p.name}", order, FAIL, sw.ms, cmp.mismatch, {"n": n})
    return VerificationReport(f"bailey:{p.name}", order, PASS, sw.ms, context={"n_max": n_max})


# -- weak forms ---------------------------------------------------------------

def weak_form_weight_degree(wf: WeakFormId, n: int, base_power: int) -> int:
    """Lower bound on the q-degree of the n-th LHS weight (times beta_n)."""
    b = base_power
    if wf is WeakFormId.WF1:
        return b * n * n
    if wf is WeakFormId.WF2:
        return (b // 2) * n * n
    if wf is WeakFormId.WF3:
        return 0
    return b * n * (n + 1) // 2


def _count(degree: Callable[[int], int], order: int) -> int:
    """Number of leading indices whose (increasing) degree is <= order."""
    n = 0
    while degree(n) <= order:
        n += 1
    return n


def _alpha_sum(p: BaileyPair, weight: Callable[[int, int], FormalSeries], weight_deg, order: int) -> FormalSeries:
    total = FormalSeries.zero(order)
    n = 0
    while weight_deg(n) <= order:
        if weight_deg(n) + p.alpha_valuation(n) <= order:
            sub = order - weight_deg(n)
            term = weight(n, sub) * p.alpha(n, sub)
            total = total + term.shift(weight_deg(n), order)
        n += 1
    return total


def _require_a_one(p: BaileyPair):
    if not p.a_is_one:
        raise UnsupportedAParameter(f"weak forms are stated at a = 1, pair has a = {p.a_param}")


def _wf3_tail_valuation(p: BaileyPair, n: int) -> int:
    # valuation of (P;P^2)_n beta_n minus its limit is at least this.
    b = p.base_power
    best = p.alpha_valuation(n + 1)
    for j in range(n + 1):
        best = min(best, p.alpha_valuation(j) + b * (n + 1 - j))
    return best


def abel_alternating_sum(terms: list) -> FormalSeries:
    """Abel sum of sum_n (-1)^n t_n where t_n is constant from len(terms)-1 on.

    The last entry must already equal the limit L to the working order; the
    value is sum_n (-1)^n (t_n - L) + L/2.
    """
    limit = terms[-1]
    total = limit.scale(Fraction(1, 2))
    for n, t in enumerate(terms[:-1]):
        d = t - limit
        total = total - d if n & 1 else total + d
    return total


def apply_weak_form(wf: WeakFormId, p: BaileyPair, order: int):
    """Both sides of one weak form of Bailey's lemma for the pair ``p``.

    The pair's base q^b plays the role of q, except in WF2 where the pair is
    taken in base q^b and the weights in q^{b/2}.  The WF3 left side does not
    converge term-wise and is evaluated as an Abel sum.
    """
    wf = WeakFormId(wf)
    _require_a_one(p)
    b = p.base_power
    P = mono(1, b)
    if wf is WeakFormId.WF1:
        lhs = FormalSeries.zero(order)
        for n in range(_count(lambda n: b * n * n, order)):
            lhs = lhs + p.beta(n, order - b * n * n).shift(b * n * n, order)
        rhs = _alpha_sum(p, lambda n, o: FormalSeries.one(o), lambda n: b * n * n, order)
        rhs = rhs * pochhammer_infinite(P, b, order).invert()
        return lhs, rhs

    if wf is WeakFormId.WF2:
        if b % 2:
            raise UnsupportedAParameter("WF2 needs a pair in an even base q^(2r)")
        r = b // 2
        neg_q = mono(-1, r)
        lhs = FormalSeries.zero(order)
        for n in range(_count(lambda n: r * n * n, order)):
            sub = order - r * n * n
            lhs = lhs + (pochhammer_finite(neg_q, b, n, sub) * p.beta(n, sub)).shift(r * n * n, order)
        rhs = _alpha_sum(p, lambda n, o: FormalSeries.one(o), lambda n: r * n * n, order)
        pref = pochhammer_infinite(neg_q, b, order) * pochhammer_infinite(P, b, order).invert()
        return lhs, pref * rhs

    if wf is WeakFormId.WF3:
        N = 0
        while _wf3_tail_valuation(p, N) <= order:
            N += 1
        terms = [pochhammer_finite(P, 2 * b, n, order) * p.beta(n, order) for n in range(N + 1)]
        lhs = abel_alternating_sum(terms).scale(2)
        rhs = FormalSeries.zero(order)
        n = 0
        while p.alpha_valuation(n) <= order:
            a_n = p.alpha(n, order)
            rhs = rhs - a_n if n & 1 else rhs + a_n
            n += 1
        pref = pochhammer_infinite(P, 2 * b, order) * pochhammer_infinite(mono(1, 2 * b), 2 * b, order).invert()
        return lhs, pref * rhs

    # WF4
    def tri(n):
        return b * n * (n + 1) // 2

    minus_one = mono(-1, 0)
    lhs = FormalSeries.zero(order)
    for n in range(_count(tri, order)):
        sub = order - tri(n)
        lhs = lhs + (pochhammer_finite(minus_one, b, n, sub) * p.beta(n, sub)).shift(tri(n), order)

    def weight(n, o):
        # (-1;P)_n / (-P;P)_n = 2/(1 + P^n) for n >= 1
        if n == 0:
            return FormalSeries.one(o)
        return FormalSeries.constant(2, o).div_binomial(-1, b * n)

    rhs = _alpha_sum(p, weight, tri, order)
    pref = pochhammer_infinite(mono(-1, b), b, order) * pochhammer_infinite(P, b, order).invert()
    return lhs, pref * rhs


# -- multisum -----------------------------------------------------------------

def apply_multisum(p: BaileyPair, k: int, order: int):
    """k-fold iterate of Bailey's lemma (weights a^n q^{n^2} in the pair's base).

    lhs = sum over n_k >= ... >= n_1 >= 0 of
          a^{n_1+..+n_k} P^{n_1^2+..+n_k^2} beta_{n_1} / prod (P;P)_{n_{i+1}-n_i}
    rhs = 1/(aP;P)_inf sum_n P^{k n^2} a^{k n} alpha_n
    """
    if k < 1:
        raise ValueError("k must be positive")
    b = p.base_power
    c, e = p.a_param.coeff, p.a_param.exponent
    P = mono(1, b)

    def deg(m):
        return b * m * m + e * m

    M = _count(deg, order)
    level = []
    for m in range(M):
        sub = order - deg(m)
        level.append((p.beta(m, sub) * c ** m).shift(deg(m), order))
    for _ in range(k - 1):
        nxt = []
        for m in range(M):
            sub = order - deg(m)
            inner = FormalSeries.zero(sub)
            for l in range(m + 1):
                inner = inner + level[l].truncate(sub) * recip_poch(P, b, m - l, sub)
            nxt.append((inner * c ** m).shift(deg(m), order))
        level = nxt
    lhs = FormalSeries.zero(order)
    for s in level:
        lhs = lhs + s

    def wdeg(n):
        return k * (b * n * n + e * n)

    rhs = _alpha_sum(p, lambda n, o: FormalSeries.constant(c ** (k * n), o), wdeg, order)
    aP = SignedMonomial(c, e + b)
    rhs = rhs * pochhammer_infinite(aP, b, order).invert()
    return lhs, rhs


# -- finite identities ----------------------------------------------------------

def sample_points(count: int) -> list:
    """0, 1/2, -1/2, 1, -1, 3/2, -3/2, 2, -2, ... (distinct rationals)."""
    pts = [Fraction(0)]
    k = 1
    while len(pts) < count:
        pts.append(Fraction(k, 2))
        if len(pts) < count:
            pts.append(Fraction(-k, 2))
        k += 1
    return pts[:count]


def thm3_1_sides(n: int, x, order: int | None = None):
    """prod_{j<=n}(1+2x q^{2j-1}+q^{4j-2}) and sum_j q^{j^2}[2n, n-j]_{q^2} v_j(x)."""
    from .qfunctions import qbinomial

    deg = 2 * n * n
    order = deg if order is None else order
    lhs = product_factors(x, 2, n, order, offset=1)
    rhs = FormalSeries.zero(order)
    for j in range(n + 1):
        if j * j > order:
            break
        term = qbinomial(2 * n, n - j, 2, order - j * j).shift(j * j, order)
        rhs = rhs + term.scale(cheb_v_plus_prev(x, j))
    return lhs, rhs


def andrews1_2_sides(n: int, x, order: int | None = None):
    """prod_{j<=n}(1+2x q^j+q^{2j}) and sum_j q^{j(j+1)/2} V_j(x) [2n+1, n-j]."""
    from .qfunctions import qbinomial

    deg = n * (n + 1)
    order = deg if order is None else order
    lhs = product_factors(x, 1, n, order)
    rhs = FormalSeries.zero(order)
    for j in range(n + 1):
        t = j * (j + 1) // 2
        if t > order:
            break
        rhs = rhs + qbinomial(2 * n + 1, n - j, 1, order - t).shift(t, order).scale(cheb_v(x, j))
    return lhs, rhs


FINITE_IDENTITIES = {"thm3_1": thm3_1_sides, "andrews1_2": andrews1_2_sides}


def finite_identity_check(which: str, n: int, order: int | None = None, points=None) -> VerificationReport:
    """Check a polynomial-in-x identity at n+2 distinct rational points.

    Both sides have x-degree <= n, so agreement at n+1 points already proves
    the identity; each point is compared to the full q-degree by default.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    sides = FINITE_IDENTITIES[which]
    pts = sample_points(n + 2) if points is None else list(points)
    sw = Stopwatch()
    used = 0
    for x in pts:
        lhs, rhs = sides(n, x, order)
        used = lhs.order
        cmp = equal_to_order(lhs, rhs, used)
        if not cmp:
            return VerificationReport(which, used, FAIL, sw.ms, cmp.mismatch, {"n": n, "x": x})
    return VerificationReport(which, used, PASS, sw.ms, context={"n": n, "points": len(pts)})
