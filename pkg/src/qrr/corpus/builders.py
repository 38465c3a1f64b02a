"""Native builders for both sides of every registered identity.

Left sides are built from their own Pochhammer factors, never by
specialising the x-parametric theorems, so each specialisation is an
independent check.  Every builder takes ``order`` last; x-parametric ones take
``x`` first.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable

from ..bailey import abel_alternating_sum, product_factors, recip_poch
from ..chebyshev import cheb_v, cheb_v_plus_prev, fibonacci, lucas
from ..qfunctions import SignedMonomial, mono, pochhammer_finite, pochhammer_infinite, pochhammer_reciprocal
from ..series import FormalSeries
from .appell_lerch import AppellLerchSpec, appell_lerch_eval, cyclotomic_regroup, mono_term
from .hecke import HeckeSpec, Region, hecke_eval

F = Fraction


# -- small vocabulary -------------------------------------------------------

def poch(c, e: int, b: int, n: int, order: int) -> FormalSeries:
    """(c q^e; q^b)_n."""
    return pochhammer_finite(SignedMonomial(F(c), e), b, n, order)


def rpoch(c, e: int, b: int, n: int, order: int) -> FormalSeries:
    """1/(c q^e; q^b)_n; the n = -1 case is the Pochhammer convention."""
    if n < 0:
        return pochhammer_reciprocal(SignedMonomial(F(c), e), b, n, order)
    return recip_poch(SignedMonomial(F(c), e), b, n, order)


def pinf(c, e: int, b: int, order: int) -> FormalSeries:
    """(c q^e; q^b)_inf."""
    return pochhammer_infinite(SignedMonomial(F(c), e), b, order)


def rinf(c, e: int, b: int, order: int) -> FormalSeries:
    return pinf(c, e, b, order).invert()


def trinomial(c, n: int, order: int, step: int = 2, offset: int = 1) -> FormalSeries:
    """prod_{i=1}^{n} (1 + c q^{e_i} + q^{2 e_i}), e_i = step*i - offset."""
    return product_factors(F(c) / 2, step, n, order, offset)


def sum_weighted(deg: Callable[[int], int], body: Callable[[int, int], FormalSeries], order: int) -> FormalSeries:
    """sum_n q^{deg(n)} body(n, order - deg(n)); deg must be non-decreasing."""
    total = FormalSeries.zero(order)
    n = 0
    while deg(n) <= order:
        d = deg(n)
        total = total + body(n, order - d).shift(d, order)
        n += 1
    return total


def theta(deg: Callable[[int], int], coeff: Callable[[int], Fraction], order: int, start: int = 0) -> FormalSeries:
    """sum_{n >= start} coeff(n) q^{deg(n)} for an increasing deg."""
    acc = {}
    n = start
    while deg(n) <= order:
        acc[deg(n)] = acc.get(deg(n), 0) + F(coeff(n))
        n += 1
    return FormalSeries.from_dict(acc, order)


def max_index(deg: Callable[[int], int], order: int) -> int:
    """Largest n with deg(n) <= order (deg increasing, deg(0) <= order)."""
    n = 0
    while deg(n + 1) <= order:
        n += 1
    return n


def fib_pair_sum(n: int) -> int:
    """F_{2n+1} + F_{2n-1}, read as 1 at n = 0 so that it equals v_n(3/2)."""
    return fibonacci(2 * n + 1) + (fibonacci(2 * n - 1) if n >= 1 else 0)


# -- Dyson and its x-generalisation (base q, a = q) -------------------------

def dyson_lhs(order):
    return sum_weighted(
        lambda n: n * n + n,
        lambda n, o: trinomial(1, n, o, step=1, offset=0) * rpoch(1, 1, 1, 2 * n + 1, o),
        order,
    )


def dyson_rhs(order):
    return pinf(1, 9, 9, order) * rinf(1, 1, 1, order)


def andrews14_lhs(x, order):
    return sum_weighted(
        lambda n: n * n + n,
        lambda n, o: trinomial(2 * F(x), n, o, step=1, offset=0) * rpoch(1, 1, 1, 2 * n + 1, o),
        order,
    )


def andrews14_rhs(x, order):
    return theta(lambda n: 3 * n * (n + 1) // 2, lambda n: cheb_v(x, n), order) * rinf(1, 1, 1, order)


# -- the key pair through the first weak form -------------------------------

def _wf1_lhs(c, order):
    return sum_weighted(
        lambda n: 2 * n * n,
        lambda n, o: trinomial(c, n, o) * rpoch(1, 2, 2, 2 * n, o),
        order,
    )


def entry534_lhs(order):
    return _wf1_lhs(1, order)


def entry534_rhs(order):
    num = pinf(1, 1, 6, order) * pinf(1, 5, 6, order) * pinf(1, 6, 6, order) * pinf(1, 9, 18, order)
    return num * rinf(1, 1, 1, order)


def thm11_lhs(x, order):
    return _wf1_lhs(2 * F(x), order)


def thm11_rhs(x, order):
    return theta(lambda n: 3 * n * n, lambda n: cheb_v_plus_prev(x, n), order) * rinf(1, 2, 2, order)


def entry533_lhs(order):
    return sum_weighted(lambda n: 2 * n * n, lambda n, o: poch(1, 1, 2, n, o) ** 2 * rpoch(1, 2, 2, 2 * n, o), order)


def entry533_rhs(order):
    return pinf(1, 3, 3, order) * pinf(1, 3, 6, order) * rinf(1, 2, 2, order)


def entry532_lhs(order):
    return sum_weighted(lambda n: n * n, lambda n, o: poch(-1, 1, 2, n, o) * rpoch(1, 1, 1, 2 * n, o), order)


def entry532_rhs(order):
    return pinf(1, 6, 12, order) * pinf(1, 6, 6, order) * rinf(1, 1, 1, order)


def fib44a_lhs(order):
    return _wf1_lhs(3, order)


def fib44a_rhs(order):
    return theta(lambda n: 3 * n * n, fib_pair_sum, order) * rinf(1, 2, 2, order)


def fib44b_lhs(order):
    return _wf1_lhs(-3, order)


def fib44b_rhs(order):
    s = theta(lambda n: 3 * n * n, lambda n: (-1) ** n * lucas(2 * n), order, start=1)
    return (s + 1) * rinf(1, 2, 2, order)


# -- multisums --------------------------------------------------------------

def nested_sum(k: int, weight: int, base: int, inner: Callable[[int, int], FormalSeries], order: int) -> FormalSeries:
    """sum over n_k >= ... >= n_1 >= 0 of
    q^{weight * sum n_i^2} inner(n_1) / prod (q^b;q^b)_{n_{i+1} - n_i},
    enumerated tuple by tuple."""
    total = FormalSeries.zero(order)

    def walk(prefix, last, deg):
        if len(prefix) == k:
            sub = order - deg
            term = inner(prefix[0], sub)
            for lo, hi in itertools.pairwise(prefix):
                term = term * rpoch(1, base, base, hi - lo, sub)
            nonlocal total
            total = total + term.shift(deg, order)
            return
        m = last
        while deg + weight * m * m * (k - len(prefix)) <= order:
            walk(prefix + (m,), m, deg + weight * m * m)
            m += 1

    walk((), 0, 0)
    return total


def multisum_lhs(k, x, order):
    return nested_sum(k, 2, 2, lambda n, o: trinomial(2 * F(x), n, o) * rpoch(1, 2, 2, 2 * n, o), order)


def multisum_rhs(k, x, order):
    return theta(lambda n: (2 * k + 1) * n * n, lambda n: cheb_v_plus_prev(x, n), order) * rinf(1, 2, 2, order)


def cor46a_lhs(k, order):
    return nested_sum(k, 2, 2, lambda n, o: poch(1, 1, 2, n, o) ** 2 * rpoch(1, 2, 2, 2 * n, o), order)


def cor46a_rhs(k, order):
    m = 2 * k + 1
    return pinf(1, m, 2 * m, order) ** 2 * pinf(1, 2 * m, 2 * m, order) * rinf(1, 2, 2, order)


def cor46b_lhs(k, order):
    return nested_sum(
        k, 2, 2,
        lambda n, o: poch(1, 3, 6, n, o) * rpoch(1, 2, 2, 2 * n, o) * rpoch(1, 1, 2, n, o),
        order,
    )


def cor46b_rhs(k, order):
    m = 2 * k + 1
    num = pinf(1, 2 * m, 2 * m, order) * pinf(1, 3 * m, 6 * m, order)
    return num * rinf(1, 2, 2, order) * rinf(1, m, 2 * m, order)


def cor46c_lhs(k, order):
    return nested_sum(k, 1, 1, lambda n, o: poch(-1, 1, 2, n, o) * rpoch(1, 1, 1, 2 * n, o), order)


def cor46c_rhs(k, order):
    m = 4 * k + 2
    return pinf(1, m, 2 * m, order) ** 2 * pinf(1, 2 * m, 2 * m, order) * rinf(1, 1, 1, order)


def cor46d_lhs(k, order):
    return nested_sum(k, 2, 2, lambda n, o: trinomial(3, n, o) * rpoch(1, 2, 2, 2 * n, o), order)


def cor46d_rhs(k, order):
    return theta(lambda n: (2 * k + 1) * n * n, fib_pair_sum, order) * rinf(1, 2, 2, order)


# -- second weak form -------------------------------------------------------

def thm51_lhs(x, order):
    return sum_weighted(
        lambda n: n * n,
        lambda n, o: poch(-1, 1, 2, n, o) * trinomial(2 * F(x), n, o) * rpoch(1, 2, 2, 2 * n, o),
        order,
    )


def thm51_rhs(x, order):
    pre = pinf(-1, 1, 2, order) * rinf(1, 2, 2, order)
    return pre * theta(lambda n: 2 * n * n, lambda n: cheb_v_plus_prev(x, n), order)


def b_m1_lhs(order):
    return sum_weighted(lambda n: n * n, lambda n, o: poch(1, 1, 2, n, o) * rpoch(1, 4, 4, n, o), order)


def b_m1_rhs(order):
    return pinf(1, 2, 4, order) ** 2 * rinf(1, 1, 2, order)


def b_m12_lhs(order):
    return sum_weighted(lambda n: n * n, lambda n, o: poch(-1, 3, 6, n, o) * rpoch(1, 2, 2, 2 * n, o), order)


def b_m12_rhs(order):
    return pinf(-1, 1, 1, order) * pinf(-1, 6, 12, order) * rinf(-1, 2, 4, order)


def b_0_lhs(order):
    return sum_weighted(
        lambda n: n * n,
        lambda n, o: poch(-1, 2, 4, n, o) * rpoch(1, 1, 2, n, o) * rpoch(1, 4, 4, n, o),
        order,
    )


def b_0_rhs(order):
    return pinf(-1, 1, 2, order) * pinf(1, 8, 8, order) * pinf(1, 8, 16, order) * rinf(1, 2, 2, order)


def b_12_lhs(order):
    return sum_weighted(
        lambda n: n * n,
        lambda n, o: poch(-1, 1, 2, n, o) * poch(1, 3, 6, n, o) * rpoch(1, 2, 2, 2 * n, o) * rpoch(1, 1, 2, n, o),
        order,
    )


def b_12_rhs(order):
    return pinf(1, 4, 4, order) * pinf(1, 6, 12, order) * rinf(1, 1, 1, order)


def b_1_lhs(order):
    return sum_weighted(lambda n: n * n, lambda n, o: poch(-1, 1, 2, n, o) ** 3 * rpoch(1, 2, 2, 2 * n, o), order)


def b_1_rhs(order):
    return pinf(-1, 2, 4, order) ** 2 * rinf(1, 1, 2, order)


def b_32_lhs(order):
    return sum_weighted(
        lambda n: n * n,
        lambda n, o: poch(-1, 1, 2, n, o) * trinomial(3, n, o) * rpoch(1, 2, 2, 2 * n, o),
        order,
    )


def b_32_rhs(order):
    pre = pinf(-1, 1, 2, order) * rinf(1, 2, 2, order)
    return pre * theta(lambda n: 2 * n * n, fib_pair_sum, order)


# -- third weak form: Abel-summed alternating series -------------------------

def abel_sum(numer: Callable[[int, int], FormalSeries], first_exponent: Callable[[int], int], order: int) -> FormalSeries:
    """Abel value of sum_n (-1)^n t_n where t_n -> L q-adically.

    ``numer(n, order)`` is t_n; ``first_exponent(n)`` is a non-decreasing
    lower bound for the valuation of t_n - t_{n-1}.  Summation stops at the
    first N with first_exponent(N+1) > order, where t_N = L to ``order``.
    """
    N = 0
    while first_exponent(N + 1) <= order:
        N += 1
    return abel_alternating_sum([numer(n, order) for n in range(N + 1)])


def _abel_wf3(c, order):
    # t_n = prod (1 + c q^{2i-1} + q^{4i-2}) / (q^4;q^4)_n, new factors at q^{2n-1}.
    return abel_sum(lambda n, o: trinomial(c, n, o) * rpoch(1, 4, 4, n, o), lambda n: 2 * n - 1, order).scale(2)


def thm53_lhs(x, order):
    return _abel_wf3(2 * F(x), order)


def thm53_rhs(x, order):
    pre = pinf(1, 2, 4, order) * rinf(1, 4, 4, order)
    return pre * theta(lambda n: n * n, lambda n: (-1) ** n * cheb_v_plus_prev(x, n), order)


def c_0_lhs(order):
    return abel_sum(lambda n, o: poch(-1, 1, 2, n, o) * rpoch(1, 2, 2, n, o), lambda n: n, order).scale(2)


def c_0_rhs(order):
    return pinf(1, 1, 4, order) * pinf(1, 2, 4, order) * pinf(1, 3, 4, order)


def c_m12_lhs(order):
    return abel_sum(
        lambda n, o: poch(-1, 3, 6, n, o) * rpoch(1, 4, 4, n, o) * rpoch(-1, 1, 2, n, o),
        lambda n: 2 * n - 1,
        order,
    ).scale(2)


def c_m12_rhs(order):
    return pinf(1, 2, 4, order) ** 2 * pinf(1, 3, 6, order) * rinf(1, 1, 2, order)


def c_1_lhs(order):
    return abel_sum(lambda n, o: poch(-1, 1, 2, n, o) ** 2 * rpoch(1, 4, 4, n, o), lambda n: 2 * n - 1, order).scale(2)


def c_1_rhs(order):
    return (pinf(1, 1, 4, order) * pinf(1, 2, 4, order) * pinf(1, 3, 4, order)) ** 2


def c_32_lhs(order):
    return _abel_wf3(3, order)


def c_32_rhs(order):
    pre = pinf(1, 2, 4, order) * rinf(1, 4, 4, order)
    return pre * theta(lambda n: n * n, lambda n: (-1) ** n * fib_pair_sum(n), order)


# -- fourth weak form and Appell-Lerch sums ---------------------------------

def _wf4_lhs(extra: Callable[[int, int], FormalSeries], order):
    return sum_weighted(
        lambda n: n * n + n,
        lambda n, o: poch(-1, 0, 2, n, o) * extra(n, o) * rpoch(1, 2, 2, 2 * n, o),
        order,
    )


def _wf4_prefactor(order):
    return pinf(-1, 2, 2, order) * rinf(1, 2, 2, order)


def thm61_lhs(x, order):
    return _wf4_lhs(lambda n, o: trinomial(2 * F(x), n, o), order)


def thm61_rhs(x, order):
    s = sum_weighted(
        lambda n: 2 * n * n + n,
        lambda n, o: (poch(-1, 0, 2, n, o) * rpoch(-1, 2, 2, n, o)).scale(cheb_v_plus_prev(x, n)),
        order,
    )
    return _wf4_prefactor(order) * s


# sum_{n in Z} q^{2n^2+n} / (1 + q^{2n}) as a level-2 Appell-Lerch sum in base q.
MU2_SPEC = AppellLerchSpec(level=2, a=mono(-1, 0), b=mono_term(1, -1), base_power=2)
# sum_{n in Z} (-1)^n q^{4n^2+n} / (1 + q^{2n}).
D3_SPEC = AppellLerchSpec(level=4, a=mono(-1, 0), b=mono_term(-1, -3), base_power=2)


def d_1_lhs(order):
    return _wf4_lhs(lambda n, o: poch(-1, 1, 2, n, o) ** 2, order)


def d_1_rhs(order):
    return _wf4_prefactor(order).scale(2) * appell_lerch_eval(MU2_SPEC, order)


def d_2_lhs(order):
    return _wf4_lhs(lambda n, o: poch(-1, 3, 6, n, o) * rpoch(-1, 1, 2, n, o), order)


def d_2_rhs(order):
    classes = [appell_lerch_eval(MU2_SPEC, order, residue=(r, 3)) for r in range(3)]
    return _wf4_prefactor(order).scale(2) * cyclotomic_regroup(*classes)


def d_3_lhs(order):
    return sum_weighted(
        lambda n: n * (n + 1) // 2,
        lambda n, o: poch(-1, 0, 1, n, o) * poch(-1, 1, 2, n, o) * rpoch(1, 1, 1, 2 * n, o),
        order,
    )


def d_3_rhs(order):
    return (pinf(-1, 1, 1, order) * rinf(1, 1, 1, order)).scale(2) * appell_lerch_eval(D3_SPEC, order)


def d_4_lhs(order):
    # Carries the weight q^{n^2+n} of the parent theorem; without it the sum
    # does not converge q-adically.
    return _wf4_lhs(lambda n, o: trinomial(3, n, o), order)


def d_4_rhs(order):
    s = sum_weighted(
        lambda n: 2 * n * n + n,
        lambda n, o: FormalSeries.one(o).div_binomial(-1, 2 * n).scale(fib_pair_sum(n)),
        order,
    )
    return _wf4_prefactor(order).scale(2) * s


def mu2_lhs(order):
    return sum_weighted(
        lambda n: n * n,
        lambda n, o: (poch(1, 1, 2, n, o) * rpoch(-1, 2, 2, n, o) ** 2).scale((-1) ** n),
        order,
    )


def mu2_rhs(order):
    pre = pinf(1, 1, 2, order) * rinf(-1, 2, 2, order)
    return pre * d_1_lhs(order)


def mu2_appell_lerch(order):
    """The Appell-Lerch expression 2 (q;q^2)_inf/(q^2;q^2)_inf * sum."""
    pre = pinf(1, 1, 2, order) * rinf(1, 2, 2, order)
    return pre.scale(2) * appell_lerch_eval(MU2_SPEC, order)


# -- Hecke-type double sums -------------------------------------------------

def _cheb_weight(x):
    x = F(x)
    return lambda j: cheb_v_plus_prev(x, j)


def thm71_spec(x) -> HeckeSpec:
    """(-1)^n q^{n^2+n-j^2} v_j(x), 0 <= j <= n/2."""
    return HeckeSpec((1, 0, -1), (1, 0, 0), (1, 0, 0), Region(2), _cheb_weight(x))


def thm75_specs(x) -> tuple:
    """q^{4n^2-2n-j^2}(1 - q^{12n+6}) v_j(x), 0 <= j <= n."""
    w = _cheb_weight(x)
    return (
        HeckeSpec((4, 0, -1), (-2, 0, 0), (0, 0, 0), Region(1), w),
        HeckeSpec((4, 0, -1), (10, 0, 6), (0, 0, 1), Region(1), w),
    )


COR72_SPEC = HeckeSpec((1, 0, -1), (1, 0, 0), (1, 1, 0), Region(2, symmetric=True))
COR73_SPEC = HeckeSpec((F(1, 2), 0, -2), (F(1, 2), 0, 0), (1, 1, 0), Region(4, symmetric=True))
# Carries the (-1)^n of the parent theorem at x = -1/2.
COR74_SPEC = HeckeSpec((1, 0, -1), (1, 0, 0), (1, 0, 0), Region(2, symmetric=True))
# The same sum with the sign dropped; it is not an identity (differs at q^2).
COR74_UNSIGNED_SPEC = HeckeSpec((1, 0, -1), (1, 0, 0), (0, 0, 0), Region(2, symmetric=True))
COR76A_SPECS = (
    HeckeSpec((4, 0, -1), (-2, 0, 0), (0, 1, 0), Region(1, symmetric=True)),
    HeckeSpec((4, 0, -1), (10, 0, 6), (0, 1, 1), Region(1, symmetric=True)),
)
COR76B_SPECS = (
    HeckeSpec((2, 0, -2), (-1, 0, 0), (0, 1, 0), Region(2, symmetric=True)),
    HeckeSpec((2, 0, -2), (5, 0, 3), (0, 1, 1), Region(2, symmetric=True)),
)
COR76C_SPECS = (
    HeckeSpec((4, 0, -1), (-2, 0, 0), (0, 0, 0), Region(1, symmetric=True)),
    HeckeSpec((4, 0, -1), (10, 0, 6), (0, 0, 1), Region(1, symmetric=True)),
)

NAMED_HECKE = {
    "cor-7.2": (COR72_SPEC,),
    "cor-7.3": (COR73_SPEC,),
    "cor-7.4": (COR74_SPEC,),
    "cor-7.6a": COR76A_SPECS,
    "cor-7.6b": COR76B_SPECS,
    "cor-7.6c": COR76C_SPECS,
}


def hecke_cyclotomic(specs, order):
    """Real value of the sum with the extra weight exp(2 pi i j/3)."""
    return cyclotomic_regroup(*(hecke_eval(specs, order, residue=(r, 3)) for r in range(3)))


def thm71_lhs(x, order):
    return sum_weighted(
        lambda n: 2 * n * n + 2 * n,
        lambda n, o: trinomial(2 * F(x), n, o) * rpoch(1, 2, 2, 2 * n, o),
        order,
    )


def thm71_rhs(x, order):
    return hecke_eval(thm71_spec(x), order) * rinf(1, 2, 2, order)


def cor72_lhs(order):
    return sum_weighted(
        lambda n: 2 * n * n + 2 * n, lambda n, o: poch(1, 1, 2, n, o) ** 2 * rpoch(1, 2, 2, 2 * n, o), order
    )


def cor72_rhs(order):
    return hecke_eval(COR72_SPEC, order) * rinf(1, 2, 2, order)


def cor73_lhs(order):
    return sum_weighted(lambda n: n * n + n, lambda n, o: poch(-1, 1, 2, n, o) * rpoch(1, 1, 1, 2 * n, o), order)


def cor73_rhs(order):
    return hecke_eval(COR73_SPEC, order) * rinf(1, 1, 1, order)


def cor74_lhs(order):
    return sum_weighted(
        lambda n: 2 * n * n + 2 * n,
        lambda n, o: poch(-1, 3, 6, n, o) * rpoch(1, 2, 2, 2 * n, o) * rpoch(-1, 1, 2, n, o),
        order,
    )


def cor74_rhs(order, spec: HeckeSpec = COR74_SPEC):
    return hecke_cyclotomic(spec, order) * rinf(1, 2, 2, order)


def _hecke2_lhs(extra: Callable[[int, int], FormalSeries], order, base=2):
    # 1/(q^b;q^b)_{2n-1} vanishes at n = 0.
    w = 2 if base == 2 else 1
    return sum_weighted(
        lambda n: w * (n * n - n),
        lambda n, o: extra(n, o) * rpoch(1, base, base, 2 * n - 1, o),
        order,
    )


def thm75_lhs(x, order):
    return _hecke2_lhs(lambda n, o: trinomial(2 * F(x), n, o), order)


def thm75_rhs(x, order):
    return hecke_eval(thm75_specs(x), order) * rinf(1, 2, 2, order)


def cor76a_lhs(order):
    return _hecke2_lhs(lambda n, o: poch(1, 1, 2, n, o) ** 2, order)


def cor76a_rhs(order):
    return hecke_eval(COR76A_SPECS, order) * rinf(1, 2, 2, order)


def cor76b_lhs(order, c: int = -1):
    """Factor (c q; q^2)_n.  c = -1 is the x = 0 specialisation; the variant
    with c = 1 is not an identity (differs at q^1)."""
    return _hecke2_lhs(lambda n, o: poch(c, 1, 2, n, o), order, base=1)


def cor76b_rhs(order):
    return hecke_eval(COR76B_SPECS, order) * rinf(1, 1, 1, order)


def cor76c_lhs(order):
    return _hecke2_lhs(lambda n, o: poch(-1, 3, 6, n, o) * rpoch(-1, 1, 2, n, o), order)


def cor76c_rhs(order):
    return hecke_cyclotomic(COR76C_SPECS, order) * rinf(1, 2, 2, order)
