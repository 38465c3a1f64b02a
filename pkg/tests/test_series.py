from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrr import FormalSeries, equal_to_order, series_add, series_invert, series_mul
from qrr.errors import NegativeExponentTerm, NonUnitSeries, OrderTooLarge
from qrr.qfunctions import mono, pochhammer_infinite, pochhammer_finite
from qrr.series import KRONECKER_THRESHOLD, _schoolbook, substitute_negate, substitute_power

ORDER = 64

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
series = st.lists(rationals, min_size=0, max_size=ORDER + 1).map(lambda c: FormalSeries(c, ORDER))


def S(*coeffs, order=None):
    return FormalSeries(coeffs, order)


@settings(max_examples=100, deadline=None)
@given(series, series, series)
def test_ring_laws(a, b, c):
    zero = FormalSeries.zero(ORDER)
    one = FormalSeries.one(ORDER)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + zero == a
    assert a + (-a) == zero
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * one == a


@settings(max_examples=100, deadline=None)
@given(series)
def test_invert_is_inverse(a):
    if a[0] == 0:
        with pytest.raises(NonUnitSeries):
            a.invert()
    else:
        assert a * a.invert() == FormalSeries.one(ORDER)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-10**6, 10**6), min_size=KRONECKER_THRESHOLD, max_size=90),
       st.lists(st.integers(-10**6, 10**6), min_size=KRONECKER_THRESHOLD, max_size=90))
def test_kronecker_matches_schoolbook(a, b):
    n = min(len(a), len(b))
    prod = FormalSeries(a, n - 1) * FormalSeries(b, n - 1)
    assert list(prod.coeffs) == [Fraction(c) for c in _schoolbook(a[:n], b[:n], n)]


def test_addition_examples():
    assert series_add(S(1, 1), S(1, -1)) == S(2, 0)
    a = S(3, Fraction(1, 2), -7)
    assert a + FormalSeries.zero(2) == a
    assert a + (-a) == FormalSeries.zero(2)


def test_multiplication_examples():
    p = S(1, -1, order=6) * S(1, 0, -1, order=6) * S(1, 0, 0, -1, order=6)
    assert p == S(1, -1, -1, 0, 1, 1, -1)
    assert series_mul(S(1, 1), S(1, -1)) == S(1, 0)
    assert series_mul(S(1, 1, order=2), S(1, -1, order=2)) == S(1, 0, -1)


def test_product_order_is_the_minimum():
    assert (S(1, 1, 1) * S(1, 1)).order == 1


def test_geometric_inverse():
    assert series_invert(S(1, -1, order=10)) == FormalSeries([1] * 11)


def test_invert_non_unit():
    with pytest.raises(NonUnitSeries):
        series_invert(S(0, 1, 2))


def test_substitute_power():
    assert substitute_power(S(1, 1, order=4), 2) == S(1, 0, 1, 0, 0)
    a = S(1, 2, 3, 4)
    assert substitute_power(a, 1) == a
    order = 60
    lhs = substitute_power(pochhammer_infinite(mono(1, 1), 1, order).invert(), 2)
    assert lhs == pochhammer_infinite(mono(1, 2), 2, order).invert()


def test_substitute_negate():
    assert substitute_negate(S(1, 1, 1)) == S(1, -1, 1)
    a = S(1, 2, Fraction(-3, 5), 4)
    assert substitute_negate(substitute_negate(a)) == a


def test_equal_to_order():
    a = pochhammer_infinite(mono(1, 1), 1, 20)
    assert equal_to_order(a, a, a.order)
    assert equal_to_order(S(1, order=5), S(1, 0, 0, 0, 0, 0, 1), 5)
    cmp = equal_to_order(S(1, 1), S(1, 2), 1)
    assert not cmp
    assert (cmp.mismatch.exponent, cmp.mismatch.lhs, cmp.mismatch.rhs) == (1, 1, 2)


def test_equal_to_order_beyond_truncation():
    with pytest.raises(OrderTooLarge):
        equal_to_order(S(1, 1), S(1, 1, 1), 2)


def test_shift():
    a = S(1, 2, 3)
    assert a.shift(2) == S(0, 0, 1, 2, 3)
    assert a.shift(2, 3) == S(0, 0, 1, 2)
    assert S(0, 0, 5, 6).shift(-2) == S(5, 6)
    with pytest.raises(NegativeExponentTerm):
        S(0, 1, 2).shift(-2)


def test_binomial_fast_paths():
    a = pochhammer_finite(mono(-1, 1), 2, 4, 30)
    assert a.mul_binomial(3, 5) == a * (FormalSeries.one(30) - FormalSeries.monomial(3, 5, 30))
    assert a.div_binomial(2, 3) == a * (FormalSeries.one(30) - FormalSeries.monomial(2, 3, 30)).invert()
    assert a.mul_sparse([(1, 0), (Fraction(1, 2), 2), (-1, 7)]) == a * FormalSeries.from_dict(
        {0: 1, 2: Fraction(1, 2), 7: -1}, 30)


def test_rational_coefficients_are_exact():
    a = S(Fraction(1, 3), Fraction(2, 7), order=5)
    b = a.invert()
    assert (a * b)[0] == 1 and all(c == 0 for c in (a * b).coeffs[1:])
    assert b[0] == 3 and b.denominator % 7 == 0
