from dataclasses import replace
from fractions import Fraction

import pytest

from qrr import FormalSeries
from qrr.bailey import (
    WeakFormId,
    abel_alternating_sum,
    andrews1_2_sides,
    andrews_pair,
    apply_multisum,
    apply_weak_form,
    check_bailey_pair,
    finite_identity_check,
    key_pair,
    sample_points,
    thm3_1_sides,
)
from qrr.chebyshev import SPECIAL_POINTS
from qrr.corpus import builders as B
from qrr.errors import UnsupportedAParameter
from qrr.qfunctions import mono, pochhammer_finite

F = Fraction


@pytest.mark.parametrize("x", SPECIAL_POINTS)
def test_key_pair(x):
    assert check_bailey_pair(key_pair(x), 25, 200).passed


@pytest.mark.parametrize("x", SPECIAL_POINTS)
def test_andrews_pair(x):
    assert check_bailey_pair(andrews_pair(x), 25, 200).passed


def test_mutated_beta_fails_at_the_mutated_index():
    p = key_pair(F(1, 2))
    good = p.beta

    def beta(n, order):
        b = good(n, order)
        return b + FormalSeries.monomial(1, 3, order) if n == 4 else b

    report = check_bailey_pair(replace(p, beta=beta), 25, 100)
    assert report.status == "fail"
    assert report.context == {"n": 4}
    assert report.mismatch is not None


def test_pair_initial_terms():
    p = key_pair(F(1, 2))
    assert p.alpha(0, 10) == FormalSeries.one(10) and p.beta(0, 10) == FormalSeries.one(10)
    assert p.alpha(1, 10) == FormalSeries.monomial(1, 1, 10)
    beta1 = key_pair(0).beta(1, 20)
    assert beta1 == FormalSeries([1, 0, 1], 20) * pochhammer_finite(mono(1, 2), 2, 2, 20).invert()
    a = andrews_pair(F(3, 7))
    assert a.beta(0, 10) == FormalSeries([1, -1], 10).invert()
    assert a.alpha(0, 10) == FormalSeries([1, -1], 10).invert()


def test_sample_points_are_distinct():
    pts = sample_points(9)
    assert pts == [0, F(1, 2), F(-1, 2), 1, -1, F(3, 2), F(-3, 2), 2, -2]


def test_finite_identities():
    lhs, rhs = thm3_1_sides(0, F(1, 3))
    assert lhs == rhs == FormalSeries.one(0)
    for x in (0, F(1, 2), F(-1, 2), 1, -1, F(3, 2)):
        lhs, rhs = thm3_1_sides(3, x, 100)
        assert lhs == rhs
    assert finite_identity_check("andrews1_2", 2).passed
    for n in range(21):
        assert finite_identity_check("andrews1_2", n).passed


def test_finite_identity_rejects_a_wrong_point_set():
    lhs, rhs = thm3_1_sides(2, F(1, 2))
    assert lhs == rhs
    assert lhs != thm3_1_sides(2, F(1, 3))[0]


ORDER = 150


@pytest.mark.parametrize("wf,lhs,rhs", [
    (WeakFormId.WF1, B.thm11_lhs, B.thm11_rhs),
    (WeakFormId.WF2, B.thm51_lhs, B.thm51_rhs),
    (WeakFormId.WF3, B.thm53_lhs, B.thm53_rhs),
    (WeakFormId.WF4, B.thm61_lhs, B.thm61_rhs),
])
@pytest.mark.parametrize("x", [F(0), F(1, 2), F(-3, 2), F(2)])
def test_weak_forms_reproduce_builders(wf, lhs, rhs, x):
    got = apply_weak_form(wf, key_pair(x), ORDER)
    assert got[0] == lhs(x, ORDER)
    assert got[1] == rhs(x, ORDER)


def test_weak_form_details():
    lhs, _ = apply_weak_form(WeakFormId.WF4, key_pair(1), 10)
    assert (lhs[0], lhs[1], lhs[2]) == (1, 0, 2)
    # the WF3 left side carries an overall factor 2
    p = key_pair(F(1, 2))
    lhs3, _ = apply_weak_form(WeakFormId.WF3, p, 20)
    terms = [pochhammer_finite(mono(1, 2), 4, n, 20) * p.beta(n, 20) for n in range(20)]
    assert lhs3 == abel_alternating_sum(terms).scale(2)
    with pytest.raises(UnsupportedAParameter):
        apply_weak_form(WeakFormId.WF1, andrews_pair(0), 10)


@pytest.mark.parametrize("x", [F(0), F(1, 2), F(-1)])
def test_multisum_k1_is_first_weak_form(x):
    assert apply_multisum(key_pair(x), 1, 100) == apply_weak_form(WeakFormId.WF1, key_pair(x), 100)


def test_multisum_k2_matches_corollary():
    lhs, rhs = apply_multisum(key_pair(F(1, 2)), 2, 100)
    assert lhs == rhs
    assert lhs == B.multisum_lhs(2, F(1, 2), 100)


def test_multisum_on_andrews_pair():
    lhs, rhs = apply_multisum(andrews_pair(F(1, 2)), 2, 60)
    assert lhs == rhs


def test_abel_sum_of_constant_tail():
    one = FormalSeries.one(5)
    assert abel_alternating_sum([one]) == FormalSeries.constant(F(1, 2), 5)
    two = FormalSeries.constant(2, 5)
    # 2 - 1 + 1 - 1 + ... with t_0 = 2 and the rest 1: (2 - 1) + 1/2
    assert abel_alternating_sum([two, one]) == FormalSeries.constant(F(3, 2), 5)
