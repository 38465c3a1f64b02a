from fractions import Fraction

import pytest

from qrr import FormalSeries
from qrr.chebyshev import cheb_special, cheb_v_plus_prev
from qrr.corpus import builders as B
from qrr.corpus.appell_lerch import AppellLerchSpec, appell_lerch_eval, cyclotomic_regroup, mono_term
from qrr.corpus.hecke import HeckeSpec, Region, hecke_eval, hecke_terms
from qrr.corpus.heine import heine_lhs, heine_transform_sides
from qrr.corpus.qbi import jtp_limit_lhs, jtp_limit_rhs, qbi_sides, qbinom_identity_check
from qrr.corpus.registry import ENV_ORDER, REGISTRY, get, resolve_order, verify
from qrr.errors import NegativeExponentTerm, NonRealSum, SingularTerm, UnknownIdentity
from qrr.qfunctions import mono, pochhammer_finite, pochhammer_reciprocal, qbinomial
from qrr.series import equal_to_order, substitute_negate, substitute_power

F = Fraction


# -- Appell-Lerch sums -------------------------------------------------------

def test_appell_lerch_zero_term_is_one_half():
    assert B.MU2_SPEC.term_series(0, 10) == [(F(1, 2), 0)]


def direct_mu2_term(m, order):
    """q^{2m^2+m} / (1 + q^{2m}) for m >= 1, expanded by hand."""
    return FormalSeries.monomial(1, 2 * m * m + m, order) * FormalSeries.one(order).div_binomial(-1, 2 * m)


@pytest.mark.parametrize("m", [1, 2])
def test_appell_lerch_negative_terms_mirror_positive(m):
    order = 20
    def as_series(n):
        return FormalSeries.from_dict({e: c for c, e in B.MU2_SPEC.term_series(n, order)}, order)
    assert as_series(-m) == as_series(m) == direct_mu2_term(m, order)


def test_appell_lerch_whole_sum():
    order = 40
    lo, hi = B.MU2_SPEC.index_range(order)
    total = FormalSeries.constant(F(1, 2), order)
    for m in range(1, max(hi, -lo) + 1):
        total = total + direct_mu2_term(m, order).scale(2)
    assert appell_lerch_eval(B.MU2_SPEC, order) == total


def test_appell_lerch_singular_term():
    spec = AppellLerchSpec(level=1, a=mono(1, 0), b=mono_term(1, 0))
    with pytest.raises(SingularTerm):
        appell_lerch_eval(spec, 10)


def test_cyclotomic_regroup():
    s = B.entry534_lhs(20)
    assert cyclotomic_regroup(s, s, s) == FormalSeries.zero(20)
    with pytest.raises(NonRealSum):
        cyclotomic_regroup(s, s, s + FormalSeries.monomial(1, 5, 20))


def test_residue_classes_add_up():
    order = 60
    parts = [appell_lerch_eval(B.MU2_SPEC, order, residue=(r, 3)) for r in range(3)]
    assert parts[0] + parts[1] + parts[2] == appell_lerch_eval(B.MU2_SPEC, order)


# -- Hecke-type double sums --------------------------------------------------

def test_region_bounds_by_hand():
    half = Region(2, symmetric=True)
    quarter = Region(4, symmetric=True)
    assert [half.bounds(n) for n in range(5)] == [(0, 0), (0, 0), (-1, 1), (-1, 1), (-2, 2)]
    assert [quarter.bounds(n) for n in range(5)] == [(0, 0)] * 4 + [(-1, 1)]
    assert [Region(2).bounds(n) for n in range(5)] == [(0, 0), (0, 0), (0, 1), (0, 1), (0, 2)]
    assert [Region(1).bounds(n) for n in range(5)] == [(0, n) for n in range(5)]


# (j, coefficient, exponent) per n, enumerated by hand.
COR72_TERMS = {
    0: [(0, 1, 0)],
    1: [(0, -1, 2)],
    2: [(-1, -1, 5), (0, 1, 6), (1, -1, 5)],
    3: [(-1, 1, 11), (0, -1, 12), (1, 1, 11)],
    4: [(-2, 1, 16), (-1, -1, 19), (0, 1, 20), (1, -1, 19), (2, 1, 16)],
}
COR73_TERMS = {
    0: [(0, 1, 0)],
    1: [(0, -1, 1)],
    2: [(0, 1, 3)],
    3: [(0, -1, 6)],
    4: [(-1, -1, 8), (0, 1, 10), (1, -1, 8)],
}
COR74_TERMS = {
    0: [(0, 1, 0)],
    1: [(0, -1, 2)],
    2: [(-1, 1, 5), (0, 1, 6), (1, 1, 5)],
    3: [(-1, -1, 11), (0, -1, 12), (1, -1, 11)],
    4: [(-2, 1, 16), (-1, 1, 19), (0, 1, 20), (1, 1, 19), (2, 1, 16)],
}
# x = 3/2: weights v_0, v_1, v_2 = 1, 3, 7
THM71_TERMS = {
    0: [(0, 1, 0)],
    1: [(0, -1, 2)],
    2: [(0, 1, 6), (1, 3, 5)],
    3: [(0, -1, 12), (1, -3, 11)],
    4: [(0, 1, 20), (1, 3, 19), (2, 7, 16)],
}


@pytest.mark.parametrize("spec,table", [
    (B.COR72_SPEC, COR72_TERMS),
    (B.COR73_SPEC, COR73_TERMS),
    (B.COR74_SPEC, COR74_TERMS),
    (B.thm71_spec(F(3, 2)), THM71_TERMS),
])
def test_hecke_terms_by_hand(spec, table):
    for n, expected in table.items():
        assert hecke_terms(spec, n) == expected, n


def test_hecke_pairs_by_hand():
    a, b = B.COR76B_SPECS
    assert hecke_terms(a, 0) == [(0, 1, 0)] and hecke_terms(b, 0) == [(0, -1, 3)]
    assert hecke_terms(a, 1) == [(0, 1, 1)] and hecke_terms(b, 1) == [(0, -1, 10)]
    assert hecke_terms(a, 2) == [(-1, -1, 4), (0, 1, 6), (1, -1, 4)]
    assert hecke_terms(b, 2) == [(-1, 1, 19), (0, -1, 21), (1, 1, 19)]
    # 0 <= j <= n with exponents 4n^2 - 2n - j^2 and 4n^2 + 10n + 6 - j^2
    lo, hi = B.thm75_specs(1)
    for n in range(5):
        assert [(j, e) for j, _, e in hecke_terms(lo, n)] == [(j, 4 * n * n - 2 * n - j * j) for j in range(n + 1)]
        assert [(j, e) for j, _, e in hecke_terms(hi, n)] == [(j, 4 * n * n + 10 * n + 6 - j * j)
                                                                for j in range(n + 1)]
        assert [c for _, c, _ in hecke_terms(hi, n)] == [-cheb_v_plus_prev(1, j) for j in range(n + 1)]


def test_thm71_single_term_at_zero():
    for x in (F(0), F(1, 3), F(-3, 2)):
        assert hecke_terms(B.thm71_spec(x), 0) == [(0, 1, 0)]


def test_thm75_summand_vanishes_at_zero():
    # 1/(q^2;q^2)_{-1} = 1 - q^2 q^{-2} = 0
    assert pochhammer_reciprocal(mono(1, 2), 2, -1, 30) == FormalSeries.zero(30)


def test_hecke_negative_total_is_rejected():
    bad = HeckeSpec((0, 0, -1), (1, 0, 0), (0, 0, 0), Region(1))
    with pytest.raises(NegativeExponentTerm):
        hecke_terms(bad, 2)


def test_thm71_at_minus_one_is_cor72():
    order = 150
    assert B.thm71_rhs(-1, order) == B.cor72_lhs(order)


def test_hecke_eval_sums_the_table():
    order = 20
    expected = {}
    for n, terms in COR72_TERMS.items():
        for _, c, e in terms:
            if e <= order:
                expected[e] = expected.get(e, 0) + c
    assert hecke_eval(B.COR72_SPEC, order) == FormalSeries.from_dict(expected, order)


# -- pinned variants that are not identities --------------------------------

def test_unsigned_cor74_fails_at_q2():
    order = 40
    cmp = equal_to_order(B.cor74_lhs(order), B.cor74_rhs(order, spec=B.COR74_UNSIGNED_SPEC), order)
    assert not cmp and cmp.mismatch.exponent == 2
    assert equal_to_order(B.cor74_lhs(order), B.cor74_rhs(order), order)


def test_cor76b_with_plus_sign_fails_at_q1():
    order = 40
    cmp = equal_to_order(B.cor76b_lhs(order, c=1), B.cor76b_rhs(order), order)
    assert not cmp and cmp.mismatch.exponent == 1


# -- specialisations ---------------------------------------------------------

ORDER = 150


def test_thm11_at_half_is_entry534():
    assert B.thm11_lhs(F(1, 2), ORDER) == B.entry534_lhs(ORDER)
    # the weight used by the parametric theta side agrees with the closed form
    assert all(cheb_v_plus_prev(F(1, 2), n) == cheb_special(F(1, 2), n) + cheb_special(F(1, 2), n - 1)
               for n in range(1, 30))


@pytest.mark.parametrize("thm,x,entry", [
    ("thm11", -1, "entry533"), ("thm11", F(3, 2), "fib44a"), ("thm11", F(-3, 2), "fib44b"),
    ("thm51", -1, "b_m1"), ("thm51", F(-1, 2), "b_m12"), ("thm51", 0, "b_0"),
    ("thm51", F(1, 2), "b_12"), ("thm51", 1, "b_1"), ("thm51", F(3, 2), "b_32"),
    ("thm53", F(-1, 2), "c_m12"), ("thm53", 1, "c_1"), ("thm53", F(3, 2), "c_32"),
    ("thm61", 1, "d_1"), ("thm61", F(-1, 2), "d_2"), ("thm61", F(3, 2), "d_4"),
    ("thm71", -1, "cor72"), ("thm71", F(-1, 2), "cor74"),
    ("thm75", -1, "cor76a"), ("thm75", F(-1, 2), "cor76c"),
])
def test_specialisations_are_bit_identical(thm, x, entry):
    order = 100
    assert getattr(B, thm + "_lhs")(x, order) == getattr(B, entry + "_lhs")(order)


@pytest.mark.parametrize("thm,entry", [
    ("thm11", "entry532"), ("thm53", "c_0"), ("thm61", "d_3"), ("thm71", "cor73"), ("thm75", "cor76b"),
])
def test_x_zero_specialisations_after_base_change(thm, entry):
    order = 100
    assert getattr(B, thm + "_lhs")(0, order) == substitute_power(getattr(B, entry + "_lhs")(order), 2)


def test_fibonacci_pair_maps_under_negation():
    order = 100
    assert substitute_negate(B.fib44a_lhs(order)) == B.fib44b_lhs(order)
    assert substitute_negate(B.fib44a_rhs(order)) == B.fib44b_rhs(order)


@pytest.mark.parametrize("family,single", [("a", "entry533"), ("b", "entry534"), ("c", "entry532"),
                                           ("d", "fib44a")])
def test_single_fold_multisums_are_the_single_sums(family, single):
    order = 100
    assert getattr(B, f"cor46{family}_lhs")(1, order) == getattr(B, single + "_lhs")(order)
    assert getattr(B, f"cor46{family}_rhs")(1, order) == getattr(B, single + "_rhs")(order)


# -- Heine and the q-binomial identity --------------------------------------

def test_heine_zero_zero_is_rogers_ramanujan_shaped():
    order = 150
    total = FormalSeries.zero(order)
    n = 0
    while n * n <= order:
        total = total + (pochhammer_finite(mono(1, 1), 1, n, order).invert() ** 2).shift(n * n, order)
        n += 1
    lhs, rhs = heine_transform_sides(0, 0, order)
    assert lhs == total == rhs


def test_heine_constant_terms():
    for b in range(4):
        lhs, rhs = heine_transform_sides(1, b, 0)
        assert lhs == rhs == FormalSeries.one(0)
    assert heine_lhs(1, 0, 150) == heine_transform_sides(1, 0, 150)[1]
    with pytest.raises(ValueError):
        heine_transform_sides(0, -1, 10)


def test_qbi_base_case():
    lhs, rhs = qbi_sides(0)
    assert lhs == rhs == FormalSeries([1, 1])


def test_qbi_small_n_against_qbinomial():
    n = 2
    lhs, rhs = qbi_sides(n)
    expected = FormalSeries.one(lhs.order) + FormalSeries.monomial(1, 2 * n + 1, lhs.order)
    assert rhs == expected * qbinomial(4 * n + 1, 2 * n, 1, lhs.order)
    assert lhs == rhs


def test_qbi_checks():
    for n in range(0, 8):
        assert qbinom_identity_check(n).passed


def test_jtp_limit():
    assert jtp_limit_lhs(100) == jtp_limit_rhs(100)
    # a finite N too small for the order is visibly wrong
    assert jtp_limit_lhs(100, n=3) != jtp_limit_rhs(100)


# -- registry ----------------------------------------------------------------

def test_registry_contents():
    assert len(REGISTRY) == 78
    assert get("dyson-1.1").default_order == 200
    assert all(r.anchor for r in REGISTRY.values())
    with pytest.raises(UnknownIdentity):
        get("nonexistent")
    with pytest.raises(UnknownIdentity):
        verify("nonexistent", 10)


def test_resolve_order_priority(monkeypatch):
    rec = get("dyson-1.1")
    monkeypatch.delenv(ENV_ORDER, raising=False)
    assert resolve_order(rec, None) == 200
    monkeypatch.setenv(ENV_ORDER, "30")
    assert resolve_order(rec, None) == 30
    assert resolve_order(rec, 12) == 12


def test_verify_reports_the_requested_order():
    rep = verify("cor-7.2", 20)
    assert rep.passed and rep.order == 20


@pytest.mark.parametrize("id", sorted(REGISTRY))
def test_every_identity_verifies_at_a_low_order(id):
    rep = verify(id, 40)
    assert rep.passed, rep.dumps()
