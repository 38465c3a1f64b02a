from fractions import Fraction

import pytest

from qrr import FormalSeries
from qrr.corpus.registry import REGISTRY
from qrr.dsl import ast as A
from qrr.dsl import evaluate, evaluate_scalar, parse, to_source
from qrr.dsl.corpus_file import (
    DEFAULT_ORDER,
    corpus_text,
    finite_order,
    format_corpus,
    load_corpus,
    parse_corpus,
    stanza_sides,
    verify_stanza,
)
from qrr.errors import DSLSyntaxError, MissingX, UnknownIdentifier, UnsupportedArgument
from qrr.qfunctions import mono, pochhammer_infinite, qbinomial

F = Fraction
STANZAS = parse_corpus(corpus_text())


# -- parsing -----------------------------------------------------------------

def test_parse_examples():
    assert parse("poch(-q, q, inf)") == A.Poch(A.Neg(A.QPower(A.IntLit(1))), 1, None)
    s = parse("sum(n, 0..auto, q^(n^2) / poch(q, q, n)^2)")
    assert isinstance(s, A.Sum) and s.var == "n" and s.hi is None
    assert isinstance(s.body, A.Div)


def test_precedence():
    assert parse("-q^2") == A.Neg(A.QPower(A.IntLit(2)))
    assert parse("1 + 2 * 3") == A.Add(A.IntLit(1), A.Mul(A.IntLit(2), A.IntLit(3)))
    assert parse("2^3^2") == A.Pow(A.IntLit(2), A.Pow(A.IntLit(3), A.IntLit(2)))
    assert parse("1 - 2 - 3") == A.Sub(A.Sub(A.IntLit(1), A.IntLit(2)), A.IntLit(3))
    assert evaluate_scalar(parse("2^3^2")) == 512


def test_juxtaposition_after_a_bound_variable():
    e = parse("sum(n, 0..3, n (n + 1))")
    assert e.body == A.Mul(A.Var("n"), A.Add(A.Var("n"), A.IntLit(1)))
    assert evaluate(e, 0)[0] == 0 + 2 + 6 + 12


@pytest.mark.parametrize("src,line,column", [
    ("poch(q, q,", 1, 11),
    ("1 + * 2", 1, 5),
    ("poch(q, q, inf", 1, 15),
    ("sum(n 0..3, q)", 1, 7),
    ("q^(2\n  + )", 2, 5),
])
def test_syntax_errors_are_located(src, line, column):
    with pytest.raises(DSLSyntaxError) as info:
        parse(src)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_syntax_errors_inside_the_corpus_file():
    text = 'identity a {\n  anchor "x"\n  lhs { 1 + }\n  rhs { 1 }\n}\n'
    with pytest.raises(DSLSyntaxError) as info:
        parse_corpus(text)
    assert info.value.line == 3
    with pytest.raises(DSLSyntaxError):
        parse_corpus('identity a {\n  anchor "x"\n  lhs { 1 }\n}\n')
    with pytest.raises(DSLSyntaxError) as info:
        parse_corpus(text.replace("1 + ", "1") * 2)
    assert "duplicate" in info.value.message


def test_unknown_names():
    with pytest.raises(UnknownIdentifier):
        parse("foo(q)")
    with pytest.raises(UnknownIdentifier):
        parse("y + 1")


# -- printing and round trips -------------------------------------------------

def test_corpus_round_trip():
    again = parse_corpus(format_corpus(STANZAS))
    assert again == STANZAS
    assert format_corpus(again) == format_corpus(STANZAS)


def test_every_expression_round_trips():
    for st in STANZAS:
        for e in (st.lhs, st.rhs):
            assert parse(to_source(e), free_vars=_bound(st)) == e, st.id


def _bound(st):
    names = ["order"]
    if st.finite is not None:
        names.append(st.finite.var)
    return tuple(names)


def test_corpus_covers_the_registry():
    assert [s.id for s in STANZAS] == list(REGISTRY)
    assert all(s.anchor for s in STANZAS)


# -- evaluation ----------------------------------------------------------------

def test_eval_matches_native_pochhammer():
    assert evaluate(parse("poch(q,q,inf)"), 10) == pochhammer_infinite(mono(1, 1), 1, 10)
    assert evaluate(parse("qbinom(4, 2, 1)"), 4) == qbinomial(4, 2, 1, 4)


def test_eval_chebyshev():
    assert evaluate(parse("chebv(x, 3)"), 5, x=F(3, 2)) == FormalSeries.constant(13, 5)
    with pytest.raises(MissingX):
        evaluate(parse("chebv(x, 3)"), 5)


def test_auto_bound_needs_a_quadratic():
    for src in ("sum(n, 0..auto, q^n)", "sum(n, 0..auto, q^(n^3))"):
        with pytest.raises(UnsupportedArgument):
            evaluate(parse(src), 10)
    assert evaluate(parse("sum(n, 0..10, q^n)"), 10) == FormalSeries([1] * 11)


def test_auto_bound_does_not_drop_terms():
    # Rogers-Ramanujan: sum q^{n^2}/(q;q)_n against a long explicit sum
    auto = evaluate(parse("sum(n, 0..auto, q^(n^2) / poch(q, q, n))"), 80)
    explicit = evaluate(parse("sum(n, 0..20, q^(n^2) / poch(q, q, n))"), 80)
    assert auto == explicit


# -- equivalence with the native builders ------------------------------------

@pytest.mark.parametrize("st", STANZAS, ids=lambda s: s.id)
def test_stanza_matches_native_builder(st):
    rec = REGISTRY[st.id]
    if st.finite is not None:
        pt = F(1, 3) if st.x_parametric else None
        for n in range(st.finite.lo, st.finite.hi + 1):
            o = finite_order(st, n, None)
            assert stanza_sides(st, o, pt, n) == rec.finite.sides(n, pt, o), n
        return
    order = rec.default_order
    assert order == (st.order or DEFAULT_ORDER)
    pt = F(3, 2) if st.x_parametric else None
    assert stanza_sides(st, order, pt) == rec.sides(order, pt)


def test_stanza_verification_reports():
    corpus = load_corpus()
    assert verify_stanza(corpus["dyson-1.1"], 60).passed
    assert verify_stanza(corpus["qbi-8.1"], 0).passed
    assert verify_stanza(corpus["thm-1.1"], 40).passed
