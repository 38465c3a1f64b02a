"""Corpus files: one identity per stanza.

    identity ID {
      anchor "free text"
      lhs { EXPR }
      rhs { EXPR }
      xparam degree_bound EXPR        # to end of line; sample count is EXPR + 1
      finite n 0..N degree EXPR       # polynomial family indexed by n
      order N                         # default truncation order (150)
    }

``order`` may appear as a name inside expressions; in a finite family the
index name is bound too.  Everything after ``#`` on a line is a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from ..bailey import sample_points
from ..errors import DSLSyntaxError, QSeriesError
from ..report import ERROR, FAIL, PASS, Stopwatch, VerificationReport
from ..series import equal_to_order
from . import ast as A
from .evaluator import evaluate, evaluate_scalar
from .parser import parse
from .printer import to_source

ORDER_VAR = "order"
DEFAULT_ORDER = 150  # for infinite identities without an order field


@dataclass(frozen=True)
class Finite:
    var: str
    lo: int
    hi: int
    degree: A.Expr


@dataclass(frozen=True)
class Stanza:
    id: str
    anchor: str
    lhs: A.Expr
    rhs: A.Expr
    degree_bound: A.Expr | None = None
    finite: Finite | None = None
    order: int | None = None

    @property
    def x_parametric(self) -> bool:
        return self.degree_bound is not None


_WS = re.compile(r"(?:\s+|#[^\n]*)*")
_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_ID = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*")
_INT = re.compile(r"-?\d+")
_STRING = re.compile(r'"[^"\n]*"')


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos: int | None = None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        return line, pos - (self.text.rfind("\n", 0, pos) + 1) + 1

    def error(self, msg, pos=None):
        line, col = self.where(pos)
        found = self.text[self.pos:self.pos + 12].split("\n")[0] or "end of input"
        raise DSLSyntaxError(f"{msg}, found {found!r}", line, col)

    def skip(self):
        self.pos = _WS.match(self.text, self.pos).end()

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def match(self, rx, what) -> str:
        self.skip()
        m = rx.match(self.text, self.pos)
        if m is None:
            self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def literal(self, s):
        self.skip()
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def peek_word(self) -> str | None:
        self.skip()
        m = _WORD.match(self.text, self.pos)
        return m.group() if m else None

    def expr_block(self, names) -> A.Expr:
        self.literal("{")
        start = self.pos
        end = self.text.find("}", start)
        if end < 0:
            self.error("unclosed '{'")
        line, col = self.where(start)
        e = parse(self.text[start:end], names, line, col)
        self.pos = end + 1
        return e

    def expr_line(self, names) -> A.Expr:
        self.skip()
        start = self.pos
        end = self.text.find("\n", start)
        end = len(self.text) if end < 0 else end
        src = self.text[start:end].split("#")[0]
        line, col = self.where(start)
        e = parse(src, names, line, col)
        self.pos = end
        return e


def _stanza(sc: _Scanner) -> Stanza:
    kw_pos = sc.pos
    if sc.match(_WORD, "'identity'") != "identity":
        sc.error("expected 'identity'", kw_pos)
    ident = sc.match(_ID, "an identity id")
    sc.literal("{")
    fields = {}
    names = [ORDER_VAR]
    while True:
        sc.skip()
        if sc.text.startswith("}", sc.pos):
            sc.pos += 1
            break
        pos = sc.pos
        kw = sc.peek_word()
        if kw is None:
            sc.error("expected a field name or '}'")
        if kw in fields:
            sc.error(f"duplicate field {kw!r}")
        sc.match(_WORD, kw)
        if kw == "anchor":
            fields[kw] = sc.match(_STRING, "a quoted anchor")[1:-1]
        elif kw in ("lhs", "rhs"):
            fields[kw] = sc.expr_block(tuple(names))
        elif kw == "xparam":
            if sc.match(_WORD, "'degree_bound'") != "degree_bound":
                sc.error("expected 'degree_bound'")
            fields[kw] = sc.expr_line(tuple(names))
        elif kw == "finite":
            if "lhs" in fields or "rhs" in fields:
                sc.error("'finite' must come before lhs and rhs", pos)
            var = sc.match(_WORD, "an index name")
            lo = int(sc.match(_INT, "an integer"))
            sc.literal("..")
            hi = int(sc.match(_INT, "an integer"))
            if sc.match(_WORD, "'degree'") != "degree":
                sc.error("expected 'degree'")
            fields[kw] = Finite(var, lo, hi, sc.expr_line((var,)))
            names.append(var)
        elif kw == "order":
            fields[kw] = int(sc.match(_INT, "an integer"))
        else:
            sc.error(f"unknown field {kw!r}", pos)
    for need in ("anchor", "lhs", "rhs"):
        if need not in fields:
            sc.error(f"identity {ident!r} has no {need!r}", kw_pos)
    return Stanza(ident, fields["anchor"], fields["lhs"], fields["rhs"],
                  fields.get("xparam"), fields.get("finite"), fields.get("order"))


def parse_corpus(text: str) -> list:
    sc = _Scanner(text)
    out, seen = [], set()
    while not sc.at_end():
        pos = sc.pos
        st = _stanza(sc)
        if st.id in seen:
            sc.error(f"duplicate identity {st.id!r}", pos)
        seen.add(st.id)
        out.append(st)
    return out


def format_stanza(st: Stanza) -> str:
    lines = [f"identity {st.id} {{", f'  anchor "{st.anchor}"']
    if st.finite is not None:
        f = st.finite
        lines.append(f"  finite {f.var} {f.lo}..{f.hi} degree {to_source(f.degree)}")
    lines.append(f"  lhs {{ {to_source(st.lhs)} }}")
    lines.append(f"  rhs {{ {to_source(st.rhs)} }}")
    if st.degree_bound is not None:
        lines.append(f"  xparam degree_bound {to_source(st.degree_bound)}")
    if st.order is not None:
        lines.append(f"  order {st.order}")
    lines.append("}")
    return "\n".join(lines)


def format_corpus(stanzas) -> str:
    return "\n\n".join(format_stanza(s) for s in stanzas) + "\n"


def corpus_text() -> str:
    return resources.files("qrr").joinpath("data/corpus.qrr").read_text(encoding="utf-8")


def load_corpus() -> dict:
    return {s.id: s for s in parse_corpus(corpus_text())}


def stanza_sides(st: Stanza, order: int, x=None, n: int | None = None):
    env = {ORDER_VAR: order}
    if st.finite is not None:
        env[st.finite.var] = n
    return evaluate(st.lhs, order, x, env), evaluate(st.rhs, order, x, env)


def finite_order(st: Stanza, n: int, order: int | None) -> int:
    deg = int(evaluate_scalar(st.finite.degree, {st.finite.var: n}))
    return deg if order is None else min(order, deg)


def sample_count(st: Stanza, order: int, n: int | None = None) -> int:
    env = {ORDER_VAR: order}
    if st.finite is not None:
        env[st.finite.var] = n
    return int(evaluate_scalar(st.degree_bound, env)) + 1


def verify_stanza(st: Stanza, order: int | None = None, x=None) -> VerificationReport:
    """Check an identity by evaluating its DSL text; mirrors the native verifier."""
    if order is None and st.finite is None:
        order = DEFAULT_ORDER if st.order is None else st.order
    x = None if x is None else Fraction(x)
    sw = Stopwatch()
    try:
        cases = []
        if st.finite is not None:
            for n in range(st.finite.lo, st.finite.hi + 1):
                o = finite_order(st, n, order)
                pts = [x] if x is not None or not st.x_parametric else sample_points(sample_count(st, o, n))
                cases += [(o, pt, n) for pt in pts]
        else:
            pts = [x] if x is not None or not st.x_parametric else sample_points(sample_count(st, order))
            cases = [(order, pt, None) for pt in pts]
        for o, pt, n in cases:
            lhs, rhs = stanza_sides(st, o, pt, n)
            cmp = equal_to_order(lhs, rhs, o)
            if not cmp:
                ctx = {k: v for k, v in (("n", n), ("x", pt)) if v is not None}
                return VerificationReport(st.id, o, FAIL, sw.ms, cmp.mismatch, ctx)
        return VerificationReport(st.id, order if order is not None else max(c[0] for c in cases), PASS, sw.ms)
    except QSeriesError as exc:
        return VerificationReport(st.id, order or 0, ERROR, sw.ms, message=f"{type(exc).__name__}: {exc}")
