"""Canonical text for expression trees; parse(to_source(e)) == e."""

from __future__ import annotations

from . import ast as A

ADD, MUL, NEG, POW, ATOM = 1, 2, 3, 4, 5


def _level(e: A.Expr) -> int:
    if isinstance(e, (A.Add, A.Sub)):
        return ADD
    if isinstance(e, (A.Mul, A.Div)):
        return MUL
    if isinstance(e, A.Neg):
        return NEG
    if isinstance(e, A.Pow) or (isinstance(e, A.QPower) and e != A.Q):
        return POW
    return ATOM


def _wrap(e: A.Expr, min_level: int) -> str:
    s = to_source(e)
    return f"({s})" if _level(e) < min_level else s


def _base(b: int) -> str:
    return "q" if b == 1 else f"q^{b}"


def _residue(res) -> str:
    return "" if res is None else f", {to_source(res[0])}, {to_source(res[1])}"


def to_source(e: A.Expr) -> str:
    if isinstance(e, A.IntLit):
        return str(e.value)
    if isinstance(e, A.RatLit):
        return f"rat({e.num}, {e.den})"
    if isinstance(e, A.Var):
        return e.name
    if isinstance(e, A.QPower):
        return "q" if e == A.Q else f"q^{_wrap(e.exp, NEG)}"
    if isinstance(e, (A.Add, A.Sub, A.Mul, A.Div)):
        op, lvl = {A.Add: ("+", ADD), A.Sub: ("-", ADD), A.Mul: ("*", MUL), A.Div: ("/", MUL)}[type(e)]
        return f"{_wrap(e.left, lvl)} {op} {_wrap(e.right, lvl + 1)}"
    if isinstance(e, A.Neg):
        return f"-{_wrap(e.arg, NEG)}"
    if isinstance(e, A.Pow):
        return f"{_wrap(e.base, ATOM)}^{_wrap(e.exp, NEG)}"
    if isinstance(e, A.Poch):
        n = "inf" if e.n is None else to_source(e.n)
        return f"poch({to_source(e.a)}, {_base(e.base_power)}, {n})"
    if isinstance(e, A.QBinom):
        return f"qbinom({to_source(e.n)}, {to_source(e.k)}, {e.base_power})"
    if isinstance(e, A.Sum):
        hi = "auto" if e.hi is None else to_source(e.hi)
        return f"sum({e.var}, {to_source(e.lo)}..{hi}, {to_source(e.body)})"
    if isinstance(e, A.Prod):
        return f"prod({e.var}, {to_source(e.lo)}..{to_source(e.hi)}, {to_source(e.body)})"
    if isinstance(e, A.AltSum):
        return f"altsum({e.var}, {to_source(e.lo)}..auto, {to_source(e.body)})"
    if isinstance(e, A.ChebV):
        return f"chebv({to_source(e.x)}, {to_source(e.index)})"
    if isinstance(e, (A.Fib, A.Luc, A.Invert)):
        name = {A.Fib: "fib", A.Luc: "luc", A.Invert: "inv"}[type(e)]
        return f"{name}({to_source(e.arg)})"
    if isinstance(e, A.SubstituteQ):
        return f"subq({to_source(e.arg)}, {e.k})"
    if isinstance(e, A.AppellLerch):
        args = ", ".join(to_source(a) for a in (e.level, e.a, e.b, e.base_power))
        return f"appell({args}{_residue(e.residue)})"
    if isinstance(e, A.Hecke):
        return f'hecke("{e.name}"{_residue(e.residue)})'
    if isinstance(e, A.Cyclo3):
        return f"cyclo3({to_source(e.s0)}, {to_source(e.s1)}, {to_source(e.s2)})"
    if isinstance(e, A.IntFunc):
        return f"{e.name}({', '.join(to_source(a) for a in e.args)})"
    raise TypeError(f"cannot print {type(e).__name__}")
