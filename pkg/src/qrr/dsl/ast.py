"""Expression tree.  Nodes are frozen so parsed trees compare by value."""

from __future__ import annotations

from dataclasses import dataclass


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class RatLit(Expr):
    num: int
    den: int


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class QPower(Expr):
    exp: Expr


@dataclass(frozen=True)
class Poch(Expr):
    a: Expr
    base_power: int
    n: Expr | None  # None is the infinite product


@dataclass(frozen=True)
class QBinom(Expr):
    n: Expr
    k: Expr
    base_power: int


@dataclass(frozen=True)
class Sum(Expr):
    var: str
    lo: Expr
    hi: Expr | None  # None means auto
    body: Expr


@dataclass(frozen=True)
class Prod(Expr):
    var: str
    lo: Expr
    hi: Expr
    body: Expr


@dataclass(frozen=True)
class AltSum(Expr):
    """Abel value of sum_{var >= lo} (-1)^var body."""

    var: str
    lo: Expr
    body: Expr


@dataclass(frozen=True)
class ChebV(Expr):
    x: Expr
    index: Expr


@dataclass(frozen=True)
class Fib(Expr):
    arg: Expr


@dataclass(frozen=True)
class Luc(Expr):
    arg: Expr


@dataclass(frozen=True)
class Invert(Expr):
    arg: Expr


@dataclass(frozen=True)
class SubstituteQ(Expr):
    arg: Expr
    k: int  # q -> q^k, or q -> -q when k == -1


@dataclass(frozen=True)
class AppellLerch(Expr):
    level: Expr
    a: Expr
    b: Expr
    base_power: Expr
    residue: tuple | None = None  # (r, m) as Exprs


@dataclass(frozen=True)
class Hecke(Expr):
    name: str
    residue: tuple | None = None


@dataclass(frozen=True)
class Cyclo3(Expr):
    s0: Expr
    s1: Expr
    s2: Expr


@dataclass(frozen=True)
class IntFunc(Expr):
    """Integer helpers for bounds: div (floor), isqrt, min, max."""

    name: str
    args: tuple


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: Expr


Q = QPower(IntLit(1))
