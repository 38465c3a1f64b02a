"""Recursive-descent parser.

Precedence, loosest first: binary + and -, then * / and juxtaposition, then
unary minus, then ^ (right associative).  So -q^2 is -(q^2) and 2 n + 1 is
(2*n) + 1.
"""

from __future__ import annotations

from ..errors import DSLSyntaxError, UnknownIdentifier
from . import ast as A
from .lexer import EOF, IDENT, NUMBER, OP, STRING, Token, tokenize

RESERVED = {"q", "x", "inf", "auto"}
INT_FUNCS = {"div": 2, "isqrt": 1, "min": 2, "max": 2}


class Parser:
    def __init__(self, tokens: list, free_vars=()):
        self.toks = tokens
        self.i = 0
        self.scope = list(free_vars)

    # -- token helpers ---------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != EOF:
            self.i += 1
        return t

    def error(self, msg, tok: Token | None = None):
        t = tok or self.tok
        found = "end of input" if t.kind == EOF else repr(t.text)
        raise DSLSyntaxError(f"{msg}, found {found}", t.line, t.column)

    def at(self, text) -> bool:
        return self.tok.kind == OP and self.tok.text == text

    def expect(self, text) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def expect_ident(self) -> Token:
        if self.tok.kind != IDENT:
            self.error("expected a name")
        return self.advance()

    # -- grammar -------------------------------------------------------------------
    def parse_all(self) -> A.Expr:
        e = self.expr()
        if self.tok.kind != EOF:
            self.error("unexpected trailing input")
        return e

    def expr(self) -> A.Expr:
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.term()
            left = A.Add(left, right) if op == "+" else A.Sub(left, right)
        return left

    def _starts_primary(self) -> bool:
        t = self.tok
        return t.kind in (NUMBER, IDENT) or (t.kind == OP and t.text == "(")

    def term(self) -> A.Expr:
        left = self.unary()
        while True:
            if self.at("*") or self.at("/"):
                op = self.advance().text
                right = self.unary()
                left = A.Mul(left, right) if op == "*" else A.Div(left, right)
            elif self._starts_primary():
                left = A.Mul(left, self.unary())
            else:
                return left

    def unary(self) -> A.Expr:
        if self.at("-"):
            self.advance()
            return A.Neg(self.unary())
        return self.power()

    def power(self) -> A.Expr:
        base = self.primary()
        if self.at("^"):
            self.advance()
            exp = self.unary()
            if base == A.Q:
                return A.QPower(exp)
            return A.Pow(base, exp)
        return base

    def primary(self) -> A.Expr:
        t = self.tok
        if t.kind == NUMBER:
            self.advance()
            return A.IntLit(int(t.text))
        if t.kind == OP and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == IDENT:
            self.advance()
            if self.at("(") and not self._is_variable(t.text):
                return self.call(t)
            return self.name(t)
        if t.kind == EOF:
            self.error("expected an expression")
        self.error("expected an expression")

    def _is_variable(self, text: str) -> bool:
        # "n (n + 1)" is a product when n is bound; function names never are.
        return text in ("q", "x") or text in self.scope

    def name(self, t: Token) -> A.Expr:
        if t.text == "q":
            return A.Q
        if t.text == "x" or t.text in self.scope:
            return A.Var(t.text)
        if t.text in ("inf", "auto"):
            self.error(f"{t.text!r} is only allowed as a bound", t)
        raise UnknownIdentifier(f"unknown identifier {t.text!r} (line {t.line}, column {t.column})")

    # -- calls -----------------------------------------------------------------------
    def call(self, t: Token) -> A.Expr:
        fn = t.text
        handler = getattr(self, f"_call_{fn}", None)
        self.expect("(")
        if handler is None and fn not in INT_FUNCS:
            raise UnknownIdentifier(f"unknown function {fn!r} (line {t.line}, column {t.column})")
        if handler is not None:
            node = handler()
        else:
            args = [self.expr()]
            for _ in range(INT_FUNCS[fn] - 1):
                self.expect(",")
                args.append(self.expr())
            node = A.IntFunc(fn, tuple(args))
        self.expect(")")
        return node

    def _base_power(self) -> int:
        tok = self.tok
        e = self.unary()
        if e == A.Q:
            return 1
        if isinstance(e, A.QPower) and isinstance(e.exp, A.IntLit) and e.exp.value >= 1:
            return e.exp.value
        self.error("base must be q or q^k with a literal k >= 1", tok)

    def _int_literal(self) -> int:
        tok = self.tok
        e = self.unary()
        if isinstance(e, A.IntLit):
            return e.value
        if isinstance(e, A.Neg) and isinstance(e.arg, A.IntLit):
            return -e.arg.value
        self.error("expected an integer literal", tok)

    def _call_poch(self):
        a = self.expr()
        self.expect(",")
        b = self._base_power()
        self.expect(",")
        if self.tok.kind == IDENT and self.tok.text == "inf":
            self.advance()
            return A.Poch(a, b, None)
        return A.Poch(a, b, self.expr())

    def _call_qbinom(self):
        n = self.expr()
        self.expect(",")
        k = self.expr()
        b = 1
        if self.at(","):
            self.advance()
            b = self._int_literal()
            if b < 1:
                self.error("q-binomial base power must be >= 1")
        return A.QBinom(n, k, b)

    def _bound_var(self) -> str:
        t = self.expect_ident()
        if t.text in RESERVED:
            self.error(f"{t.text!r} cannot be a summation index", t)
        return t.text

    def _range(self, allow_auto: bool):
        lo = self.expr()
        self.expect("..")
        if self.tok.kind == IDENT and self.tok.text == "auto":
            if not allow_auto:
                self.error("'auto' is not allowed here")
            self.advance()
            return lo, None
        return lo, self.expr()

    def _scoped_body(self, var):
        self.scope.append(var)
        try:
            return self.expr()
        finally:
            self.scope.pop()

    def _call_sum(self):
        var = self._bound_var()
        self.expect(",")
        lo, hi = self._range(True)
        self.expect(",")
        return A.Sum(var, lo, hi, self._scoped_body(var))

    def _call_prod(self):
        var = self._bound_var()
        self.expect(",")
        lo, hi = self._range(False)
        self.expect(",")
        return A.Prod(var, lo, hi, self._scoped_body(var))

    def _call_altsum(self):
        var = self._bound_var()
        self.expect(",")
        tok = self.tok
        lo, hi = self._range(True)
        if hi is not None:
            self.error("altsum needs an 'auto' upper bound", tok)
        self.expect(",")
        return A.AltSum(var, lo, self._scoped_body(var))

    def _one(self, cls):
        return cls(self.expr())

    def _call_chebv(self):
        x = self.expr()
        self.expect(",")
        return A.ChebV(x, self.expr())

    def _call_fib(self):
        return self._one(A.Fib)

    def _call_luc(self):
        return self._one(A.Luc)

    def _call_inv(self):
        return self._one(A.Invert)

    def _call_subq(self):
        e = self.expr()
        self.expect(",")
        tok = self.tok
        k = self._int_literal()
        if k == 0 or k < -1:
            self.error("subq power must be >= 1, or -1 for q -> -q", tok)
        return A.SubstituteQ(e, k)

    def _optional_residue(self):
        if not self.at(","):
            return None
        self.advance()
        r = self.expr()
        self.expect(",")
        return (r, self.expr())

    def _call_appell(self):
        args = [self.expr()]
        for _ in range(3):
            self.expect(",")
            args.append(self.expr())
        return A.AppellLerch(*args, residue=self._optional_residue())

    def _call_hecke(self):
        t = self.tok
        if t.kind != STRING:
            self.error("hecke expects a quoted name")
        self.advance()
        return A.Hecke(t.text[1:-1], self._optional_residue())

    def _call_cyclo3(self):
        a = self.expr()
        self.expect(",")
        b = self.expr()
        self.expect(",")
        return A.Cyclo3(a, b, self.expr())

    def _call_rat(self):
        p = self._int_literal()
        self.expect(",")
        tok = self.tok
        d = self._int_literal()
        if d <= 0:
            self.error("rat denominator must be positive", tok)
        return A.RatLit(p, d)


def parse(source: str, free_vars=(), line: int = 1, column: int = 1) -> A.Expr:
    """Parse one expression.  ``free_vars`` are extra names allowed unbound."""
    return Parser(tokenize(source, line, column), free_vars).parse_all()
