"""Evaluate expression trees to truncated series.

Products are flattened first: scalar factors multiply a coefficient, q-powers
(and the q-power prefix of Pochhammer symbols with negative exponents) add to
one shift, and only the remaining factors are expanded, at the order the
shift leaves.  That keeps Laurent intermediates from ever materialising.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from ..bailey import abel_alternating_sum
from ..chebyshev import cheb_v, fibonacci, lucas
from ..corpus.appell_lerch import AppellLerchSpec, appell_lerch_eval, cyclotomic_regroup
from ..corpus.builders import NAMED_HECKE, thm71_spec, thm75_specs
from ..corpus.hecke import hecke_eval
from ..errors import (
    MissingX,
    NegativeExponentTerm,
    SingularTerm,
    UnknownIdentifier,
    UnsupportedArgument,
)
from ..qfunctions import (
    SignedMonomial,
    pochhammer_factored,
    pochhammer_finite,
    pochhammer_infinite,
    pochhammer_reciprocal,
    qbinomial,
)
from ..series import FormalSeries, Term
from . import ast as A

SPARSE_FACTOR_TERMS = 4


class NotPolynomial(Exception):
    pass


@lru_cache(maxsize=None)
def is_scalar(e: A.Expr) -> bool:
    """True when ``e`` cannot depend on q."""
    if isinstance(e, (A.IntLit, A.RatLit, A.Var, A.ChebV, A.Fib, A.Luc, A.IntFunc)):
        return True
    if isinstance(e, (A.Add, A.Sub, A.Mul, A.Div)):
        return is_scalar(e.left) and is_scalar(e.right)
    if isinstance(e, A.Pow):
        return is_scalar(e.base) and is_scalar(e.exp)
    if isinstance(e, (A.Neg, A.Invert)):
        return is_scalar(e.arg)
    if isinstance(e, (A.Sum, A.Prod)):
        return e.hi is not None and is_scalar(e.body)
    return False


@lru_cache(maxsize=None)
def free_vars(e: A.Expr) -> frozenset:
    if isinstance(e, A.Var):
        return frozenset([e.name])
    out = set()
    for name in getattr(e, "__dataclass_fields__", {}):
        child = getattr(e, name)
        kids = child if isinstance(child, tuple) else (child,)
        for c in kids:
            if isinstance(c, A.Expr):
                out |= free_vars(c)
    if isinstance(e, (A.Sum, A.Prod, A.AltSum)):
        out.discard(e.var)
        out |= free_vars(e.lo) | (free_vars(e.hi) if getattr(e, "hi", None) is not None else frozenset())
    return frozenset(out)


def _factors(e: A.Expr, sign: int, out: list) -> int:
    """Flatten Mul/Div/Neg into (factor, +1|-1); returns the accumulated sign."""
    if isinstance(e, A.Mul):
        return _factors(e.left, sign, out) * _factors(e.right, sign, out)
    if isinstance(e, A.Div):
        return _factors(e.left, sign, out) * _factors(e.right, -sign, out)
    if isinstance(e, A.Neg):
        return -_factors(e.arg, sign, out)
    out.append((e, sign))
    return 1


def _poly_mul(p: dict, r: dict) -> dict:
    out = {}
    for i, a in p.items():
        for j, b in r.items():
            out[i + j] = out.get(i + j, 0) + a * b
    return out


def _poly_at(p: dict, n) -> Fraction:
    return sum((c * Fraction(n) ** d for d, c in p.items()), Fraction(0))


class Evaluator:
    def __init__(self, x=None):
        self.x = None if x is None else Fraction(x)

    # -- scalars -----------------------------------------------------------------
    def scalar(self, e: A.Expr, env: dict) -> Fraction:
        if isinstance(e, A.IntLit):
            return Fraction(e.value)
        if isinstance(e, A.RatLit):
            return Fraction(e.num, e.den)
        if isinstance(e, A.Var):
            if e.name == "x":
                if self.x is None:
                    raise MissingX("expression mentions x but no x was supplied")
                return self.x
            if e.name not in env:
                raise UnknownIdentifier(f"unbound variable {e.name!r}")
            return Fraction(env[e.name])
        if isinstance(e, A.Add):
            return self.scalar(e.left, env) + self.scalar(e.right, env)
        if isinstance(e, A.Sub):
            return self.scalar(e.left, env) - self.scalar(e.right, env)
        if isinstance(e, A.Mul):
            return self.scalar(e.left, env) * self.scalar(e.right, env)
        if isinstance(e, A.Div):
            d = self.scalar(e.right, env)
            if d == 0:
                raise SingularTerm("division by zero")
            return self.scalar(e.left, env) / d
        if isinstance(e, A.Neg):
            return -self.scalar(e.arg, env)
        if isinstance(e, A.Invert):
            v = self.scalar(e.arg, env)
            if v == 0:
                raise SingularTerm("inverse of zero")
            return 1 / v
        if isinstance(e, A.Pow):
            b = self.scalar(e.base, env)
            k = self.integer(e.exp, env)
            if b == 0 and k < 0:
                raise SingularTerm("zero to a negative power")
            return b ** k
        if isinstance(e, A.ChebV):
            return cheb_v(self.scalar(e.x, env), self.integer(e.index, env))
        if isinstance(e, A.Fib):
            return Fraction(fibonacci(self.integer(e.arg, env)))
        if isinstance(e, A.Luc):
            return Fraction(lucas(self.integer(e.arg, env)))
        if isinstance(e, A.IntFunc):
            args = [self.integer(a, env) for a in e.args]
            if e.name == "div":
                if args[1] == 0:
                    raise SingularTerm("div by zero")
                return Fraction(args[0] // args[1])
            if e.name == "isqrt":
                return Fraction(math.isqrt(max(args[0], 0)))
            return Fraction(min(args) if e.name == "min" else max(args))
        if isinstance(e, (A.Sum, A.Prod)) and e.hi is not None:
            acc = Fraction(0) if isinstance(e, A.Sum) else Fraction(1)
            for v in range(self.integer(e.lo, env), self.integer(e.hi, env) + 1):
                t = self.scalar(e.body, {**env, e.var: v})
                acc = acc + t if isinstance(e, A.Sum) else acc * t
            return acc
        raise UnsupportedArgument(f"{type(e).__name__} is not a scalar")

    def integer(self, e: A.Expr, env: dict) -> int:
        v = self.scalar(e, env)
        if v.denominator != 1:
            raise UnsupportedArgument(f"expected an integer, got {v}")
        return int(v)

    def monomial(self, e: A.Expr, env: dict):
        """(coeff, exponent) of a monomial c q^k; k may be negative."""
        if is_scalar(e):
            return self.scalar(e, env), 0
        if isinstance(e, A.QPower):
            return Fraction(1), self.integer(e.exp, env)
        if isinstance(e, A.Neg):
            c, k = self.monomial(e.arg, env)
            return -c, k
        if isinstance(e, (A.Mul, A.Div)):
            c1, k1 = self.monomial(e.left, env)
            c2, k2 = self.monomial(e.right, env)
            if isinstance(e, A.Mul):
                return c1 * c2, k1 + k2
            if c2 == 0:
                raise SingularTerm("division by zero")
            return c1 / c2, k1 - k2
        if isinstance(e, A.Pow):
            c, k = self.monomial(e.base, env)
            p = self.integer(e.exp, env)
            return c ** p, k * p
        raise UnsupportedArgument("expected a monomial c*q^k")

    # -- series ------------------------------------------------------------------
    def value(self, e: A.Expr, env: dict, order: int):
        """A Fraction when ``e`` is scalar, else a FormalSeries at ``order``."""
        if is_scalar(e):
            return self.scalar(e, env)
        if isinstance(e, (A.Mul, A.Div, A.Neg, A.QPower, A.Poch)) or (
            isinstance(e, A.Pow) and isinstance(e.base, (A.QPower, A.Poch))
        ):
            return self.product(e, env, order)
        if isinstance(e, (A.Add, A.Sub)):
            left = self.series(e.left, env, order)
            right = self.series(e.right, env, order)
            return left + right if isinstance(e, A.Add) else left - right
        if isinstance(e, A.Pow):
            k = self.integer(e.exp, env)
            base = self.series(e.base, env, order)
            return base ** k if k >= 0 else base.invert() ** (-k)
        if isinstance(e, A.Invert):
            return self.series(e.arg, env, order).invert()
        if isinstance(e, A.QBinom):
            return qbinomial(self.integer(e.n, env), self.integer(e.k, env), e.base_power, order)
        if isinstance(e, A.Sum):
            return self.sum(e, env, order)
        if isinstance(e, A.Prod):
            return self.prod(e, env, order)
        if isinstance(e, A.AltSum):
            return self.altsum(e, env, order)
        if isinstance(e, A.SubstituteQ):
            return self.substitute(e, env, order)
        if isinstance(e, A.AppellLerch):
            return self.appell(e, env, order)
        if isinstance(e, A.Hecke):
            return self.hecke(e, env, order)
        if isinstance(e, A.Cyclo3):
            return cyclotomic_regroup(*(self.series(s, env, order) for s in (e.s0, e.s1, e.s2)))
        raise UnsupportedArgument(f"cannot evaluate {type(e).__name__}")

    def series(self, e: A.Expr, env: dict, order: int) -> FormalSeries:
        v = self.value(e, env, order)
        if isinstance(v, FormalSeries):
            return v
        return FormalSeries.constant(v, order)

    # -- products ----------------------------------------------------------------
    def _poch_parts(self, e: A.Poch, env):
        c, k = self.monomial(e.a, env)
        n = None if e.n is None else self.integer(e.n, env)
        return c, k, n

    def product(self, e: A.Expr, env: dict, order: int) -> FormalSeries:
        flat = []
        coef = Fraction(_factors(e, 1, flat))
        shift = 0
        lazy = []  # (sign, order -> FormalSeries)
        for f, s in flat:
            if is_scalar(f):
                v = self.scalar(f, env)
                if s < 0 and v == 0:
                    raise SingularTerm("division by zero")
                coef = coef * v if s > 0 else coef / v
                continue
            power = 1
            if isinstance(f, A.Pow) and isinstance(f.base, (A.QPower, A.Poch)):
                power = self.integer(f.exp, env)
                f = f.base
            if isinstance(f, A.QPower):
                shift += s * power * self.integer(f.exp, env)
                continue
            if isinstance(f, A.Poch):
                c, k, n = self._poch_parts(f, env)
                if n is not None and k < 0:
                    scale, sh, _ = pochhammer_factored(c, k, f.base_power, n, 0)
                    if scale == 0:
                        if s > 0:
                            return FormalSeries.zero(order)
                        raise SingularTerm("reciprocal of a vanishing Pochhammer symbol")
                    coef = coef * scale ** power if s > 0 else coef / scale ** power
                    shift += s * power * sh
                    lazy.append((s, power, lambda o, c=c, k=k, n=n, b=f.base_power: pochhammer_factored(c, k, b, n, o)[2]))
                    continue
                if k < 0:
                    raise NegativeExponentTerm("infinite product with a negative power of q")
                m = SignedMonomial(c, k)
                if n is None:
                    lazy.append((s, power, lambda o, m=m, b=f.base_power: pochhammer_infinite(m, b, o)))
                elif s < 0:
                    lazy.append((1, power, lambda o, m=m, b=f.base_power, n=n: pochhammer_reciprocal(m, b, n, o)))
                else:
                    lazy.append((1, power, lambda o, m=m, b=f.base_power, n=n: pochhammer_finite(m, b, n, o)))
                continue
            lazy.append((s, 1, lambda o, f=f: self.series(f, env, o)))
        if coef == 0:
            return FormalSeries.zero(order)
        sub = order - shift
        if sub < 0:
            return FormalSeries.zero(order)
        acc = FormalSeries.one(sub)
        den = None
        for s, power, make in lazy:
            v = make(sub)
            if power != 1:
                v = v ** power if power > 0 else v.invert() ** (-power)
            if s > 0:
                acc = acc * v
            else:
                den = v if den is None else den * v
        if den is not None:
            acc = acc * den.invert()
        return acc.scale(coef).shift(shift, order)

    # -- sums --------------------------------------------------------------------
    def poly(self, e: A.Expr, var: str, env: dict) -> dict:
        """``e`` as a polynomial in ``var`` (other names read from ``env``)."""
        if var not in free_vars(e):
            if not is_scalar(e):
                raise NotPolynomial
            return {0: self.scalar(e, env)}
        if isinstance(e, A.Var):
            return {1: Fraction(1)}
        if isinstance(e, (A.Add, A.Sub)):
            p, r = self.poly(e.left, var, env), self.poly(e.right, var, env)
            sgn = 1 if isinstance(e, A.Add) else -1
            out = dict(p)
            for d, c in r.items():
                out[d] = out.get(d, 0) + sgn * c
            return out
        if isinstance(e, A.Mul):
            return _poly_mul(self.poly(e.left, var, env), self.poly(e.right, var, env))
        if isinstance(e, A.Div) and var not in free_vars(e.right):
            c = self.scalar(e.right, env)
            if c == 0:
                raise SingularTerm("division by zero")
            return {d: v / c for d, v in self.poly(e.left, var, env).items()}
        if isinstance(e, A.Neg):
            return {d: -c for d, c in self.poly(e.arg, var, env).items()}
        if isinstance(e, A.Pow) and var not in free_vars(e.exp):
            k = self.integer(e.exp, env)
            if k < 0:
                raise NotPolynomial
            out = {0: Fraction(1)}
            base = self.poly(e.base, var, env)
            for _ in range(k):
                out = _poly_mul(out, base)
            return out
        raise NotPolynomial

    def _degree_polys(self, body: A.Expr, var: str, env: dict):
        """Lower-bound polynomials (in var) for the valuation of ``body``,
        plus a constant correction for Laurent Pochhammer prefixes."""
        if isinstance(body, (A.Add, A.Sub)):
            p1, c1 = self._degree_polys(body.left, var, env)
            p2, c2 = self._degree_polys(body.right, var, env)
            return p1 + p2, min(c1, c2)
        flat = []
        _factors(body, 1, flat)
        total = {}
        correction = 0
        for f, s in flat:
            power = None
            if isinstance(f, A.Pow) and isinstance(f.base, A.QPower):
                power, f = f.exp, f.base
            if isinstance(f, A.QPower):
                p = self.poly(f.exp, var, env)
                if power is not None:
                    p = _poly_mul(p, self.poly(power, var, env))
                for d, c in p.items():
                    total[d] = total.get(d, 0) + s * c
            elif isinstance(f, A.Poch) and s > 0 and var not in free_vars(f.a):
                _, k = self.monomial(f.a, env)
                if k < 0:
                    # at most the negative exponents k, k+b, ... < 0 contribute
                    correction += sum(k + f.base_power * j for j in range(-k // f.base_power + 1) if k + f.base_power * j < 0)
        return [total], correction

    def auto_limit(self, e: A.Sum, env: dict, order: int, lo: int) -> int:
        """First index past which every term has valuation > order."""
        try:
            polys, corr = self._degree_polys(e.body, e.var, env)
        except NotPolynomial:
            polys = None
        if not polys or any(max((d for d, c in p.items() if c != 0), default=0) != 2 or p[2] <= 0 for p in polys):
            raise UnsupportedArgument(
                f"sum over {e.var!r} with 'auto' needs a q-exponent quadratic in {e.var!r}; give an explicit bound"
            )

        def bound(n):
            return min(_poly_at(p, n) for p in polys) + corr

        vertex = max(-p.get(1, 0) / (2 * p[2]) for p in polys)
        n = lo
        while n < vertex or bound(n) <= order:
            n += 1
        return n

    def sum(self, e: A.Sum, env: dict, order: int) -> FormalSeries:
        lo = self.integer(e.lo, env)
        hi = self.auto_limit(e, env, order, lo) - 1 if e.hi is None else self.integer(e.hi, env)
        total = FormalSeries.zero(order)
        for v in range(lo, hi + 1):
            total = total + self.series(e.body, {**env, e.var: v}, order)
        return total

    def prod(self, e: A.Prod, env: dict, order: int) -> FormalSeries:
        acc = FormalSeries.one(order)
        for v in range(self.integer(e.lo, env), self.integer(e.hi, env) + 1):
            f = self.value(e.body, {**env, e.var: v}, order)
            if not isinstance(f, FormalSeries):
                acc = acc.scale(f)
                continue
            terms = [(c, i) for i, c in enumerate(f.coeffs) if c]
            acc = acc.mul_sparse(terms) if len(terms) <= SPARSE_FACTOR_TERMS else acc * f
        return acc

    def _step_valuation(self, e: A.AltSum, env: dict, order: int):
        """n -> lower bound on the valuation of t_n / t_{n-1} - 1."""
        flat = []
        _factors(e.body, 1, flat)
        steps = []
        for f, _ in flat:
            if e.var not in free_vars(f):
                continue
            if isinstance(f, A.Pow) and e.var not in free_vars(f.exp):
                f = f.base
            if isinstance(f, A.Poch) and f.n is not None and e.var not in free_vars(f.a):
                _, k = self.monomial(f.a, env)
                p = self.poly(f.n, e.var, env)
                if k < 0 or any(d > 1 for d in p) or p.get(1, 0) < 0:
                    raise NotPolynomial
                steps.append(lambda n, k=k, p=p, b=f.base_power: k + b * _poly_at(p, n - 1))
            elif isinstance(f, A.Prod) and e.var not in free_vars(f.lo):
                p = self.poly(f.hi, e.var, env)
                if any(d > 1 for d in p) or p.get(1, 0) < 0:
                    raise NotPolynomial

                def step(n, f=f, p=p):
                    i = int(_poly_at(p, n - 1)) + 1
                    g = self.series(f.body, {**env, f.var: i}, order) - 1
                    v = g.valuation()
                    return order + 1 if v is None else v

                steps.append(step)
            else:
                raise NotPolynomial
        return lambda n: min((s(n) for s in steps), default=order + 1)

    def altsum(self, e: A.AltSum, env: dict, order: int) -> FormalSeries:
        lo = self.integer(e.lo, env)
        try:
            step = self._step_valuation(e, env, order)
        except NotPolynomial:
            raise UnsupportedArgument(
                "altsum body must be a product of Pochhammer symbols and finite products in the index"
            ) from None
        n = lo
        while step(n + 1) <= order:
            n += 1
        terms = [self.series(e.body, {**env, e.var: v}, order) for v in range(lo, n + 1)]
        total = abel_alternating_sum(terms)
        return -total if lo & 1 else total

    # -- special nodes -------------------------------------------------------------
    def substitute(self, e: A.SubstituteQ, env: dict, order: int) -> FormalSeries:
        if e.k == -1:
            return self.series(e.arg, env, order).substitute_negate()
        inner = self.series(e.arg, env, order // e.k)
        return FormalSeries.from_dict({i * e.k: c for i, c in enumerate(inner.coeffs)}, order)

    def appell(self, e: A.AppellLerch, env: dict, order: int) -> FormalSeries:
        ac, ak = self.monomial(e.a, env)
        bc, bk = self.monomial(e.b, env)
        if ak < 0:
            raise UnsupportedArgument("appell: a must be c*q^k with k >= 0")
        spec = AppellLerchSpec(self.integer(e.level, env), SignedMonomial(ac, ak), Term(bc, bk), self.integer(e.base_power, env))
        res = None if e.residue is None else tuple(self.integer(r, env) for r in e.residue)
        return appell_lerch_eval(spec, order, res)

    def hecke(self, e: A.Hecke, env: dict, order: int) -> FormalSeries:
        if e.name in NAMED_HECKE:
            specs = NAMED_HECKE[e.name]
        elif e.name in ("thm-7.1", "thm-7.5"):
            if self.x is None:
                raise MissingX(f"hecke({e.name!r}) is weighted by v_j(x)")
            specs = (thm71_spec(self.x),) if e.name == "thm-7.1" else thm75_specs(self.x)
        else:
            raise UnknownIdentifier(f"no Hecke-type sum named {e.name!r}")
        res = None if e.residue is None else tuple(self.integer(r, env) for r in e.residue)
        return hecke_eval(specs, order, res)


def evaluate(e: A.Expr, order: int, x=None, env: dict | None = None) -> FormalSeries:
    """Evaluate ``e`` to a series truncated at ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return Evaluator(x).series(e, dict(env or {}), order)


def evaluate_scalar(e: A.Expr, env: dict | None = None, x=None) -> Fraction:
    return Evaluator(x).scalar(e, dict(env or {}))
