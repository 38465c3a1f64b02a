"""Identity records and the verifier that runs them."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable

from ..bailey import andrews1_2_sides, sample_points, thm3_1_sides
from ..errors import QSeriesError, UnknownIdentity
from ..report import ERROR, FAIL, PASS, Stopwatch, VerificationReport
from ..series import equal_to_order
from . import builders as B
from .heine import heine_lhs, heine_rhs
from .qbi import jtp_limit_lhs, jtp_limit_rhs, qbi_degree, qbi_sides

ENV_ORDER = "QRR_DEFAULT_ORDER"


@dataclass(frozen=True)
class FiniteFamily:
    """A polynomial identity indexed by n = 0..n_max."""

    sides: Callable  # (n, x, order) or (n, order) -> (lhs, rhs)
    degree: Callable[[int], int]
    n_max: int


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    lhs: Callable | None
    rhs: Callable | None
    anchor: str
    default_order: int | None
    x_parametric: bool = False
    degree_bound: Callable[[int], int] | None = None
    integral: bool = True
    finite: FiniteFamily | None = None

    def sides(self, order: int, x=None):
        if self.x_parametric:
            return self.lhs(x, order), self.rhs(x, order)
        return self.lhs(order), self.rhs(order)


def _mi(deg):
    return lambda order: B.max_index(deg, order)


def _records():
    R = []

    def add(id, lhs, rhs, anchor, order=150, **kw):
        R.append(IdentityRecord(id, lhs, rhs, anchor, order, **kw))

    def xadd(id, lhs, rhs, anchor, bound, order=150):
        add(id, lhs, rhs, anchor, order, x_parametric=True, degree_bound=bound, integral=False)

    add("dyson-1.1", B.dyson_lhs, B.dyson_rhs, "Dyson's favourite: sum equals (q^9;q^9)_inf/(q;q)_inf", 200)
    xadd("andrews-1.4", B.andrews14_lhs, B.andrews14_rhs,
         "Andrews' x-generalisation of Dyson's identity (pair at a = q)",
         lambda o: max(_mi(lambda n: n * n + n)(o), _mi(lambda n: 3 * n * (n + 1) // 2)(o)))
    add("entry-5.3.4", B.entry534_lhs, B.entry534_rhs, "Lost notebook Entry 5.3.4, companion of Dyson's identity", 200)
    xadd("thm-1.1", B.thm11_lhs, B.thm11_rhs, "key pair in the first weak form: x-generalisation of Entry 5.3.4",
         _mi(lambda n: 2 * n * n))
    add("entry-5.3.3", B.entry533_lhs, B.entry533_rhs, "Lost notebook Entry 5.3.3 (x = -1)")
    add("entry-5.3.2", B.entry532_lhs, B.entry532_rhs, "Lost notebook Entry 5.3.2 (x = 0, q^2 -> q)")
    add("fib-4.4a", B.fib44a_lhs, B.fib44a_rhs, "x = 3/2: Fibonacci numbers on the theta side")
    add("fib-4.4b", B.fib44b_lhs, B.fib44b_rhs, "x = -3/2: Lucas numbers on the theta side")

    for k in (1, 2, 3):
        xadd(f"multisum-4.5-k{k}", partial(B.multisum_lhs, k), partial(B.multisum_rhs, k),
             f"k-fold multisum from iterating the pair, k = {k}", _mi(lambda n, k=k: 2 * k * n * n), order=100)
    fams = {"a": "x = -1", "b": "x = 1/2", "c": "x = 0, q^2 -> q", "d": "x = 3/2"}
    for k in (1, 2, 3):
        for f, what in fams.items():
            add(f"cor-4.6{f}-k{k}", partial(getattr(B, f"cor46{f}_lhs"), k), partial(getattr(B, f"cor46{f}_rhs"), k),
                f"multisum product identity, {what}, k = {k}", 100)

    xadd("thm-5.1", B.thm51_lhs, B.thm51_rhs, "key pair in the second weak form", _mi(lambda n: n * n))
    for sfx, nm, what in [("a", "b_m1", "x = -1"), ("b", "b_m12", "x = -1/2"), ("c", "b_0", "x = 0"),
                          ("d", "b_12", "x = 1/2"), ("e", "b_1", "x = 1, a new identity"), ("f", "b_32", "x = 3/2")]:
        add(f"cor-5.2{sfx}", getattr(B, nm + "_lhs"), getattr(B, nm + "_rhs"), f"second weak form at {what}")

    xadd("thm-5.3", B.thm53_lhs, B.thm53_rhs, "key pair in the third weak form (Abel-summed)", _mi(lambda n: n * n))
    for sfx, nm, what in [("a", "c_0", "x = 0, mod 4"), ("b", "c_m12", "x = -1/2, mod 12 companion to Slater's list"),
                          ("c", "c_1", "x = 1"), ("d", "c_32", "x = 3/2")]:
        add(f"cor-5.4{sfx}", getattr(B, nm + "_lhs"), getattr(B, nm + "_rhs"), f"third weak form at {what}")

    xadd("thm-6.1", B.thm61_lhs, B.thm61_rhs, "key pair in the fourth weak form", _mi(lambda n: n * n + n))
    for i, nm, what in [(2, "d_1", "x = 1"), (3, "d_2", "x = -1/2, cyclotomic"), (4, "d_3", "x = 0, q^2 -> q"),
                        (5, "d_4", "x = 3/2")]:
        add(f"cor-6.{i}", getattr(B, nm + "_lhs"), getattr(B, nm + "_rhs"), f"Appell-Lerch sum, {what}")
    add("mock-mu2", B.mu2_lhs, B.mu2_rhs, "two expressions for the second-order mock theta function mu")

    for a in range(5):
        for b in range(5):
            add(f"heine-{a}-{b}", partial(heine_lhs, a, b), partial(heine_rhs, a, b),
                f"limiting Heine transformation, alpha = {a}, beta = {b}")

    xadd("thm-7.1", B.thm71_lhs, B.thm71_rhs, "generalized Hecke-type series, j <= n/2",
         lambda o: max(_mi(lambda n: 2 * n * n + 2 * n)(o), _mi(lambda j: 3 * j * j + 2 * j)(o)))
    add("cor-7.2", B.cor72_lhs, B.cor72_rhs, "Hecke-type, x = -1")
    add("cor-7.3", B.cor73_lhs, B.cor73_rhs, "Hecke-type, x = 0, q^2 -> q")
    add("cor-7.4", B.cor74_lhs, B.cor74_rhs, "Hecke-type, x = -1/2, cyclotomic")
    xadd("thm-7.5", B.thm75_lhs, B.thm75_rhs, "generalized Hecke-type series, summand zero at n = 0",
         lambda o: max(_mi(lambda n: 3 * n * n - 2 * n)(o), 1))
    add("cor-7.6a", B.cor76a_lhs, B.cor76a_rhs, "Hecke-type, x = -1, 0 <= n summand vanishing at n = 0")
    add("cor-7.6b", B.cor76b_lhs, B.cor76b_rhs, "Hecke-type, x = 0, q^2 -> q")
    add("cor-7.6c", B.cor76c_lhs, B.cor76c_rhs, "Hecke-type, x = -1/2, cyclotomic")

    add("qbi-8.1", None, None, "squared q-binomial identity, n = 0..30", None,
        finite=FiniteFamily(lambda n, x, order: qbi_sides(n, order), qbi_degree, 30))
    add("jtp-limit-8", jtp_limit_lhs, jtp_limit_rhs, "finite form of the triple product: limit n -> inf", 100)
    add("thm-3.1", None, None, "finite identity behind the key Bailey pair", None, x_parametric=True, integral=False,
        finite=FiniteFamily(thm3_1_sides, lambda n: 2 * n * n, 25))
    add("andrews-1.2", None, None, "Andrews' finite Chebyshev identity", None, x_parametric=True, integral=False,
        finite=FiniteFamily(andrews1_2_sides, lambda n: n * (n + 1), 25))
    return R


REGISTRY: dict[str, IdentityRecord] = {r.id: r for r in _records()}


def get(id: str) -> IdentityRecord:
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownIdentity(id) from None


def resolve_order(record: IdentityRecord, order: int | None) -> int | None:
    """Explicit order, else the environment override, else the record default."""
    if order is not None:
        return order
    env = os.environ.get(ENV_ORDER)
    if env:
        return int(env)
    return record.default_order


def _verify_finite(rec: IdentityRecord, order: int | None, x, sw) -> VerificationReport:
    fam = rec.finite
    used = 0
    for n in range(fam.n_max + 1):
        o = fam.degree(n) if order is None else min(order, fam.degree(n))
        points = [x] if x is not None else sample_points(n + 2) if rec.x_parametric else [None]
        for pt in points:
            lhs, rhs = fam.sides(n, pt, o)
            cmp = equal_to_order(lhs, rhs, o)
            if not cmp:
                ctx = {"n": n} if pt is None else {"n": n, "x": pt}
                return VerificationReport(rec.id, o, FAIL, sw.ms, cmp.mismatch, ctx)
        used = max(used, o)
    return VerificationReport(rec.id, used if order is None else order, PASS, sw.ms,
                              context={"n_max": fam.n_max})


def verify(id: str, order: int | None = None, x=None) -> VerificationReport:
    """Check one identity; x-parametric records loop over sample points."""
    rec = get(id)
    order = resolve_order(rec, order)
    if order is not None and order < 0:
        raise ValueError("order must be non-negative")
    x = None if x is None else Fraction(x)
    sw = Stopwatch()
    try:
        if rec.finite is not None:
            return _verify_finite(rec, order, x, sw)
        if rec.x_parametric:
            points = [x] if x is not None else sample_points(rec.degree_bound(order) + 1)
        else:
            points = [None]
        for pt in points:
            lhs, rhs = rec.sides(order, pt)
            cmp = equal_to_order(lhs, rhs, order)
            ctx = {} if pt is None else {"x": pt}
            if not cmp:
                return VerificationReport(rec.id, order, FAIL, sw.ms, cmp.mismatch, ctx)
            if rec.integral and not (lhs.is_integral() and rhs.is_integral()):
                return VerificationReport(rec.id, order, ERROR, sw.ms, context=ctx,
                                          message="sides agree but are not integral")
        ctx = {} if not rec.x_parametric else {"x": x} if x is not None else {"points": len(points)}
        return VerificationReport(rec.id, order, PASS, sw.ms, context=ctx)
    except QSeriesError as exc:
        return VerificationReport(rec.id, order or 0, ERROR, sw.ms, message=f"{type(exc).__name__}: {exc}")
