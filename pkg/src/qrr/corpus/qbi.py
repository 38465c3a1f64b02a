"""A squared q-binomial identity and its triple-product limit.

    sum_{j=-n-1}^{n} q^{2j^2+j} [2n+1, n-j]_{q^2}^2 = (1 + q^{2n+1}) [4n+1, 2n]

Both sides are polynomials of degree (2n+1)^2, so the check is exact.
"""

from __future__ import annotations

from ..bailey import recip_poch
from ..qfunctions import jacobi_triple_product, mono, pochhammer_finite, pochhammer_infinite
from ..report import FAIL, PASS, Stopwatch, VerificationReport
from ..series import FormalSeries, equal_to_order


def qbinomial_row(n: int, base_power: int, order: int) -> list:
    """[n, k] in base q^b for k = 0..n, each by one step from its neighbour."""
    row = [FormalSeries.one(order)]
    s = row[0]
    for k in range(1, n + 1):
        s = s.mul_binomial(1, base_power * (n - k + 1)).div_binomial(1, base_power * k)
        row.append(s)
    return row


def qbi_degree(n: int) -> int:
    return (2 * n + 1) ** 2


def qbi_sides(n: int, order: int | None = None):
    if n < 0:
        raise ValueError("n must be non-negative")
    order = qbi_degree(n) if order is None else order
    row = qbinomial_row(2 * n + 1, 2, order)
    lhs = FormalSeries.zero(order)
    for j in range(-n - 1, n + 1):
        d = 2 * j * j + j
        if d > order:
            continue
        b = row[n - j]
        lhs = lhs + (b * b).shift(d, order)
    big = qbinomial_row(4 * n + 1, 1, order)[2 * n]
    rhs = big + big.shift(2 * n + 1, order)
    return lhs, rhs


def qbinom_identity_check(n: int) -> VerificationReport:
    sw = Stopwatch()
    lhs, rhs = qbi_sides(n)
    cmp = equal_to_order(lhs, rhs, lhs.order)
    status = PASS if cmp.equal else FAIL
    return VerificationReport("qbi-8.1", lhs.order, status, sw.ms, cmp.mismatch, {"n": n})


def jtp_limit_lhs(order: int, n: int | None = None) -> FormalSeries:
    """(q^2;q^2)_inf^2 times the left side at a large n, truncated.

    [2N+1, N-j]_{q^2} agrees with 1/(q^2;q^2)_inf below q^{2(min(N-j, N+j+1)+1)},
    so N = order is exact for every j that can contribute.
    """
    N = order if n is None else n
    q2 = mono(1, 2)
    top = pochhammer_finite(q2, 2, 2 * N + 1, order)
    total = FormalSeries.zero(order)
    for j in range(-N - 1, N + 1):
        d = 2 * j * j + j
        if d > order:
            continue
        sub = order - d
        b = top.truncate(sub) * recip_poch(q2, 2, N - j, sub) * recip_poch(q2, 2, N + j + 1, sub)
        total = total + (b * b).shift(d, order)
    p = pochhammer_infinite(q2, 2, order)
    return total * p * p


def jtp_limit_rhs(order: int) -> FormalSeries:
    return jacobi_triple_product(mono(-1, 1), 4, order)
