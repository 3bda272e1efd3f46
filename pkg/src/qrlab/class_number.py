"""Class number h(-p) for p = 4n - 1 and the catalog of exact identities.

h comes from the residue sum

    sum_{k=1}^{p-1} r(k^2) = C(p, 2) - p h,

and is cross-checked against (p-1)/2 - (1/p) sum r(k^2) and against a
truncated Dirichlet series with the Legendre symbol as character.

Every identity is evaluated as two integers: both sides multiplied by a fixed
denominator d.  An identity holds exactly when the two integers are equal.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .arith_core import PrimeContext, RadicalFloors, radical_floors
from .jump_engine import JumpProfile, SetPartition, classify_sets, jump_profile
from .residue_sums import SumReport, sum_reports

log = logging.getLogger(__name__)

DEFAULT_BLOCKS = 50
UNITS = 2


class ConsistencyError(ArithmeticError):
    """C(p, 2) - sum r(k^2) is not divisible by p."""


@dataclass(frozen=True)
class DirichletEstimate:
    value: float
    nearest: int
    terms: int
    converged: bool  # |value - nearest| < 0.25


@dataclass(frozen=True)
class ClassNumberResult:
    ctx: PrimeContext
    h: int
    h_half: int
    dirichlet: DirichletEstimate | None = None

    @property
    def agreement(self) -> tuple[bool, bool | None, bool | None]:
        """(h == h_half, Dirichlet rounds to h, Dirichlet converged)."""
        if self.dirichlet is None:
            return (self.h == self.h_half, None, None)
        d = self.dirichlet
        return (self.h == self.h_half, d.nearest == self.h, d.converged)


def h_from_residue_sum(
    ctx: PrimeContext,
    qr_sum: int | None = None,
    dirichlet: bool = False,
    max_terms: int | None = None,
) -> ClassNumberResult:
    """Exact h(-p), optionally with the Dirichlet series estimate attached.

    p = 3 is rejected: Q(sqrt(-3)) has six units and the residue-sum relation
    does not hold there.
    """
    p = ctx.p
    if p == 3:
        raise ValueError("h_from_residue_sum requires p > 3")
    if qr_sum is None:
        qr_sum = sum(k * k % p for k in range(1, p))
    h, rem = divmod(p * (p - 1) // 2 - qr_sum, p)
    if rem:
        raise ConsistencyError(f"p = {p}: C(p,2) - {qr_sum} leaves remainder {rem} mod p")
    # h_half = (p-1)/2 - qr_sum/p, cleared by 2p
    num = p * (p - 1) - 2 * qr_sum
    if num % (2 * p):
        raise ConsistencyError(f"p = {p}: (p-1)/2 - sum/p is not an integer")
    h_half = num // (2 * p)
    if h < 1:
        raise ConsistencyError(f"p = {p}: non-positive class number {h}")
    est = h_dirichlet_estimate(ctx, max_terms) if dirichlet else None
    return ClassNumberResult(ctx, h, h_half, est)


def h_dirichlet_estimate(ctx: PrimeContext, max_terms: int | None = None) -> DirichletEstimate:
    """w sqrt(p)/(2 pi) * sum chi(r)/r, chi = (r/p), summed in whole periods of p.

    w = 2 is the number of roots of unity in Q(sqrt(-p)) for p > 3; without
    it the series gives h/2.

    The estimate is the mean of the partial sums at the ends of the last two
    periods.  Non-convergence is logged, never raised.
    """
    p = ctx.p
    if p == 3:
        raise ValueError("Dirichlet estimate requires p > 3")
    if max_terms is None:
        max_terms = DEFAULT_BLOCKS * p
    if max_terms < p:
        raise ValueError(f"max_terms = {max_terms} must be at least p = {p}")
    blocks = max_terms // p

    table = -np.ones(p, dtype=np.float64)
    table[np.arange(1, p, dtype=np.int64) ** 2 % p] = 1.0
    table[0] = 0.0
    chi = np.roll(table, -1)  # chi(s) for s = 1..p
    offsets = np.arange(1, p + 1, dtype=np.float64)

    total = 0.0
    prev = 0.0
    for j in range(blocks):
        prev = total
        total += float(np.sum(chi / (offsets + j * p)))
    partial = (prev + total) / 2 if blocks > 1 else total
    value = UNITS * math.sqrt(p) / (2 * math.pi) * partial
    nearest = round(value)
    converged = abs(value - nearest) < 0.25
    if not converged:
        log.warning("Dirichlet estimate for p=%d not converged: %.6f after %d terms", p, value, blocks * p)
    return DirichletEstimate(value, nearest, blocks * p, converged)


@dataclass(frozen=True)
class PrimeData:
    """Everything the identity pass needs for one prime, built once."""

    ctx: PrimeContext
    floors: RadicalFloors
    sums: dict[int, SumReport]
    profile: JumpProfile
    partition: SetPartition | None
    h: int | None

    @property
    def full(self) -> SumReport:
        return self.sums[self.ctx.p - 1]

    @property
    def half(self) -> SumReport:
        return self.sums[2 * self.ctx.n]

    @property
    def low(self) -> SumReport:
        return self.sums[self.ctx.n]


def build_prime_data(ctx: PrimeContext) -> PrimeData:
    sums = sum_reports(ctx)
    profile = jump_profile(ctx)
    part = classify_sets(ctx) if ctx.n >= 2 else None
    h = h_from_residue_sum(ctx, sums[ctx.p - 1].qr_sum).h if ctx.p > 3 else None
    return PrimeData(ctx, radical_floors(ctx), sums, profile, part, h)


@dataclass(frozen=True)
class IdentityReport:
    id: str
    lhs_times_d: int | None
    rhs_times_d: int | None
    denominator: int | None
    holds: bool | None
    skip_reason: str | None = None
    witness: dict = field(default_factory=dict, compare=False)

    @property
    def status(self) -> str:
        if self.skip_reason is not None:
            return "skipped"
        return "pass" if self.holds else "fail"


# id -> (valid for every n, evaluator returning (lhs*d, rhs*d, d, extra witness))
_Evaluator = Callable[[PrimeData], tuple[int, int, int, dict]]
CATALOG: dict[str, tuple[bool, _Evaluator]] = {}


def _identity(iid: str, all_n: bool = False):
    def deco(fn: _Evaluator) -> _Evaluator:
        CATALOG[iid] = (all_n, fn)
        return fn

    return deco


def _fsq(d: PrimeData) -> int:
    """sum_{k=0}^{n} floor(k^2 / p); equal to the sum from k = 1."""
    return d.low.floor_square_sum


@_identity("I01")
def _i01(d):
    c = d.ctx
    return d.floors.sum_R - d.floors.sum_Q, d.profile.J_n - c.M - 1, 1, {}


@_identity("I02")
def _i02(d):
    c = d.ctx
    return d.low.floor_shifted_sum + d.floors.sum_Q, (c.M - 1) * c.n, 1, {}


@_identity("I03", all_n=True)
def _i03(d):
    # k = 0 included on the left, as in the small-n tables; the k = 1.. form
    # differs from this by the endpoint term on both sides
    c, s = d.ctx, d.full
    lhs = s.shifted_sum + s.endpoint_term
    rhs = s.qr_sum + c.p
    return lhs, rhs, 1, {"from_one_lhs": s.shifted_sum, "from_one_rhs": s.qr_sum + 3 * c.n - 2}


@_identity("I04", all_n=True)
def _i04(d):
    c, s = d.ctx, d.half
    lhs = s.shifted_sum + s.endpoint_term
    rhs = s.qr_sum + 2 * c.n + 1
    return lhs, rhs, 1, {"from_one_lhs": s.shifted_sum, "from_one_rhs": s.qr_sum + c.n}


@_identity("I05")
def _i05(d):
    c, s, J = d.ctx, d.low, d.profile.J_n
    return 2 * s.shifted_sum, 2 * s.qr_sum + c.n * (c.n + 1) - 2 * c.p * (J - 1 - c.M), 2, {}


@_identity("I06")
def _i06(d):
    c, s = d.ctx, d.full
    return 3 * c.p * s.floor_shifted_sum, c.p * (c.p * (c.p - 5) + 6 - c.n) - 3 * s.qr_sum, 3 * c.p, {}


@_identity("I07")
def _i07(d):
    c, s, n = d.ctx, d.half, d.ctx.n
    return 3 * c.p * s.floor_shifted_sum, n * (2 * n - 1) * (4 * n - 7) - 3 * s.qr_sum, 3 * c.p, {}


@_identity("I08")
def _i08(d):
    c, s, n, J = d.ctx, d.low, d.ctx.n, d.profile.J_n
    cubic = (n + 1) * (2 * n * n - 23 * n + 6)
    lhs = 6 * c.p * s.floor_shifted_sum
    rhs = cubic - 6 * s.qr_sum + 6 * c.p * (J - c.M)
    # as printed the cubic term carries 3p instead of 6p
    printed_rhs = cubic - 3 * s.qr_sum + 3 * c.p * (J - c.M)
    printed_lhs = 3 * c.p * s.floor_shifted_sum
    return lhs, rhs, 6 * c.p, {"printed_denominator": 3 * c.p, "printed_lhs": printed_lhs,
                               "printed_rhs": printed_rhs, "printed_holds": printed_lhs == printed_rhs}


@_identity("I09")
def _i09(d):
    c, n, p = d.ctx, d.ctx.n, d.ctx.p
    lhs = 6 * p * (_fsq(d) + d.low.floor_shifted_sum)
    rhs = p * n * (n - 5) + 6 * p * c.M - 3 * d.full.qr_sum
    return lhs, rhs, 6 * p, {}


@_identity("I10")
def _i10(d):
    c, n, p, f = d.ctx, d.ctx.n, d.ctx.p, d.floors
    lhs = 3 * d.full.qr_sum
    rhs = 6 * p * (f.sum_R + f.sum_Q) - 6 * c.M * p * (2 * n - 1) + p * (n * n + n)
    return lhs, rhs, 6, {}


@_identity("I11")
def _i11(d):
    c, n, J, h = d.ctx, d.ctx.n, d.profile.J_n, d.h
    return 6 * J + 12 * c.M * (n - 1), 3 * h + 12 * d.floors.sum_R + n * n - 5 * n + 9, 12, {}


@_identity("I12")
def _i12(d):
    c, n, J, h = d.ctx, d.ctx.n, d.profile.J_n, d.h
    return -6 * J + 12 * c.M * n, 3 * h + 12 * d.floors.sum_Q + n * n - 5 * n - 3, 12, {}


@_identity("I13")
def _i13(d):
    # sum_{k=1}^{n-1} floor(k^2/p) drops the k = n term, which is M
    c, n, J, h = d.ctx, d.ctx.n, d.profile.J_n, d.h
    return 6 * J + 12 * (_fsq(d) - c.M), 3 * h + n * n - 5 * n + 9, 12, {}


@_identity("I14")
def _i14(d):
    c, n, p, h = d.ctx, d.ctx.n, d.ctx.p, d.h
    return d.full.shifted_sum, p * (2 * n - h) - n - 1, 1, {}


@_identity("I15")
def _i15(d):
    n, p, h = d.ctx.n, d.ctx.p, d.h
    return 2 * d.half.shifted_sum, p * (2 * n - h) + 1, 2, {}


@_identity("I16")
def _i16(d):
    n, p, h, J = d.ctx.n, d.ctx.p, d.h, d.profile.J_n
    return 4 * d.low.shifted_sum, p * (3 * n + 2 - 2 * J - h) - (n + 1) * (n - 1), 4, {}


@_identity("I17")
def _i17(d):
    c, n, p, h, J = d.ctx, d.ctx.n, d.ctx.p, d.h, d.profile.J_n
    return 4 * d.low.qr_sum, p * (2 * J + 2 * n - 3 - 4 * c.M - h) + n * (n + 1), 4, {}


@_identity("I18")
def _i18(d):
    n, h = d.ctx.n, d.h
    return 3 * d.full.floor_shifted_sum, 3 * h + 16 * n * n - 35 * n + 15, 3, {}


@_identity("I19")
def _i19(d):
    n, h = d.ctx.n, d.h
    lhs = 6 * d.half.floor_shifted_sum
    printed_rhs = 3 * h + 4 * n * n - 14 * n + 9
    return lhs, printed_rhs - 6, 6, {"printed_rhs": printed_rhs, "printed_holds": lhs == printed_rhs}


@_identity("I20")
def _i20(d):
    n, h, J = d.ctx.n, d.h, d.profile.J_n
    return 12 * d.low.floor_shifted_sum, 3 * h + 6 * J + n * n - 17 * n - 3, 12, {}


@_identity("I21")
def _i21(d):
    c, n, h = d.ctx, d.ctx.n, d.h
    return 6 * d.low.floor_shifted_sum, 3 * h + 6 * c.M + n * n - 11 * n + 3 - 6 * _fsq(d), 6, {}


@_identity("I22")
def _i22(d):
    c, n, h = d.ctx, d.ctx.n, d.h
    rhs = 3 * h + 6 * d.floors.sum_R + 6 * c.M * (1 - n) + n * n - 11 * n + 3
    return 6 * d.low.floor_shifted_sum, rhs, 6, {}


@_identity("I23")
def _i23(d):
    c, n, h, f = d.ctx, d.ctx.n, d.h, d.floors
    base = 3 * (2 * c.M + 1) * (2 * n - 1) - (n * n + n)
    rhs = base - 6 * (f.sum_R + f.sum_Q)
    # as printed the radical floors enter as a difference
    printed_rhs = base - 6 * (f.sum_R - f.sum_Q)
    return 3 * h, rhs, 3, {"printed_rhs": printed_rhs, "printed_holds": 3 * h == printed_rhs}


@_identity("I24")
def _i24(d):
    p = d.ctx.p
    return 2 * p * d.h, p * (p - 1) - 2 * d.full.qr_sum, 2 * p, {}


@_identity("I25")
def _i25(d):
    c = d.ctx
    return d.floors.sum_R, c.M * c.n - _fsq(d), 1, {}


def _endpoint_count(options: dict[str, int], target: int) -> tuple[int, dict]:
    matching = [name for name, v in options.items() if v == target]
    chosen = matching[0] if matching else next(iter(options))
    return options[chosen], {"endpoint": chosen, "matching_endpoints": ",".join(matching), **options}


@_identity("C1")
def _c1(d):
    pr, n = d.profile, d.ctx.n
    lhs, w = _endpoint_count({"to_p": pr.J_total, "to_p_minus_1": pr.J_total_pm1}, 2 * n - 2)
    return lhs, 2 * n - 2, 1, w


@_identity("C2")
def _c2(d):
    return d.profile.J_low, d.ctx.n, 1, {}


@_identity("C3")
def _c3(d):
    pr, n = d.profile, d.ctx.n
    lhs, w = _endpoint_count({"to_p": pr.J_high, "to_p_minus_1": pr.J_high_pm1}, n - 2)
    return lhs, n - 2, 1, w


@_identity("C4")
def _c4(d):
    # three cardinality relations folded into one integer: sum of squared gaps
    s = d.partition.sizes()
    gaps = (
        s["A_ge"] - s["B_lt"],
        s["A_mid"] - s["B_mid"] - 2,
        s["A_lt"] - s["B_ge"] - 1,
    )
    return sum(g * g for g in gaps), 0, 1, dict(s)


IDENTITY_IDS: tuple[str, ...] = tuple(CATALOG)


def verify_identity(ctx: PrimeContext, iid: str, data: PrimeData | None = None) -> IdentityReport:
    if iid not in CATALOG:
        raise KeyError(f"unknown identity {iid!r}")
    all_n, fn = CATALOG[iid]
    if not all_n and ctx.n <= 3:
        return IdentityReport(iid, None, None, None, None, "hypothesis n>3")
    data = data or build_prime_data(ctx)
    lhs, rhs, den, extra = fn(data)
    witness = {
        "J_n": data.profile.J_n,
        "M": ctx.M,
        "h": data.h,
        "sum_R": data.floors.sum_R,
        "sum_Q": data.floors.sum_Q,
        **extra,
    }
    return IdentityReport(iid, lhs, rhs, den, lhs == rhs, None, witness)


def verify_all(data: PrimeData, ids: tuple[str, ...] | None = None) -> list[IdentityReport]:
    return [verify_identity(data.ctx, iid, data) for iid in (ids or IDENTITY_IDS)]
