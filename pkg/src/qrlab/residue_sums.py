"""Sums of residues and floors of k^2 and k^2 - k + 2 - 3n modulo p."""

from __future__ import annotations

from dataclasses import dataclass

from .arith_core import PrimeContext, floor_div, remainder


def _check_range(K: int, lo: int, hi: int) -> None:
    if not lo <= K <= hi:
        raise ValueError(f"range end {K} outside [{lo}, {hi}]")


def shifted(ctx: PrimeContext, k: int) -> int:
    """k^2 - k + 2 - 3n, negative for small k."""
    return k * k - k + 2 - 3 * ctx.n


def sum_qr(ctx: PrimeContext, K: int) -> int:
    """Sum of r(k^2) for k = 1..K."""
    _check_range(K, 1, ctx.p - 1)
    p = ctx.p
    return sum(k * k % p for k in range(1, K + 1))


def sum_shifted(ctx: PrimeContext, K: int, include_zero: bool = False) -> int:
    """Sum of r(k^2 - k + 2 - 3n) for k = 1..K, or k = 0..K with ``include_zero``.

    The k = 0 term (same as k = p) equals 2 - 3n + p.
    """
    _check_range(K, 1, ctx.p)
    start = 0 if include_zero else 1
    return sum(remainder(shifted(ctx, k), ctx.p) for k in range(start, K + 1))


def sum_floor_shifted(ctx: PrimeContext, K: int) -> int:
    _check_range(K, 1, ctx.p - 1)
    return sum(floor_div(shifted(ctx, k), ctx.p) for k in range(1, K + 1))


def sum_floor_squares(ctx: PrimeContext, K: int) -> int:
    """Sum of floor(k^2 / p) for k = 0..K."""
    _check_range(K, 0, ctx.p - 1)
    p = ctx.p
    return sum(k * k // p for k in range(K + 1))


@dataclass(frozen=True)
class SumReport:
    ctx: PrimeContext
    range_end: int
    qr_sum: int
    shifted_sum: int
    floor_shifted_sum: int
    floor_square_sum: int  # k = 0..range_end

    @property
    def endpoint_term(self) -> int:
        """r(2 - 3n), the k = 0 (and k = p) term of the shifted sum."""
        return 2 - 3 * self.ctx.n + self.ctx.p


def sum_reports(ctx: PrimeContext) -> dict[int, SumReport]:
    """All four sums over [1, n], [1, 2n] and [1, p - 1] in one pass.

    Keys are the range ends n, 2n, p - 1 (for n = 1 the last two coincide).
    """
    p, n = ctx.p, ctx.n
    ends = {n, 2 * n, p - 1}
    c = 2 - 3 * n
    out: dict[int, SumReport] = {}
    qr = sh = fsh = fsq = 0
    sq = 0  # k^2 mod p, updated incrementally
    for k in range(1, p):
        sq = (sq + 2 * k - 1) % p
        qr += sq
        fsq += k * k // p
        v = k * k - k + c
        q, r = divmod(v, p)
        sh += r
        fsh += q
        if k in ends:
            out[k] = SumReport(ctx, k, qr, sh, fsh, fsq)
    return out
