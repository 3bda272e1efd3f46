"""Exact integer primitives and the per-prime context.

Everything here is integer-only.  Floors of radicals such as
(1 + sqrt(4mp + 3p - 4)) / 2 are found with ``isqrt`` plus a boundary
comparison, never with floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# n <= 2**30 keeps every intermediate below 2**127 (k**2 <= p**2 ~ 2**64,
# sums over p terms ~ 2**96).
N_MAX = 1 << 30

# First twelve primes: deterministic for every x < 3.3e24 > 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class CompositeModulusError(ValueError):
    """Raised when 4n - 1 is not prime."""

    def __init__(self, n: int, value: int):
        super().__init__(f"4n - 1 = {value} is not prime (n = {n})")
        self.n = n
        self.value = value


def _check_modulus(q: int) -> None:
    if q <= 0:
        raise ValueError(f"modulus must be positive, got {q}")


def remainder(x: int, q: int) -> int:
    """Return r in [0, q) with x = q * floor_div(x, q) + r."""
    _check_modulus(q)
    return x % q


def floor_div(x: int, q: int) -> int:
    """Return floor(x / q), rounding toward minus infinity."""
    _check_modulus(q)
    return x // q


def isqrt(x: int) -> int:
    if x < 0:
        raise ValueError(f"isqrt of negative number {x}")
    return math.isqrt(x)


def is_prime(x: int) -> bool:
    """Deterministic Miller-Rabin; exact for all x < 2**64."""
    if x < 2:
        return False
    for b in _MR_BASES:
        if x % b == 0:
            return x == b
    d, s = x - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(s - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"legendre symbol needs an odd prime, got {p}")
    t = pow(a % p, (p - 1) // 2, p)
    if t == p - 1:
        return -1
    return t


@dataclass(frozen=True)
class PrimeContext:
    """One prime p = 4n - 1 with M = floor(n^2/p) and M0 = floor((n^2-4n+5)/p)."""

    p: int
    n: int
    M: int
    M0: int


def make_context(n: int) -> PrimeContext:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > N_MAX:
        raise ValueError(f"n = {n} exceeds supported range n <= 2**30")
    p = 4 * n - 1
    if not is_prime(p):
        raise CompositeModulusError(n, p)
    return PrimeContext(p=p, n=n, M=n * n // p, M0=(n * n - 4 * n + 5) // p)


def floor_q(ctx: PrimeContext, m: int) -> int:
    """floor(Q_m) where Q_m is the positive root of x^2 - x + 2 - 3n = m p.

    (2t - 1)^2 <= 4mp + 12n - 7 is equivalent to t^2 - t + 2 - 3n <= mp,
    so the floor is (1 + isqrt(4mp + 12n - 7)) // 2.
    """
    n, p = ctx.n, ctx.p
    target = m * p
    t = (1 + isqrt(4 * target + 12 * n - 7)) // 2
    if not (t * t - t + 2 - 3 * n <= target < (t + 1) * (t + 1) - (t + 1) + 2 - 3 * n):
        raise AssertionError(f"bracketing failed for floor(Q_{m}) at n = {n}")
    return t


def floor_r(ctx: PrimeContext, m: int) -> int:
    """floor(sqrt(m p))."""
    return isqrt(m * ctx.p)


@dataclass(frozen=True)
class RadicalFloors:
    floor_Q: tuple[int, ...]  # m = 0 .. M-1
    floor_R: tuple[int, ...]  # m = 1 .. M
    k_jump: tuple[int, ...]  # k_m = 1 + floor(Q_m), m = 0 .. M0
    ell: tuple[int, ...]  # 1 + floor(sqrt(mp + p - 1)), m = 0 .. M0

    @property
    def sum_Q(self) -> int:
        return sum(self.floor_Q)

    @property
    def sum_R(self) -> int:
        return sum(self.floor_R)


def radical_floors(ctx: PrimeContext) -> RadicalFloors:
    p = ctx.p
    return RadicalFloors(
        floor_Q=tuple(floor_q(ctx, m) for m in range(ctx.M)),
        floor_R=tuple(floor_r(ctx, m) for m in range(1, ctx.M + 1)),
        k_jump=tuple(1 + floor_q(ctx, m) for m in range(ctx.M0 + 1)),
        ell=tuple(1 + isqrt(m * p + p - 1) for m in range(ctx.M0 + 1)),
    )
