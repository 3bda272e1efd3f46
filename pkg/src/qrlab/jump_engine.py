"""Total residues, jumps, the six-set partition of [2, 2n] and its bijections.

For p = 4n - 1 the total residue of 0 <= k <= p is

    gamma(k) = r((k-1)^2) + r(k + 1 - 3n)

and k is a jump when gamma(k) >= p.  Results that count jumps or pair up the
sets only hold for n > 3; for smaller n the values are still computed but
callers should treat them as hypothesis-excluded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith_core import PrimeContext, RadicalFloors, isqrt, radical_floors, remainder


class PropertyViolation(AssertionError):
    """A structural statement about jumps failed for a concrete k."""

    def __init__(self, message: str, ctx: PrimeContext, k: int | None = None):
        super().__init__(f"n={ctx.n} p={ctx.p}: {message}" + (f" (k={k})" if k is not None else ""))
        self.ctx = ctx
        self.k = k


def _require_n_gt_3(ctx: PrimeContext, what: str) -> None:
    if ctx.n <= 3:
        raise ValueError(f"{what} requires n > 3, got n = {ctx.n}")


def gamma(ctx: PrimeContext, k: int) -> int:
    if not 0 <= k <= ctx.p:
        raise ValueError(f"k = {k} outside [0, {ctx.p}]")
    p = ctx.p
    return remainder((k - 1) ** 2, p) + remainder(k + 1 - 3 * ctx.n, p)


def is_jump(ctx: PrimeContext, k: int) -> bool:
    return gamma(ctx, k) >= ctx.p


def gamma_table(ctx: PrimeContext) -> tuple[int, ...]:
    """gamma(k) for k = 0..p."""
    p, n = ctx.p, ctx.n
    out = []
    d = 1  # r((k-1)^2) at k = 0
    s = (1 - 3 * n) % p  # r(k + 1 - 3n) at k = 0
    for k in range(p + 1):
        out.append(d + s)
        # (k)^2 = (k-1)^2 + 2k - 1
        d = (d + 2 * k - 1) % p
        s = s + 1 if s + 1 < p else 0
    return tuple(out)


@dataclass(frozen=True)
class JumpProfile:
    ctx: PrimeContext
    gamma: tuple[int, ...]
    jumps: frozenset[int]
    J_n: int  # jumps in [2, n+2]
    J_total: int  # jumps in [2, p]
    J_total_pm1: int  # jumps in [2, p-1]
    J_low: int  # jumps in [2, 2n]
    J_high: int  # jumps in [2n+1, p]
    J_high_pm1: int  # jumps in [2n+1, p-1]

    @property
    def hypothesis_excluded(self) -> bool:
        return self.ctx.n <= 3

    def endpoint_report(self) -> dict[str, bool]:
        """Which upper endpoint reproduces the counts 2n - 2 and n - 2.

        gamma is only defined up to p = 4n - 1, so an endpoint of 4n reads
        the same as p.
        """
        n = self.ctx.n
        return {
            "total_to_p_minus_1": self.J_total_pm1 == 2 * n - 2,
            "total_to_p": self.J_total == 2 * n - 2,
            "high_to_p_minus_1": self.J_high_pm1 == n - 2,
            "high_to_p": self.J_high == n - 2,
        }


def jump_profile(ctx: PrimeContext) -> JumpProfile:
    p, n = ctx.p, ctx.n
    g = gamma_table(ctx)
    jumps = frozenset(k for k in range(p + 1) if g[k] >= p)

    def count(lo: int, hi: int) -> int:
        return sum(1 for k in jumps if lo <= k <= hi)

    return JumpProfile(
        ctx=ctx,
        gamma=g,
        jumps=jumps,
        J_n=count(2, n + 2),
        J_total=count(2, p),
        J_total_pm1=count(2, p - 1),
        J_low=count(2, 2 * n),
        J_high=count(2 * n + 1, p),
        J_high_pm1=count(2 * n + 1, p - 1),
    )


@dataclass(frozen=True)
class SetPartition:
    ctx: PrimeContext
    A_lt: tuple[int, ...]
    A_mid: tuple[int, ...]
    A_ge: tuple[int, ...]
    B_lt: tuple[int, ...]
    B_mid: tuple[int, ...]
    B_ge: tuple[int, ...]
    delta: dict[int, int] = field(repr=False)

    def sizes(self) -> dict[str, int]:
        return {name: len(getattr(self, name)) for name in ("A_lt", "A_mid", "A_ge", "B_lt", "B_mid", "B_ge")}


def classify_sets(ctx: PrimeContext) -> SetPartition:
    """Split [2, n+2] and [n+3, 2n] by delta = r((k-1)^2) against the thresholds."""
    if ctx.n < 2:
        raise ValueError("classify_sets requires n >= 2")
    p, n = ctx.p, ctx.n
    delta = {k: (k - 1) ** 2 % p for k in range(2, 2 * n + 1)}
    A: tuple[list[int], list[int], list[int]] = ([], [], [])
    B: tuple[list[int], list[int], list[int]] = ([], [], [])
    for k in range(2, n + 3):
        d = delta[k]
        A[0 if d < 3 * n - k - 1 else 1 if d < 3 * n + k - 3 else 2].append(k)
    for k in range(n + 3, 2 * n + 1):
        d = delta[k]
        B[0 if d < k - n - 2 else 1 if d < 3 * n - k - 1 else 2].append(k)
    return SetPartition(ctx, *map(tuple, A), *map(tuple, B), delta=delta)


@dataclass(frozen=True)
class BijectionWitness:
    kind: str  # "A_ge_to_B_lt" or "A_mid_to_B_mid"
    pairs: tuple[tuple[int, int], ...]
    aux: tuple[dict[str, int], ...] = ()


def _check_bijection(ctx: PrimeContext, pairs, domain, codomain, what: str) -> None:
    images = [kf for _, kf in pairs]
    if len(set(images)) != len(images):
        dup = next(kf for kf in images if images.count(kf) > 1)
        raise PropertyViolation(f"{what} is not injective", ctx, dup)
    if set(k for k, _ in pairs) != set(domain):
        raise PropertyViolation(f"{what} domain mismatch", ctx)
    for k, kf in pairs:
        if kf not in codomain:
            raise PropertyViolation(f"{what} sends {k} to {kf} outside codomain", ctx, k)
    missing = set(codomain) - set(images)
    if missing:
        raise PropertyViolation(f"{what} is not surjective", ctx, min(missing))


def bijection_A_ge(ctx: PrimeContext, part: SetPartition | None = None) -> BijectionWitness:
    """k -> 2n + 2 - k from A_ge onto B_lt."""
    _require_n_gt_3(ctx, "bijection_A_ge")
    part = part or classify_sets(ctx)
    pairs = tuple((k, 2 * ctx.n + 2 - k) for k in part.A_ge)
    _check_bijection(ctx, pairs, part.A_ge, part.B_lt, "A_ge -> B_lt")
    return BijectionWitness("A_ge_to_B_lt", pairs)


def first_u0(ctx: PrimeContext, k: int, m: int) -> int | None:
    """Least x <= n + 2 with (m+1) p <= (k + x - 1)^2 + 1, scanning up from 0."""
    target = (m + 1) * ctx.p
    for x in range(0, ctx.n + 3):
        if target <= (k + x - 1) ** 2 + 1:
            return x
    return None


def bijection_A_mid(ctx: PrimeContext, part: SetPartition | None = None) -> BijectionWitness:
    """k -> 2n + 2 - u0 - k from A_mid minus its two largest members onto B_mid."""
    _require_n_gt_3(ctx, "bijection_A_mid")
    part = part or classify_sets(ctx)
    if len(part.A_mid) < 2:
        raise PropertyViolation(f"|A_mid| = {len(part.A_mid)} < 2", ctx)
    p, n = ctx.p, ctx.n
    domain = part.A_mid[:-2]
    pairs = []
    aux = []
    for k in domain:
        m = (k - 1) ** 2 // p
        u0 = isqrt((m + 1) * p) + 2 - k
        if first_u0(ctx, k, m) != u0:
            raise PropertyViolation(f"u0 = {u0} is not the least solution", ctx, k)
        kf = 2 * n + 2 - u0 - k
        m_f = n + 2 - k - u0 + m
        w_f = part.delta[k] + k * (2 * u0 - 1) - p + n + u0 * u0 - 3 * u0 + 1
        if (kf - 1) ** 2 != m_f * p + w_f or not 0 <= w_f < p:
            raise PropertyViolation(f"(k_f - 1)^2 != m_f p + w_f for k_f = {kf}", ctx, k)
        pairs.append((k, kf))
        aux.append({"k": k, "m": m, "u0": u0, "m_f": m_f, "w_f": w_f})
    pairs_t = tuple(pairs)
    _check_bijection(ctx, pairs_t, domain, part.B_mid, "A_mid - {y, z} -> B_mid")
    return BijectionWitness("A_mid_to_B_mid", pairs_t, tuple(aux))


def b_mid_members(ctx: PrimeContext, part: SetPartition | None = None) -> tuple[int, ...]:
    """B_mid rebuilt as {2n - isqrt(mp - 1) : 1 <= m <= M0}."""
    _require_n_gt_3(ctx, "b_mid_members")
    members = tuple(sorted(2 * ctx.n - isqrt(m * ctx.p - 1) for m in range(1, ctx.M0 + 1)))
    part = part or classify_sets(ctx)
    if members != part.B_mid:
        raise PropertyViolation(f"constructed B_mid {members} != classified {part.B_mid}", ctx)
    if len(set(members)) != ctx.M0:
        raise PropertyViolation("constructed B_mid members are not distinct", ctx)
    return members


def b_mid_cardinality_report(ctx: PrimeContext, part: SetPartition) -> dict[str, int | bool]:
    """|B_mid| against M0 and against the printed floor((n^2 - 4n + 5) / 2)."""
    n = ctx.n
    printed = (n * n - 4 * n + 5) // 2
    size = len(part.B_mid)
    return {
        "B_mid_size": size,
        "M0": ctx.M0,
        "printed_half": printed,
        "matches_M0": size == ctx.M0,
        "matches_printed_half": size == printed,
    }


def structure_checks(
    ctx: PrimeContext,
    prof: JumpProfile,
    part: SetPartition,
    floors: RadicalFloors | None = None,
) -> dict[str, bool]:
    """Lemma-level statements, checked exhaustively for one prime (n > 3)."""
    _require_n_gt_3(ctx, "structure_checks")
    p, n = ctx.p, ctx.n
    g = prof.gamma
    floors = floors or radical_floors(ctx)
    A_lt, A_mid, A_ge = set(part.A_lt), set(part.A_mid), set(part.A_ge)
    B_lt, B_mid, B_ge = set(part.B_lt), set(part.B_mid), set(part.B_ge)

    def tri(k: int, lt: set, mid: set, ge: set, mid_low_jumps: bool) -> bool:
        a, b = g[k] >= p, g[p + 2 - k] >= p
        if k in lt:
            return not a and not b
        if k in mid:
            # A side: gamma(p+2-k) < p <= gamma(k); B side the other way round
            return (a and not b) if mid_low_jumps else (b and not a)
        return a and b

    window = [
        3 <= km <= n + 2
        and 3 * n - km - 1 < part.delta[km] <= 3 * n + km - 4
        and g[km] >= p
        for km in floors.k_jump
    ]
    type_b = [
        g[k] >= p and part.delta[k] > 3 * n + k - 3
        for km, lm in zip(floors.k_jump, floors.ell)
        for k in range(km + 1, min(lm, n + 2) + 1)
    ]
    ge_char = {
        k for km, lm in zip(floors.k_jump, floors.ell) for k in range(km + 1, lm + 1)
    }
    return {
        "gamma_0_1_below_p": g[0] < p and g[1] < p,
        "trichotomy_A": all(tri(k, A_lt, A_mid, A_ge, True) for k in range(2, n + 3)),
        "trichotomy_B": all(tri(k, B_lt, B_mid, B_ge, False) for k in range(n + 3, 2 * n + 1)),
        "alternation_n1_n2": (g[n + 1] >= p) != (g[n + 2] >= p),
        "jn_is_A_mid_plus_A_ge": prof.J_n == len(A_mid) + len(A_ge),
        "A_ge_characterization": ge_char == A_ge,
        "k_m_window": all(window),
        "type_b_jumps": all(type_b),
        "radical_floor_monotone": (
            list(floors.k_jump) == sorted(floors.k_jump)
            and list(floors.ell) == sorted(floors.ell)
            and all(km <= lm <= n + 2 for km, lm in zip(floors.k_jump, floors.ell))
        ),
    }
