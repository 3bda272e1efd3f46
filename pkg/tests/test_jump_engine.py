import pytest

from oracle import ref_prime
from qrlab.arith_core import make_context
from qrlab.jump_engine import (
    PropertyViolation,
    _check_bijection,
    b_mid_cardinality_report,
    b_mid_members,
    bijection_A_ge,
    bijection_A_mid,
    classify_sets,
    first_u0,
    gamma,
    gamma_table,
    is_jump,
    jump_profile,
    structure_checks,
)

# A^[) and A^< as listed for small n
LISTED = {
    5: ((5, 7), (2, 3, 4, 6)),
    6: ((5, 7), (2, 3, 4, 6, 8)),
    8: ((6, 8, 10), (2, 3, 4, 5, 7, 9)),
    11: ((7, 10, 12), None),
    12: ((7, 10, 12, 14), None),
    15: ((8, 11, 14, 16), None),
    18: ((8, 12, 15, 17, 19), None),
}


def test_gamma_examples():
    ctx = make_context(3)
    assert gamma(ctx, 4) == 16
    assert gamma(ctx, 5) == 13
    assert gamma(ctx, 2) == 6
    with pytest.raises(ValueError):
        gamma(ctx, 12)
    with pytest.raises(ValueError):
        gamma(ctx, -1)


def test_is_jump_examples():
    assert is_jump(make_context(3), 4)
    assert not is_jump(make_context(3), 2)
    assert is_jump(make_context(5), 5)


def test_gamma_table_matches_pointwise(small_ns):
    for n in [1, 2, 3] + small_ns[:30]:
        ctx = make_context(n)
        assert gamma_table(ctx) == tuple(gamma(ctx, k) for k in range(ctx.p + 1))
        assert all(0 <= g <= 2 * ctx.p - 2 for g in gamma_table(ctx))


@pytest.mark.parametrize("n", sorted(LISTED))
def test_classify_sets_listed(n):
    part = classify_sets(make_context(n))
    mid, lt = LISTED[n]
    assert part.A_mid == mid
    if lt is not None:
        assert part.A_lt == lt


def test_classify_sets_n3():
    part = classify_sets(make_context(3))
    assert part.A_mid == (4, 5) and part.A_lt == (2, 3)
    with pytest.raises(ValueError):
        classify_sets(make_context(1))


def test_partition_covers_ranges(small_ns):
    for n in small_ns:
        part = classify_sets(make_context(n))
        a = part.A_lt + part.A_mid + part.A_ge
        b = part.B_lt + part.B_mid + part.B_ge
        assert sorted(a) == list(range(2, n + 3))
        assert sorted(b) == list(range(n + 3, 2 * n + 1))


def test_jump_profile_n5():
    prof = jump_profile(make_context(5))
    assert prof.J_total == 8
    assert prof.J_n == 2
    assert prof.J_low == 5
    assert prof.J_high == 3


def test_jump_counts(small_ns):
    for n in small_ns:
        prof = jump_profile(make_context(n))
        assert prof.J_total == 2 * n - 2
        assert prof.J_low == n
        assert prof.J_high == n - 2
        assert all(prof.endpoint_report().values())


def test_small_n_flagged():
    for n in (1, 2, 3):
        assert jump_profile(make_context(n)).hypothesis_excluded
    assert not jump_profile(make_context(5)).hypothesis_excluded


def test_bijection_A_ge_examples():
    w = bijection_A_ge(make_context(5))
    assert w.pairs == ()
    ctx = make_context(8)
    part = classify_sets(ctx)
    assert len(bijection_A_ge(ctx, part).pairs) == len(part.A_ge) == len(part.B_lt)
    w = bijection_A_ge(make_context(18))
    assert w.pairs == ((9, 29),)


def test_bijection_A_mid_examples():
    assert bijection_A_mid(make_context(5)).pairs == ()
    w8 = bijection_A_mid(make_context(8))
    assert w8.pairs == ((6, 11),)
    assert len(w8.pairs) == len(classify_sets(make_context(8)).B_mid) == 1
    w12 = bijection_A_mid(make_context(12))
    assert len(w12.pairs) == 2
    assert sorted(kf for _, kf in w12.pairs) == list(classify_sets(make_context(12)).B_mid)


def test_bijection_aux_values(small_ns):
    for n in small_ns:
        ctx = make_context(n)
        for a in bijection_A_mid(ctx).aux:
            k, u0, m = a["k"], a["u0"], a["m"]
            assert first_u0(ctx, k, m) == u0
            assert (m + 1) * ctx.p <= (k + u0 - 1) ** 2 + 1
            assert (m + 1) * ctx.p > (k + u0 - 2) ** 2 + 1
            kf = 2 * n + 2 - u0 - k
            assert (kf - 1) ** 2 % ctx.p == a["w_f"]


def test_bijections_require_n_gt_3():
    for fn in (bijection_A_ge, bijection_A_mid, b_mid_members):
        with pytest.raises(ValueError):
            fn(make_context(3))


def test_bijection_violation_carries_k():
    ctx = make_context(8)
    with pytest.raises(PropertyViolation) as exc:
        _check_bijection(ctx, ((6, 11), (7, 11)), (6, 7), (11,), "test map")
    assert exc.value.k == 11
    with pytest.raises(PropertyViolation) as exc:
        _check_bijection(ctx, ((6, 12),), (6,), (11,), "test map")
    assert exc.value.k == 6


def test_b_mid_members_examples():
    assert b_mid_members(make_context(8)) == (11,)
    assert b_mid_members(make_context(5)) == ()


def test_b_mid_members_and_cardinality(small_ns):
    for n in small_ns:
        ctx = make_context(n)
        part = classify_sets(ctx)
        members = b_mid_members(ctx, part)
        assert len(members) == ctx.M0
        rep = b_mid_cardinality_report(ctx, part)
        assert rep["matches_M0"]
        if n >= 8:
            # printed floor((n^2-4n+5)/2) does not match the constructed set
            assert not rep["matches_printed_half"]


def test_cardinality_relations(small_ns):
    for n in small_ns:
        s = classify_sets(make_context(n)).sizes()
        assert s["A_ge"] == s["B_lt"]
        assert s["A_mid"] == s["B_mid"] + 2
        assert s["A_lt"] == s["B_ge"] + 1


def test_structure_checks(small_ns):
    for n in small_ns:
        ctx = make_context(n)
        checks = structure_checks(ctx, jump_profile(ctx), classify_sets(ctx))
        assert all(checks.values()), (n, checks)


def test_against_oracle(small_ns):
    for n in [2, 3] + small_ns[:50]:
        ctx = make_context(n)
        ref = ref_prime(n)
        prof = jump_profile(ctx)
        part = classify_sets(ctx)
        assert prof.gamma == ref["gamma"]
        assert prof.jumps == ref["jumps"]
        for key in ("J_n", "J_total", "J_low", "J_high"):
            assert getattr(prof, key) == ref[key]
        for key in ("A_lt", "A_mid", "A_ge", "B_lt", "B_mid", "B_ge"):
            assert getattr(part, key) == ref[key]
