import pytest

from oracle import ref_prime
from qrlab.arith_core import make_context, radical_floors
from qrlab.residue_sums import (
    sum_floor_shifted,
    sum_floor_squares,
    sum_qr,
    sum_reports,
    sum_shifted,
)


@pytest.mark.parametrize("n,K,expected", [(3, 10, 44), (2, 6, 14), (5, 18, 152)])
def test_sum_qr_examples(n, K, expected):
    assert sum_qr(make_context(n), K) == expected


def test_sum_qr_range():
    ctx = make_context(5)
    with pytest.raises(ValueError):
        sum_qr(ctx, 0)
    with pytest.raises(ValueError):
        sum_qr(ctx, 19)


@pytest.mark.parametrize("n,K,expected", [
    (1, "p-1", 5),  # Table 2
    (3, "p-1", 55),
    (2, "2n", 14),  # Table 3
    (1, "2n", 5),
    (3, "2n", 32),
    (2, "p-1", 21),
])
def test_sum_shifted_small_tables(n, K, expected):
    ctx = make_context(n)
    end = ctx.p - 1 if K == "p-1" else 2 * n
    assert sum_shifted(ctx, end, include_zero=True) == expected


def test_sum_shifted_endpoint_terms():
    for n in (1, 2, 3, 5, 8):
        ctx = make_context(n)
        p = ctx.p
        zero_term = sum_shifted(ctx, 1, include_zero=True) - sum_shifted(ctx, 1)
        assert zero_term == 2 - 3 * n + p
        assert sum_shifted(ctx, p) - sum_shifted(ctx, p - 1) == 2 - 3 * n + p
    with pytest.raises(ValueError):
        sum_shifted(make_context(5), 20)


def test_sum_floor_shifted_examples():
    assert sum_floor_shifted(make_context(5), 5) == -4
    assert sum_floor_shifted(make_context(5), 1) == -1
    ctx = make_context(8)
    f = radical_floors(ctx)
    assert sum_floor_shifted(ctx, 8) == -4
    assert sum_floor_shifted(ctx, 8) == (ctx.M - 1) * 8 - sum(f.floor_Q)


def test_sum_floor_squares_examples():
    assert sum_floor_squares(make_context(5), 4) == 0
    assert sum_floor_squares(make_context(5), 5) == 1
    ctx = make_context(8)
    assert sum_floor_squares(ctx, 8) == 4
    assert sum_floor_squares(ctx, 8) == ctx.M * 8 - sum(radical_floors(ctx).floor_R)
    with pytest.raises(ValueError):
        sum_floor_squares(ctx, -1)


def test_sum_reports_match_direct_and_oracle(small_ns):
    for n in [1, 2, 3] + small_ns[:40]:
        ctx = make_context(n)
        ref = ref_prime(n)
        for end, rep in sum_reports(ctx).items():
            assert rep.qr_sum == sum_qr(ctx, end) == ref[end]["qr_sum"]
            assert rep.shifted_sum == sum_shifted(ctx, end) == ref[end]["shifted_sum"]
            assert rep.floor_shifted_sum == sum_floor_shifted(ctx, end) == ref[end]["floor_shifted_sum"]
            assert rep.floor_square_sum == sum_floor_squares(ctx, end) == ref[end]["floor_square_sum"]


def test_zeller_relation(small_ns):
    for n in small_ns:
        ctx = make_context(n)
        f = radical_floors(ctx)
        assert sum(f.floor_R) + sum_reports(ctx)[n].floor_square_sum == ctx.M * n


def test_decomposition_and_symmetry(small_ns):
    for n in small_ns[:60]:
        ctx = make_context(n)
        p = ctx.p
        reps = sum_reports(ctx)
        for end, rep in reps.items():
            raw = sum(k * k - k + 2 - 3 * n for k in range(1, end + 1))
            assert raw == p * rep.floor_shifted_sum + rep.shifted_sum
        assert reps[p - 1].qr_sum == 2 * reps[2 * n].qr_sum - 2 * n
        assert all((k * k) % p == ((p - k) ** 2) % p for k in range(1, p))
        # C(p, 2) - sum r(k^2) is divisible by p
        assert (p * (p - 1) // 2 - reps[p - 1].qr_sum) % p == 0
