"""Vector arithmetic, weight generators, and shift application."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftlab import (
    BalancedBlocks,
    Constant,
    Explicit,
    FinSeqVector,
    PowerLawBeta,
    ShiftOperator,
    apply_shift,
    beta,
    iterate_shift,
    log_abs_beta,
    lp_norm,
    max_coord_diff,
    random_vectors,
    scale,
    subtract,
    tail_power_sum,
    tail_power_sums,
    vector_from_dict,
    vector_to_dict,
    weight_at,
    weight_bound,
    weights_from_dict,
    weights_to_dict,
)

# ---------------------------------------------------------------------------
# strategies

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
coord = st.builds(complex, finite, finite)
coords = st.lists(coord, min_size=0, max_size=32).map(tuple)
exponent = st.sampled_from([1.0, 1.5, 2.0, 3.0, 4.0])
vectors = st.builds(FinSeqVector, exponent, coords)

nonzero_scalar = st.builds(complex, finite, finite).filter(lambda z: abs(z) > 1e-3)


# ---------------------------------------------------------------------------
# vectors


def test_vector_validation():
    with pytest.raises(ValueError):
        FinSeqVector(0.5, (1,))
    with pytest.raises(ValueError):
        FinSeqVector(float("inf"), (1,))
    x = FinSeqVector(2, (1, 1j))
    assert x.p == 2.0
    assert x.coords == (1 + 0j, 1j)


def test_coord_is_one_based_and_zero_padded():
    x = FinSeqVector(2.0, (5, 7))
    assert x.coord(1) == 5
    assert x.coord(2) == 7
    assert x.coord(3) == 0
    assert x.coord(100) == 0
    with pytest.raises(ValueError):
        x.coord(0)


def test_lp_norm_hand_values():
    # (3, 4) in l^2 has norm 5; in l^1 norm 7
    assert lp_norm(FinSeqVector(2.0, (3, 4))) == 5.0
    assert lp_norm(FinSeqVector(1.0, (3, 4))) == 7.0
    assert lp_norm(FinSeqVector(2.0, ())) == 0.0


@given(vectors)
def test_lp_norm_matches_naive_sum(x):
    naive = sum(abs(c) ** x.p for c in x.coords) ** (1 / x.p) if x.coords else 0.0
    assert lp_norm(x) == pytest.approx(naive, rel=1e-12, abs=1e-300)


@given(vectors)
def test_tail_sums_telescope(x):
    # t_k - t_{k+1} reproduces |x_k|^p up to rounding of the tails themselves
    tails = tail_power_sums(x)
    assert tails[-1] == 0.0
    assert len(tails) == len(x.coords) + 1
    for k, c in enumerate(x.coords):
        d = abs(c) ** x.p
        assert abs((tails[k] - tails[k + 1]) - d) <= 1e-12 * (tails[k] + d)


@given(vectors)
def test_tail_power_sum_agrees_with_batch(x):
    tails = tail_power_sums(x)
    for k in range(1, len(x.coords) + 2):
        assert tail_power_sum(x, k) == tails[k - 1]
    assert tail_power_sum(x, len(x.coords) + 50) == 0.0


def test_tail_power_sum_index_validation():
    with pytest.raises(ValueError):
        tail_power_sum(FinSeqVector(2.0, (1,)), 0)


@given(vectors, nonzero_scalar)
def test_scale_and_subtract(x, c):
    y = scale(x, c)
    assert max_coord_diff(subtract(y, x), scale(x, c - 1)) < 1e-9
    assert max_coord_diff(subtract(x, x), FinSeqVector(x.p, ())) == 0.0


def test_subtract_pads_support():
    x = FinSeqVector(2.0, (1, 2, 3))
    y = FinSeqVector(2.0, (1,))
    assert subtract(x, y).coords == (0j, 2 + 0j, 3 + 0j)
    with pytest.raises(ValueError):
        subtract(x, FinSeqVector(1.0, (1,)))


# ---------------------------------------------------------------------------
# weight generators


def _blocks_oracle(a, b, a_first, n):
    """Brute-force block layout: pair k is k firsts then k seconds."""
    first, second = (a, b) if a_first else (b, a)
    seq = []
    k = 1
    while len(seq) < n:
        seq.extend([first] * k + [second] * k)
        k += 1
    return seq[:n]


def test_weight_validation():
    with pytest.raises(ValueError):
        Constant(0)
    with pytest.raises(ValueError):
        Explicit(())
    with pytest.raises(ValueError):
        Explicit((1, 0, 1))
    with pytest.raises(ValueError):
        BalancedBlocks(0, 2)
    with pytest.raises(ValueError):
        PowerLawBeta(float("nan"))


def test_weight_at_families():
    assert weight_at(Constant(3 - 1j), 17) == 3 - 1j
    w = Explicit((1, 2, 3))
    assert [weight_at(w, i) for i in (1, 2, 3)] == [1, 2, 3]
    with pytest.raises(IndexError):
        weight_at(w, 4)
    with pytest.raises(ValueError):
        weight_at(w, 0)
    assert weight_at(PowerLawBeta(0.5), 1) == 1
    assert weight_at(PowerLawBeta(0.5), 2) == pytest.approx(math.sqrt(2), rel=1e-15)


@pytest.mark.parametrize("a_first", [True, False])
def test_blocks_weights_match_brute_force(a_first):
    w = BalancedBlocks(2.0, 0.5, a_first)
    expect = _blocks_oracle(2.0, 0.5, a_first, 300)
    got = [weight_at(w, n) for n in range(1, 301)]
    assert got == expect


def test_blocks_first_second_roles():
    w = BalancedBlocks(2.0, 0.5, a_first=False)
    assert w.first == 0.5
    assert w.second == 2.0


def test_weight_bound():
    assert weight_bound(Constant(-4)) == 4.0
    assert weight_bound(Explicit((1, 3j, -2))) == 3.0
    assert weight_bound(BalancedBlocks(0.5, 2)) == 2.0
    assert weight_bound(PowerLawBeta(0.5)) == pytest.approx(math.sqrt(2))
    assert weight_bound(PowerLawBeta(-3.0)) == 1.0


# ---------------------------------------------------------------------------
# beta products


@pytest.mark.parametrize(
    "w",
    [
        Constant(2.0),
        Constant(0.5 + 0.5j),
        Explicit(tuple(range(1, 40))),
        BalancedBlocks(2.0, 0.5),
        BalancedBlocks(0.5, 2.0),
        BalancedBlocks(3.0, 0.25, a_first=False),
        PowerLawBeta(0.5),
        PowerLawBeta(-1.25),
    ],
)
def test_beta_recursion(w):
    # beta(n) = beta(n-1) * w_n, the defining property of the product
    for n in range(1, 39):
        lhs = beta(w, n)
        rhs = beta(w, n - 1) * weight_at(w, n)
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_beta_base_case():
    assert beta(Constant(7), 0) == 1
    with pytest.raises(ValueError):
        beta(Constant(7), -1)


def test_beta_explicit_matches_product_oracle():
    ws = (2, 0.5j, -3, 1 + 1j, 0.25)
    w = Explicit(ws)
    acc = 1 + 0j
    for n, v in enumerate(ws, start=1):
        acc *= v
        assert beta(w, n) == pytest.approx(acc, rel=1e-14)
    with pytest.raises(IndexError):
        beta(w, 6)


def test_powerlaw_beta_is_sqrt_n():
    w = PowerLawBeta(0.5)
    for n in list(range(1, 100)) + [512, 1000, 4096, 9999, 10_000]:
        assert abs(beta(w, n) - math.sqrt(n)) <= 1e-12 * math.sqrt(n)


def test_blocks_beta_returns_to_one_at_pair_boundaries():
    w = BalancedBlocks(2.0, 0.5)
    for k in range(1, 30):
        assert beta(w, k * (k + 1)) == pytest.approx(1.0, rel=1e-12)


def test_log_abs_beta_matches_beta_where_small():
    for w in (Constant(1.5), BalancedBlocks(2.0, 0.5), PowerLawBeta(0.75), Explicit((2, 3, 0.5, 1j))):
        top = 4 if isinstance(w, Explicit) else 60
        for n in range(0, top + 1):
            assert log_abs_beta(w, n) == pytest.approx(math.log(abs(beta(w, n))), abs=1e-11)


def test_log_abs_beta_boundary_cancellation_is_exact():
    # |first * second| == 1 makes the pair-boundary value exactly 0.0,
    # far beyond where the raw product would overflow
    for w in (BalancedBlocks(2.0, 0.5), BalancedBlocks(0.5, 2.0)):
        for k in (1, 7, 100, 999, 1000, 5000):
            assert log_abs_beta(w, k * (k + 1)) == 0.0


def test_log_abs_beta_safe_far_beyond_float_range():
    # 2^(10^7) overflows any float, the log form must not care
    assert log_abs_beta(Constant(2.0), 10_000_000) == pytest.approx(1e7 * math.log(2), rel=1e-15)


# ---------------------------------------------------------------------------
# shift application


def test_apply_shift_drops_first_coordinate():
    t = ShiftOperator(Explicit((10, 20, 30)), 2.0)
    x = FinSeqVector(2.0, (1, 2, 3, 4))
    assert apply_shift(t, x).coords == (20 + 0j, 60 + 0j, 120 + 0j)


def test_apply_shift_exponent_mismatch():
    t = ShiftOperator(Constant(2), 2.0)
    with pytest.raises(ValueError):
        apply_shift(t, FinSeqVector(1.0, (1,)))


def test_shift_annihilates_basis_vector():
    t = ShiftOperator(Constant(0.5), 2.0)
    e1 = FinSeqVector(2.0, (1,))
    assert apply_shift(t, e1).coords == ()
    assert lp_norm(apply_shift(t, e1)) == 0.0


@given(vectors, st.integers(min_value=0, max_value=6))
@settings(max_examples=50)
def test_iterate_shift_matches_repeated_application(x, n):
    t = ShiftOperator(Constant(2.0 + 1.0j), x.p)
    y = x
    for _ in range(n):
        y = apply_shift(t, y)
    assert iterate_shift(t, x, n) == y


def test_iterate_shift_rejects_negative():
    t = ShiftOperator(Constant(1), 2.0)
    with pytest.raises(ValueError):
        iterate_shift(t, FinSeqVector(2.0, (1,)), -1)


def test_constant_shift_scales_norm_on_l2():
    # ||lam B x||_2 = |lam| * ||tail of x||_2 for constant weights
    t = ShiftOperator(Constant(3.0), 2.0)
    x = FinSeqVector(2.0, (7, 1, 2, 2))
    assert lp_norm(apply_shift(t, x)) == pytest.approx(3.0 * lp_norm(FinSeqVector(2.0, (1, 2, 2))), rel=1e-15)


# ---------------------------------------------------------------------------
# sampling


def test_random_vectors_deterministic_and_in_box():
    a = random_vectors(20, 2.0, seed=42)
    b = random_vectors(20, 2.0, seed=42)
    assert a == b
    c = random_vectors(20, 2.0, seed=43)
    assert a != c
    for x in a:
        assert 1 <= x.support_length <= 64
        assert x.p == 2.0
        for z in x.coords:
            assert -10 <= z.real <= 10 and -10 <= z.imag <= 10


def test_random_vectors_support_range():
    for x in random_vectors(10, 1.0, seed=0, support_range=(5, 5)):
        assert x.support_length == 5
    with pytest.raises(ValueError):
        random_vectors(1, 2.0, seed=0, support_range=(0, 3))


# ---------------------------------------------------------------------------
# serialization


@given(vectors)
@settings(max_examples=50)
def test_vector_json_roundtrip_exact(x):
    d = vector_to_dict(x)
    assert json.loads(json.dumps(d)) == d
    assert vector_from_dict(d) == x


def test_vector_dict_shape():
    d = vector_to_dict(FinSeqVector(2.0, (1 + 2j,)))
    assert d == {"p": 2.0, "coords": [[1.0, 2.0]]}


@pytest.mark.parametrize(
    "w",
    [
        Constant(2 - 1j),
        Explicit((1, 0.5j, -3)),
        BalancedBlocks(2, 0.5, a_first=False),
        PowerLawBeta(0.5),
    ],
)
def test_weights_json_roundtrip(w):
    d = weights_to_dict(w)
    assert json.loads(json.dumps(d)) == d
    assert weights_from_dict(d) == w
    assert d["kind"] in ("constant", "explicit", "blocks", "powerlaw")


def test_weights_from_dict_rejects_unknown_kind():
    with pytest.raises(ValueError):
        weights_from_dict({"kind": "mystery"})
