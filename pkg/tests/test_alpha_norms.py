from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_bt.alpha_norms import (
    ORTHO_EISENSTEIN_LOG_NORM,
    alpha_constant_log,
    carrier_simplex,
    log_alpha_norm_point,
    log_alpha_norm_vertex,
    strictness_threshold,
)
from drinfeld_bt.core_params import ValidationError, make_context
from drinfeld_bt.weyl_complex import standard_basis_vertex, window_vertices


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_alpha2_examples(q):
    ctx = make_context(q, 3)
    assert log_alpha_norm_vertex(ctx, (0, 0, 0), 2) == 0
    assert log_alpha_norm_vertex(ctx, (1, 1, 0), 2) == -(q * q - q)
    for n in range(6):
        assert log_alpha_norm_vertex(ctx, (n, 0, 0), 2) == 0


@pytest.mark.parametrize("q", [2, 3])
def test_interpolation_examples(q):
    ctx = make_context(q, 3)
    h = Fraction(1, 2)
    assert log_alpha_norm_point(ctx, (h, h, 0), 2) == Fraction(-(q * q - q), 2)
    assert log_alpha_norm_point(ctx, (1, 1, 0), 2) == -(q * q - q)
    assert log_alpha_norm_point(ctx, (Fraction(3, 2), 1, 0), 2) == -(q * q - q)


def test_constant_examples():
    ctx = make_context(2, 3)
    assert alpha_constant_log(ctx, 1) == 0
    assert alpha_constant_log(ctx, 2) == -2
    assert alpha_constant_log(ctx, 3) == -10
    assert log_alpha_norm_vertex(ctx, (3, 3, 0), 3) == -10
    assert ORTHO_EISENSTEIN_LOG_NORM == 0
    with pytest.raises(ValidationError):
        alpha_constant_log(ctx, 0)


@pytest.mark.parametrize("q,r", [(2, 3), (3, 3), (2, 4)])
def test_deep_chamber_constant(q, r):
    ctx = make_context(q, r)
    for n in window_vertices(r, 7):
        for k in range(1, 6):
            if n[r - 2] >= k:
                assert log_alpha_norm_vertex(ctx, n, k) == alpha_constant_log(ctx, k)


def test_carrier_simplex_weights():
    x = (Fraction(7, 3), Fraction(4, 3), Fraction(0))
    parts = carrier_simplex(x)
    assert sum(w for _, w in parts) == 1
    assert all(w > 0 for _, w in parts)
    recon = tuple(sum(w * v[i] for v, w in parts) for i in range(3))
    assert recon == x


rational_weyl = st.lists(st.fractions(0, 5, max_denominator=7), min_size=2, max_size=2).map(
    lambda xs: tuple(sorted(xs, reverse=True)) + (Fraction(0),)
)


@settings(max_examples=150, deadline=None)
@given(rational_weyl, st.integers(1, 6))
def test_interpolation_is_affine_on_carrier(x, k):
    ctx = make_context(2, 3)
    parts = carrier_simplex(x)
    # carrier vertices stay in the Weyl chamber and reconstruct x
    for v, _ in parts:
        assert all(a >= b for a, b in zip(v, v[1:]))
    assert tuple(sum(w * v[i] for v, w in parts) for i in range(3)) == x
    val = log_alpha_norm_point(ctx, x, k)
    lo = min(log_alpha_norm_vertex(ctx, v, k) for v, _ in parts)
    hi = max(log_alpha_norm_vertex(ctx, v, k) for v, _ in parts)
    assert lo <= val <= hi


def test_vertex_and_point_agree():
    ctx = make_context(3, 3)
    for n in window_vertices(3, 5):
        for k in range(1, 6):
            assert log_alpha_norm_point(ctx, n, k) == log_alpha_norm_vertex(ctx, n, k)


windows4 = st.lists(st.integers(0, 6), min_size=3, max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True)) + (0,))


@settings(max_examples=200, deadline=None)
@given(windows4, st.integers(1, 10), st.sampled_from([2, 3]))
def test_monotonicity_in_k(n, k, q):
    ctx = make_context(q, 4)
    a, b = log_alpha_norm_vertex(ctx, n, k), log_alpha_norm_vertex(ctx, n, k + 1)
    assert b <= a
    if k + 1 > strictness_threshold(n):
        assert b < a


@settings(max_examples=200, deadline=None)
@given(windows4, st.integers(1, 10), st.integers(1, 3))
def test_monotonicity_in_n(n, k, i):
    ctx = make_context(2, 4)
    m = tuple(a + b for a, b in zip(n, standard_basis_vertex(4, i)))
    assert log_alpha_norm_vertex(ctx, m, k) <= log_alpha_norm_vertex(ctx, n, k)


def test_strictness_threshold_values():
    assert strictness_threshold((0, 0, 0)) == 3
    assert strictness_threshold((1, 1, 0)) == 1
    assert strictness_threshold((2, 0, 0)) == 2
