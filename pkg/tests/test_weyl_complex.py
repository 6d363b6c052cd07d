from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_bt.core_params import POS_INF, make_context
from drinfeld_bt.weyl_complex import (
    NonIntegralPoint,
    NotInWeylChamber,
    characteristic_sequence,
    complex_checks,
    cycle_criterion,
    cycle_structure,
    integral_point,
    is_k_inseparable,
    recursion_image,
    standard_basis_vertex,
    standard_vertex_membership,
    window_vertices,
    wk_membership,
    wk_window,
)

CTX3 = make_context(2, 3)


def sort_oracle(x, count, smax=12):
    """Independent enumeration: all T^s e_i, s <= smax, sorted by (s + x_i, -i)."""
    syms = [(s + Fraction(x[i - 1]), -i, s, i) for s in range(smax + 1) for i in range(1, len(x) + 1)]
    syms.sort()
    return [(s, i, ln) for ln, _, s, i in syms[:count]]


def as_tuples(seq):
    return [(e.symbol.s, e.symbol.i, e.lognorm) for e in seq]


def test_charseq_examples():
    seq = characteristic_sequence(CTX3, (0, 0, 0), 6)
    assert as_tuples(seq) == [(0, 3, 0), (0, 2, 0), (0, 1, 0), (1, 3, 1), (1, 2, 1), (1, 1, 1)]
    seq = characteristic_sequence(CTX3, (1, 1, 0), 5)
    assert as_tuples(seq) == [(0, 3, 0), (1, 3, 1), (0, 2, 1), (0, 1, 1), (2, 3, 2)]
    seq = characteristic_sequence(CTX3, (1, 0, 0), 5)
    assert as_tuples(seq) == [(0, 3, 0), (0, 2, 0), (1, 3, 1), (1, 2, 1), (0, 1, 1)]


weyl_ints = st.lists(st.integers(0, 5), min_size=2, max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True)) + (0,))


@settings(max_examples=150, deadline=None)
@given(weyl_ints, st.integers(1, 15))
def test_charseq_matches_sort_oracle(n, count):
    ctx = make_context(2, len(n))
    seq = characteristic_sequence(ctx, n, count)
    assert as_tuples(seq) == sort_oracle(n, count, smax=count + 6)
    for a, b in zip(seq, seq[1:]):
        assert (a.lognorm, -a.symbol.i) <= (b.lognorm, -b.symbol.i)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(0, 4, max_denominator=6), min_size=2, max_size=2), st.integers(1, 12))
def test_charseq_rational_points(xs, count):
    x = tuple(sorted(xs, reverse=True)) + (Fraction(0),)
    seq = characteristic_sequence(CTX3, x, count)
    assert as_tuples(seq) == sort_oracle(x, count, smax=count + 6)


def test_cycle_structure_examples():
    cs = cycle_structure(CTX3, (0, 0, 0))
    assert cs.h_values == (0, 0) and cs.cycles == ((3, POS_INF),)
    cs = cycle_structure(CTX3, (1, 1, 0))
    assert cs.h_values == (1, 1) and cs.cycles == ((1, 1), (3, POS_INF))
    cs = cycle_structure(CTX3, (2, 1, 0))
    assert cs.h_values == (1, 3) and cs.cycles == ((1, 1), (2, 1), (3, POS_INF))


@pytest.mark.parametrize("r", [3, 4])
def test_cycle_criterion_equivalence(r):
    ctx = make_context(2, r)
    for n in window_vertices(r, 5):
        for k in range(1, 16):
            assert cycle_criterion(ctx, n, k) == is_k_inseparable(ctx, n, k), (n, k)


def test_inseparability_examples():
    assert is_k_inseparable(CTX3, (0, 0, 0), 2)
    assert not is_k_inseparable(CTX3, (0, 0, 0), 3)
    assert is_k_inseparable(CTX3, (1, 1, 0), 2)
    # W(1) is the wall x_2 = x_3, so (1,1,0) is outside and (2,0,0) inside
    assert not wk_membership(CTX3, (1, 1, 0), 1)
    assert wk_membership(CTX3, (2, 0, 0), 1)
    assert not wk_membership(CTX3, (2, 1, 0), 1)


def test_wk_window_examples():
    assert wk_window(CTX3, 2, 3) == {(0, 0, 0), (1, 1, 0), (2, 1, 0), (3, 1, 0)}
    assert wk_window(CTX3, 3, 2) == {(1, 0, 0), (2, 0, 0), (1, 1, 0), (2, 2, 0)}
    assert wk_window(make_context(2, 2), 1, 4) == {(0, 0)}


def test_standard_vertex_examples():
    assert not standard_vertex_membership(CTX3, 1, 2)
    assert standard_vertex_membership(CTX3, 2, 2)
    assert not standard_vertex_membership(CTX3, 0, 6)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_standard_vertices_all(r):
    ctx = make_context(3, r)
    for i in range(r):
        for k in range(1, 3 * r + 1):
            assert standard_vertex_membership(ctx, i, k) == wk_membership(ctx, standard_basis_vertex(r, i), k)


@pytest.mark.parametrize("k", range(1, 6))
@pytest.mark.parametrize("bound", [4, 6])
def test_recursion(k, bound):
    assert wk_window(CTX3, k + 1, bound) == recursion_image(CTX3, k, bound)


def test_recursion_rank4():
    ctx = make_context(2, 4)
    for k in range(1, 5):
        assert wk_window(ctx, k + 1, 4) == recursion_image(ctx, k, 4)


def test_weyl_permutations_preserve_inseparability():
    # A(k) is stable under the Weyl group; recursion relies on this
    for n in window_vertices(3, 4):
        for perm in set(permutations(n)):
            for k in range(1, 7):
                assert is_k_inseparable(CTX3, perm, k) == is_k_inseparable(CTX3, n, k)


@pytest.mark.parametrize("k", range(1, 6))
def test_complex_checks_rank3(k):
    rep = complex_checks(CTX3, k, 8)
    assert rep["is_full"] and rep["dim_everywhere"] and rep["connected"]


def test_complex_checks_small_window():
    rep = complex_checks(CTX3, 1, 4)
    assert rep["is_full"] and rep["dim_everywhere"] and rep["connected"]


def test_rank2_is_discrete():
    # in rank 2 the complexes are sets of isolated vertices; connectivity is not claimed
    ctx = make_context(2, 2)
    for k in range(1, 6):
        rep = complex_checks(ctx, k, 8)
        assert rep["is_full"] and rep["dim_everywhere"]
    members = wk_window(ctx, 3, 12)
    assert len(members) > 1
    assert all(abs(a[0] - b[0]) != 1 for a in members for b in members)


def test_point_validation():
    with pytest.raises(NotInWeylChamber):
        integral_point(CTX3, (0, 1, 0))
    with pytest.raises(NonIntegralPoint):
        integral_point(CTX3, (Fraction(1, 2), 0, 0))
    assert integral_point(CTX3, (3, 2, 1)) == (2, 1, 0)
