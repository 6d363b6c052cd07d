"""Weyl chamber combinatorics: characteristic sequences and the complexes W(k).

Points are tuples of ``Fraction`` of length r, normalized so the last
coordinate is 0.  The Weyl chamber W is x_1 >= ... >= x_r = 0.  The norm nu_x
on V = K_inf^r has log nu_x(T^s e_i) = s + x_i, and the standard basis is
orthogonal for every x in the apartment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

import networkx as nx

from .core_params import POS_INF, Context, ValidationError, ceil_frac, to_fraction

Point = tuple  # tuple[Fraction, ...]


class NonIntegralPoint(ValidationError):
    pass


class NotInWeylChamber(ValidationError):
    pass


@dataclass(frozen=True)
class BasisSymbol:
    s: int
    i: int


@dataclass(frozen=True)
class CharSeqEntry:
    symbol: BasisSymbol
    lognorm: Fraction
    cycle_index: int


@dataclass(frozen=True)
class CycleStructure:
    h_values: tuple[int, ...]
    cycles: tuple[tuple[int, float], ...]  # (length, count); count POS_INF for the tail


# --------------------------------------------------------------------------
# points


def apartment_point(ctx: Context, coords: Iterable) -> Point:
    xs = [to_fraction(c) for c in coords]
    if len(xs) != ctx.r:
        raise ValidationError(f"expected {ctx.r} coordinates, got {len(xs)}")
    last = xs[-1]
    return tuple(x - last for x in xs)


def weyl_point(ctx: Context, coords: Iterable) -> Point:
    x = apartment_point(ctx, coords)
    if any(a < b for a, b in zip(x, x[1:])):
        raise NotInWeylChamber(f"{format_point(x)} is not in the Weyl chamber")
    return x


def integral_point(ctx: Context, coords: Iterable) -> tuple[int, ...]:
    x = weyl_point(ctx, coords)
    if any(c.denominator != 1 for c in x):
        raise NonIntegralPoint(f"{format_point(x)} is not integral")
    return tuple(int(c) for c in x)


def normalize(x: Sequence) -> tuple:
    last = x[-1]
    return tuple(c - last for c in x)


def in_weyl(x: Sequence) -> bool:
    return all(a >= b for a, b in zip(x, x[1:]))


def format_point(x: Sequence) -> str:
    return "(" + ",".join(str(c) for c in x) + ")"


def standard_basis_vertex(r: int, i: int) -> tuple[int, ...]:
    """n_i = (1,...,1,0,...,0) with i ones."""
    return tuple([1] * i + [0] * (r - i))


# --------------------------------------------------------------------------
# characteristic sequences


def _sequence(x: tuple, count: int) -> list[CharSeqEntry]:
    r = len(x)
    span = max(x) - min(x)
    smax = count + ceil_frac(Fraction(span))
    syms = sorted(
        ((s + x[i - 1], -i, s) for s in range(smax + 1) for i in range(1, r + 1)),
    )[:count]
    out = []
    cycle = 0
    prev = None
    for ln, negi, s in syms:
        if prev is None or ln > prev:
            cycle += 1
        prev = ln
        out.append(CharSeqEntry(BasisSymbol(s, -negi), Fraction(ln), cycle))
    return out


def characteristic_sequence(ctx: Context, x: Sequence, count: int) -> list[CharSeqEntry]:
    """First ``count`` terms T^s e_i sorted by (s + x_i, -i)."""
    if count < 1:
        raise ValidationError("count must be positive")
    return _sequence(apartment_point(ctx, x), count)


def cycle_structure(ctx: Context, n: Sequence) -> CycleStructure:
    n = integral_point(ctx, n)
    r = ctx.r
    h = []
    prev = 0
    cycles = []
    for i in range(1, r):
        run = n[r - i - 1] - n[r - i]
        prev = prev + i * run
        h.append(prev)
        if run:
            cycles.append((i, run))
    cycles.append((r, POS_INF))
    return CycleStructure(tuple(h), tuple(cycles))


def cycle_criterion(ctx: Context, n: Sequence, k: int) -> bool:
    """k-inseparability read off the cycle decomposition.

    n is k-inseparable iff lambda_k and lambda_{k+1} lie in one cycle, i.e.
    k + 1 does not open a new cycle.
    """
    cs = cycle_structure(ctx, n)
    start = 1
    for length, cnt in cs.cycles:
        if cnt == POS_INF:
            return (k + 1 - start) % length != 0
        for _ in range(cnt):
            start += length
            if start == k + 1:
                return False
            if start > k + 1:
                return True
    raise AssertionError("unreachable")  # pragma: no cover


@lru_cache(maxsize=1 << 18)
def _insep(x: tuple, k: int) -> bool:
    seq = _sequence(x, k + 1)
    return seq[k - 1].lognorm == seq[k].lognorm


def is_k_inseparable(ctx: Context, x: Sequence, k: int) -> bool:
    if k < 1:
        raise ValidationError("k must be positive")
    return _insep(apartment_point(ctx, x), k)


def wk_membership(ctx: Context, x: Sequence, k: int) -> bool:
    """x in A(k); on the Weyl chamber this is W(k)."""
    return is_k_inseparable(ctx, x, k)


def standard_vertex_membership(ctx: Context, i: int, k: int) -> bool:
    if not 0 <= i < ctx.r:
        raise ValidationError(f"index i={i} outside 0..{ctx.r - 1}")
    return k % ctx.r != (ctx.r - i) % ctx.r


# --------------------------------------------------------------------------
# windows


def window_vertices(r: int, bound: int) -> list[tuple[int, ...]]:
    """Integral points of W with n_1 <= bound, sorted."""
    out = []

    def rec(prefix: list[int], hi: int):
        if len(prefix) == r - 1:
            out.append(tuple(prefix) + (0,))
            return
        for v in range(hi + 1):
            rec(prefix + [v], v)

    rec([], bound)
    return sorted(out)


def _check_bound(bound: int) -> None:
    if bound < 1:
        raise ValidationError("bound must be positive")


def wk_window(ctx: Context, k: int, bound: int) -> set[tuple[int, ...]]:
    _check_bound(bound)
    return {n for n in window_vertices(ctx.r, bound) if _insep(tuple(map(Fraction, n)), k)}


def recursion_image(ctx: Context, k: int, bound: int) -> set[tuple[int, ...]]:
    """Window part of (W.W(k) + n_{r-1}) intersected with W."""
    r = ctx.r
    shift = standard_basis_vertex(r, r - 1)
    out = set()
    for m in wk_window(ctx, k, bound):
        for perm in set(permutations(m)):
            x = normalize(tuple(a + b for a, b in zip(normalize(perm), shift)))
            if in_weyl(x) and x[0] <= bound:
                out.add(x)
    return out


# --------------------------------------------------------------------------
# simplices of the apartment


def _chains(r: int) -> list[list[frozenset]]:
    """Chains S_1 < ... < S_m of proper nonempty subsets of {0..r-1}."""
    subsets = [frozenset(c) for j in range(1, r) for c in combinations(range(r), j)]
    out: list[list[frozenset]] = []

    def rec(chain):
        out.append(chain)
        last = chain[-1]
        for s in subsets:
            if last < s:
                rec(chain + [s])

    for s in subsets:
        rec([s])
    return out


@lru_cache(maxsize=None)
def _chains_cached(r: int):
    return _chains(r)


def simplices_at(v: Sequence[int]) -> list[frozenset]:
    """All positive-dimensional simplices of the apartment containing v."""
    r = len(v)
    out = []
    for chain in _chains_cached(r):
        verts = [tuple(v)]
        for s in chain:
            verts.append(normalize(tuple(c + (1 if i in s else 0) for i, c in enumerate(v))))
        out.append(frozenset(verts))
    return out


def adjacent(u: Sequence[int], v: Sequence[int]) -> bool:
    d = [a - b for a, b in zip(v, u)]
    return max(d) - min(d) == 1


def weyl_simplices(r: int, bound: int) -> set[frozenset]:
    """Positive-dimensional simplices of W with every vertex in the window."""
    out = set()
    for v in window_vertices(r, bound):
        for s in simplices_at(v):
            if all(in_weyl(w) and w[0] <= bound for w in s):
                out.add(s)
    return out


def window_edges(vertices: set) -> set[frozenset]:
    """Edges of W between members of ``vertices`` (the full subcomplex)."""
    out = set()
    for u in vertices:
        r = len(u)
        for eps in product((0, 1), repeat=r):
            if 0 < sum(eps) < r:
                w = normalize(tuple(a + b for a, b in zip(u, eps)))
                if w in vertices:
                    out.add(frozenset((u, w)))
    return out


def barycenter(simplex: Iterable[Sequence[int]]) -> tuple:
    verts = list(simplex)
    m = len(verts)
    return tuple(Fraction(sum(c), m) for c in zip(*verts))


def complex_checks(ctx: Context, k: int, bound: int) -> dict:
    """Theorem-2.14 style checks on a window.

    is_full: a rational point in the open simplex sigma lies in W(k) iff all
    vertices of sigma do (tested at barycenters of all window simplices).
    dim_everywhere: each core vertex of W(k) lies in an (r-2)-simplex of the
    apartment complex A(k) and in no (r-1)-simplex of it.
    connected: core vertices of W(k) lie in one component of the window graph.
    Core vertices are those with n_1 <= bound - r.
    """
    _check_bound(bound)
    r = ctx.r
    members = wk_window(ctx, k, bound)

    def mem(x) -> bool:
        return _insep(tuple(map(Fraction, x)), k)

    full_violations = []
    for s in sorted(weyl_simplices(r, bound), key=sorted):
        if mem(barycenter(s)) != all(v in members for v in s):
            full_violations.append(sorted(s))

    core = sorted(v for v in members if v[0] <= bound - r)
    dim_violations = []
    for v in core:
        top = [s for s in simplices_at(v) if all(mem(w) for w in s)]
        dims = {len(s) - 1 for s in top}
        if r - 2 > 0 and r - 2 not in dims:
            dim_violations.append(v)
        if r - 1 in dims:
            dim_violations.append(v)

    g = nx.Graph()
    g.add_nodes_from(members)
    g.add_edges_from(tuple(e) for e in window_edges(members))
    if core:
        comp = nx.node_connected_component(g, core[0])
        connected = all(v in comp for v in core)
    else:
        connected = True

    return {
        "is_full": not full_violations,
        "dim_everywhere": not dim_violations,
        "connected": connected,
        "vertex_count": len(members),
        "core_count": len(core),
        "full_violations": full_violations,
        "dim_violations": dim_violations,
    }
