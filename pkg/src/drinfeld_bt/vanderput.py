"""Van der Put transforms of simplicial forms on type-1 arrows.

Norms at arbitrary vertices come from equivariance.  If reduction gives
[L_m] = gamma . n (gamma . [L] = [L gamma^-1]) then for f of weight w

    log ||f||_m = log ||f||_n + w * log nu_n(y_gamma),

y_gamma the bottom row of gamma: f(gamma w) = aut(gamma, w)^w f(w) and the
sup-norm of aut(gamma, .) = <y_gamma, w> over the fibre of n is nu_n(y_gamma).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .alpha_norms import log_alpha_norm_vertex
from .building import (
    Arrow,
    LatticeVertex,
    act,
    arrows_type1,
    diagonal,
    direction_vector,
    elementary,
    identity,
    log_nu,
    points_to,
    shift_toward,
    standard_vertex,
    unimodular_inverse,
)
from .coefficient_forms import RegimeViolation, log_coeff_norm
from .core_params import (
    ConsistencyError,
    Context,
    FqPoly,
    ValidationError,
    all_polys,
    fq_inverse,
    fq_matmul,
    normalize_projective,
    projective_points,
)
from .weyl_complex import integral_point, wk_membership


class NonIntegralTransform(ConsistencyError):
    pass


class NegativeInnerDegree(ConsistencyError):
    pass


@dataclass(frozen=True)
class FormSpec:
    kind: str
    k: int
    d: int | None = None

    def __post_init__(self):
        if self.kind not in ("alpha", "coeff"):
            raise ValidationError(f"unknown form kind {self.kind!r}")
        if self.k < 1:
            raise ValidationError("k must be positive")
        if self.kind == "coeff":
            if self.d is None or self.d < 1:
                raise ValidationError("coefficient forms need d >= 1")
            if self.k > self.d:
                raise RegimeViolation(f"k={self.k} > d={self.d} is outside the simplicial regime")

    def weight(self, ctx: Context) -> int:
        return ctx.q ** self.k - 1

    def label(self) -> str:
        return f"alpha:{self.k}" if self.kind == "alpha" else f"coeff:{self.k}:{self.d}"

    @classmethod
    def parse(cls, text: str) -> "FormSpec":
        parts = text.split(":")
        try:
            if parts[0] == "alpha" and len(parts) == 2:
                return cls("alpha", int(parts[1]))
            if parts[0] == "coeff" and len(parts) == 3:
                return cls("coeff", int(parts[1]), int(parts[2]))
        except ValueError:
            pass
        raise ValidationError(f"form must look like alpha:K or coeff:K:D, got {text!r}")


def log_norm_on_weyl(ctx: Context, f: FormSpec, n: Sequence[int]) -> Fraction:
    if f.kind == "alpha":
        return log_alpha_norm_vertex(ctx, n, f.k)
    return log_coeff_norm(ctx, n, f.d, f.k)


def log_norm_at_vertex(ctx: Context, f: FormSpec, m: LatticeVertex) -> Fraction:
    cert = m.reduction
    n = cert.weyl_rep
    y = cert.gamma[-1]
    return log_norm_on_weyl(ctx, f, n) + f.weight(ctx) * log_nu(ctx, n, y)


def vdp(ctx: Context, f: FormSpec, e: Arrow) -> int:
    val = log_norm_at_vertex(ctx, f, e.target) - log_norm_at_vertex(ctx, f, e.origin)
    if val.denominator != 1:
        raise NonIntegralTransform(f"van der Put value {val} is not an integer")
    return int(val)


def _bottom_row(ctx: Context, gamma) -> tuple:
    return tuple(gamma[-1])


def _z(ctx: Context) -> tuple:
    return tuple([0] * (ctx.r - 1) + [1])


def automorphy_vdp(ctx: Context, gamma, e: Arrow) -> int:
    """P(aut(gamma, .))(e) from where e points."""
    to_y = points_to(ctx, e, _bottom_row(ctx, gamma))
    to_z = points_to(ctx, e, _z(ctx))
    if to_y and not to_z:
        return -1
    if to_z and not to_y:
        return 1
    return 0


def automorphy_vdp_from_norms(ctx: Context, gamma, e: Arrow) -> int:
    """Same quantity as difference of log sup-norms of <y_gamma, w> / <z, w>."""
    from .building import _as_vector

    y, z = _as_vector(ctx, _bottom_row(ctx, gamma)), _as_vector(ctx, _z(ctx))
    t = e.target.log_norm(y) - e.target.log_norm(z)
    o = e.origin.log_norm(y) - e.origin.log_norm(z)
    return int(t - o)


def inner_degree(ctx: Context, f: FormSpec, n: Sequence) -> int:
    """Sum of P(f) over the type-1 arrows leaving the standard vertex n."""
    n = integral_point(ctx, n)
    return _inner_degree(ctx, f, n)


@lru_cache(maxsize=4096)
def _inner_degree(ctx: Context, f: FormSpec, n: tuple) -> int:
    v = standard_vertex(ctx, n)
    total = sum(vdp(ctx, f, e) for e in arrows_type1(ctx, v))
    if total < 0:
        raise NegativeInnerDegree(f"inner degree {total} at {n}")
    if total > 0 and not wk_membership(ctx, n, f.k):
        raise ConsistencyError(f"positive inner degree {total} at {n} outside W({f.k})")
    return total


def act_on_arrow(ctx: Context, gamma, e: Arrow, gamma_inv=None) -> Arrow:
    gi = gamma_inv if gamma_inv is not None else unimodular_inverse(gamma)
    return Arrow(act(ctx, gamma, e.origin, gi), act(ctx, gamma, e.target, gi))


# --------------------------------------------------------------------------
# stabilizers of standard vertices


def parabolic_positions(n: Sequence[int]) -> list[tuple[int, int]]:
    """Off-diagonal (i, j) where gamma_ij may be nonzero in Gamma_n: n_i >= n_j."""
    r = len(n)
    return [(i, j) for i in range(r) for j in range(r) if i != j and n[i] >= n[j]]


def gamma_n_generators(
    ctx: Context, n: Sequence[int], rng: random.Random | None = None, samples: int = 200
) -> list:
    """Elementary matrices I + b E_ij with deg b <= n_i - n_j, plus diagonal units.

    Exhaustive over b when rng is None; otherwise ``samples`` random draws.
    """
    F, r = ctx.field, ctx.r
    gens = []
    positions = parabolic_positions(n)
    if rng is None:
        for i, j in positions:
            for b in all_polys(F, n[i] - n[j]):
                if not b.is_zero():
                    gens.append(elementary(F, r, i, j, b))
        for i in range(r):
            for c in range(2, ctx.q):
                entries = [1] * r
                entries[i] = c
                gens.append(diagonal(F, entries))
    else:
        for _ in range(samples):
            if rng.random() < 0.15 and ctx.q > 2:
                gens.append(diagonal(F, [rng.randrange(1, ctx.q) for _ in range(r)]))
                continue
            i, j = rng.choice(positions)
            b = FqPoly(F, [rng.randrange(ctx.q) for _ in range(n[i] - n[j] + 1)])
            if b.is_zero():
                b = FqPoly(F, [1])
            gens.append(elementary(F, r, i, j, b))
    return gens


def gamma_bar_generators(ctx: Context, n: Sequence[int]) -> list[list[list[int]]]:
    """Generators of the leading-coefficient image of Gamma_n inside GL(r, F_q)."""
    F, r = ctx.field, ctx.r
    gens = []
    for i, j in parabolic_positions(n):
        for a in F.nonzero():
            M = [[1 if x == y else 0 for y in range(r)] for x in range(r)]
            M[i][j] = a
            gens.append(M)
    for i in range(r):
        for a in F.nonzero():
            if a != 1:
                M = [[1 if x == y else 0 for y in range(r)] for x in range(r)]
                M[i][i] = a
                gens.append(M)
    return gens


def orbits(ctx: Context, n: Sequence[int]) -> list[dict]:
    """Orbits of Gamma-bar_n on P(L_n / pi L_n) = P^{r-1}(F_q).

    gamma maps the arrow toward c to the arrow toward c . gbar^-1, so orbits are
    those of the row action.  Each orbit records, for every member, a matrix g
    in Gamma-bar_n carrying the representative's arrow to the member's.
    """
    F = ctx.field
    gens = gamma_bar_generators(ctx, n)
    ident = [[1 if x == y else 0 for y in range(ctx.r)] for x in range(ctx.r)]
    seen: dict[tuple, int] = {}
    out = []
    for start in projective_points(F, ctx.r)[::-1]:
        if start in seen:
            continue
        members = {start: ident}
        queue = deque([start])
        while queue:
            c = queue.popleft()
            g = members[c]
            for h in gens:
                gh = fq_matmul(F, h, g)
                # arrow toward c' = start . (h g)^-1
                new = normalize_projective(F, fq_matmul(F, [list(start)], fq_inverse(F, gh))[0])
                if new not in members:
                    members[new] = gh
                    queue.append(new)
        for c in members:
            seen[c] = len(out)
        out.append({"representative": start, "members": members})
    return out


def lift_bar(ctx: Context, n: Sequence[int], M) -> tuple:
    """Element of Gamma_n with leading coefficients M: entry M_ij T^(n_i - n_j)."""
    F = ctx.field
    out = []
    for i, row in enumerate(M):
        out.append(
            tuple(
                FqPoly(F, [0] * (n[i] - n[j]) + [x]) if x and n[i] >= n[j] else FqPoly(F)
                for j, x in enumerate(row)
            )
        )
    return tuple(out)


# --------------------------------------------------------------------------
# the case study in rank 3


def case_vertices(bound: int = 4) -> dict[str, list[tuple[int, int, int]]]:
    return {
        "0": [(0, 0, 0)],
        "p": [(1, 1, 0)],
        "q": [(n, 0, 0) for n in range(1, bound + 1)],
        "r": [(n, 1, 0) for n in range(2, bound + 1)],
        "s": [(n1, n2, 0) for n2 in range(2, bound + 1) for n1 in range(n2, bound + 1)],
    }


def expected_inner_degree(q: int, case: str) -> int:
    return {"0": q ** 3 - q ** 2, "p": q ** 4 - q ** 2, "q": 0, "r": q ** 3 - q ** 2, "s": 0}[case]


def expected_orbit_sizes(q: int, case: str, n: Sequence[int]) -> list[int] | None:
    if case == "0":
        return [q * q + q + 1]
    if case == "p":
        return [1, q * q + q]
    if case == "q":
        return [q + 1, q * q]
    if case == "r":
        return [1, q, q * q]
    return None


def vertex_report(ctx: Context, f: FormSpec, n: Sequence[int]) -> dict:
    """Orbits, P-values and the inner degree at the standard vertex n."""
    n = integral_point(ctx, n)
    v = standard_vertex(ctx, n)
    arrows = {e.direction: e for e in arrows_type1(ctx, v)}
    w = f.weight(ctx)
    orbit_rows = []
    consistent = True
    N = 0
    for orb in orbits(ctx, n):
        rep = orb["representative"]
        e_rep = arrows[rep]
        p_rep = vdp(ctx, f, e_rep)
        values: dict[int, int] = {}
        for c, g in orb["members"].items():
            p_direct = vdp(ctx, f, arrows[c])
            gamma = lift_bar(ctx, n, g)
            moved = act_on_arrow(ctx, gamma, e_rep)
            # the moved arrow must be the arrow toward c, with the predicted value
            if not points_to(ctx, Arrow(v, moved.target), direction_vector(ctx, v, c)):
                consistent = False
            predicted = w * automorphy_vdp(ctx, gamma, e_rep) + p_rep
            if predicted != p_direct:
                consistent = False
            values[p_direct] = values.get(p_direct, 0) + 1
            N += p_direct
        orbit_rows.append(
            {
                "representative": list(rep),
                "size": len(orb["members"]),
                "P_representative": p_rep,
                "P_values": {str(k): c for k, c in sorted(values.items())},
            }
        )
    orbit_rows.sort(key=lambda o: (o["size"], o["representative"]))
    direct = inner_degree(ctx, f, n)
    return {
        "vertex": list(n),
        "orbits": orbit_rows,
        "inner_degree_from_orbits": N,
        "inner_degree": direct,
        "consistent": consistent and N == direct,
    }


def case_study_report(ctx: Context, bound: int = 4) -> dict:
    if ctx.r != 3:
        raise ValidationError("the case study is in rank 3")
    f = FormSpec("alpha", 2)
    q = ctx.q
    cases = []
    ok = True
    for name, verts in case_vertices(bound).items():
        for n in verts:
            rep = vertex_report(ctx, f, n)
            rep["case"] = name
            rep["expected_inner_degree"] = expected_inner_degree(q, name)
            sizes = expected_orbit_sizes(q, name, n)
            rep["expected_orbit_sizes"] = sizes
            good = rep["consistent"] and rep["inner_degree"] == rep["expected_inner_degree"]
            if sizes is not None:
                good = good and sorted(o["size"] for o in rep["orbits"]) == sorted(sizes)
            rep["passed"] = good
            ok = ok and good
            cases.append(rep)
    return {"q": q, "r": 3, "form": f.label(), "vertices": cases, "passed": ok}


def orbit_consistency(
    ctx: Context, f: FormSpec, n: Sequence[int], rng: random.Random | None = None, samples: int = 200
) -> list[dict]:
    """Check P(f)(gamma e) = w P(aut(gamma,.))(e) + P(f)(e) for generators of Gamma_n.

    Returns the list of failures (empty when the identity holds throughout).
    """
    n = integral_point(ctx, n)
    v = standard_vertex(ctx, n)
    arrows = arrows_type1(ctx, v)
    w = f.weight(ctx)
    base = {e.direction: vdp(ctx, f, e) for e in arrows}
    failures = []
    for gamma in gamma_n_generators(ctx, n, rng, samples):
        gi = unimodular_inverse(gamma)
        for e in arrows:
            moved = act_on_arrow(ctx, gamma, e, gi)
            lhs = vdp(ctx, f, moved)
            aut = automorphy_vdp(ctx, gamma, e)
            if lhs != w * aut + base[e.direction]:
                failures.append({"direction": e.direction, "lhs": lhs, "aut": aut})
    return failures


def identity_matrix(ctx: Context):
    return identity(ctx.field, ctx.r)


# --------------------------------------------------------------------------
# closed loops


def complete_flags(ctx: Context) -> list[tuple[tuple[int, ...], ...]]:
    """Complete flags of F_q^r as adapted bases v_1, ..., v_r.

    v_k has leading coefficient 1 and vanishes at the pivots of v_1..v_(k-1),
    which makes the basis unique for its flag.
    """
    F, r = ctx.field, ctx.r
    out = []

    def rec(basis: list, pivots: list):
        if len(basis) == r - 1:
            last = next(i for i in range(r) if i not in pivots)
            out.append(tuple(basis) + (tuple(1 if i == last else 0 for i in range(r)),))
            return
        for v in product(F.elements(), repeat=r):
            nz = [i for i, c in enumerate(v) if c]
            if not nz or v[nz[0]] != 1 or any(v[p] for p in pivots):
                continue
            rec(basis + [v], pivots + [nz[0]])

    rec([], [])
    return out


def flag_loop(ctx: Context, v: LatticeVertex, flag) -> list[LatticeVertex]:
    """Vertices L, <v_1> + piL, <v_1, v_2> + piL, ..., back to the class of L."""
    path = [v]
    cur = v
    for c in flag:
        cur = shift_toward(ctx, cur, direction_vector(ctx, v, c))
        path.append(cur)
    return path


def loop_sums(ctx: Context, forms: Sequence[FormSpec], n: Sequence[int]) -> list[dict]:
    """Signed vdp sums of every flag loop at the standard vertex n (all should be 0)."""
    from .building import same_class

    v = standard_vertex(ctx, integral_point(ctx, n))
    out = []
    for flag in complete_flags(ctx):
        path = flag_loop(ctx, v, flag)
        closed = same_class(ctx, path[-1], v)
        for f in forms:
            total = sum(vdp(ctx, f, Arrow(a, b)) for a, b in zip(path, path[1:]))
            out.append({"flag": flag, "form": f.label(), "closed": closed, "sum": total})
    return out
