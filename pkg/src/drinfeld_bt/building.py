"""Vertices of the Bruhat-Tits building as lattice classes, and their reduction to W.

A vertex is the class of an O_inf-lattice L in V = K_inf^r given by a row
basis with Laurent-polynomial entries (pi = 1/T).  Internally the basis is
scaled by a power of T so that it is a polynomial matrix P over A = F_q[T].

Reduction is column reduction of P by unimodular column operations:
P gamma = U diag(T^d_1, ..., T^d_r) with d ascending and U in GL(r, O_inf).
Then L gamma is the standard lattice L_n with n_j = d_r - d_j, i.e. the class
of L is gamma . n where gamma acts on classes by [M] -> [M gamma^-1].
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

from .core_params import (
    NEG_INF,
    ConsistencyError,
    Context,
    FiniteField,
    FqLaurent,
    FqPoly,
    ValidationError,
    fq_det,
    fq_kernel_vector,
    projective_points,
)
from .weyl_complex import integral_point

PolyMatrix = tuple  # tuple of rows of FqPoly


class ZeroVector(ValidationError):
    pass


class SingularMatrix(ValidationError):
    pass


# --------------------------------------------------------------------------
# polynomial matrices


def identity(F: FiniteField, r: int) -> PolyMatrix:
    one, zero = FqPoly(F, [1]), FqPoly(F)
    return tuple(tuple(one if i == j else zero for j in range(r)) for i in range(r))


def mat_mul(A: Sequence[Sequence[FqLaurent]], B: Sequence[Sequence[FqLaurent]]) -> tuple:
    out = []
    for row in A:
        new = []
        for j in range(len(B[0])):
            acc = None
            for k, a in enumerate(row):
                if a.coeffs and B[k][j].coeffs:
                    t = a * B[k][j]
                    acc = t if acc is None else acc + t
            new.append(acc if acc is not None else type(row[0])(row[0].field))
        out.append(tuple(new))
    return tuple(out)


def vec_mat(v: Sequence[FqLaurent], B: Sequence[Sequence[FqLaurent]]) -> tuple:
    return mat_mul((tuple(v),), B)[0]


def poly_det(M: Sequence[Sequence[FqLaurent]]):
    """Leibniz determinant; r is small."""
    r = len(M)
    F = M[0][0].field
    total = FqPoly(F)
    for perm in permutations(range(r)):
        inv = sum(1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j])
        term = FqPoly(F, [1])
        for i in range(r):
            term = term * M[i][perm[i]]
            if term.is_zero():
                break
        if not term.is_zero():
            total = total - term if inv % 2 else total + term
    return total


def unimodular_inverse(G: Sequence[Sequence[FqPoly]]) -> PolyMatrix:
    """Inverse of gamma in GL(r, A) via the adjugate."""
    r = len(G)
    F = G[0][0].field
    det = poly_det(G)
    if det.deg() != 0:
        raise SingularMatrix("matrix is not unimodular over A")
    dinv = F.inv(det.lc())
    if r == 1:
        return ((FqPoly(F, [dinv]),),)
    out = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            minor = [[G[a][b] for b in range(r) if b != j] for a in range(r) if a != i]
            c = poly_det(minor).scale(dinv)
            out[j][i] = -c if (i + j) % 2 else c
    return tuple(tuple(row) for row in out)


def elementary(F: FiniteField, r: int, i: int, j: int, a: FqPoly) -> PolyMatrix:
    """I + a E_ij."""
    M = [list(row) for row in identity(F, r)]
    M[i][j] = M[i][j] + a
    return tuple(tuple(row) for row in M)


def diagonal(F: FiniteField, entries: Sequence[int]) -> PolyMatrix:
    r = len(entries)
    zero = FqPoly(F)
    return tuple(tuple(FqPoly(F, [entries[i]]) if i == j else zero for j in range(r)) for i in range(r))


def random_unimodular(ctx: Context, rng: random.Random, max_deg: int = 2, factors: int = 4) -> PolyMatrix:
    """Product of random elementary and diagonal matrices with entry degree <= max_deg."""
    F, r = ctx.field, ctx.r
    G = diagonal(F, [rng.randrange(1, ctx.q) for _ in range(r)])
    for _ in range(factors):
        i, j = rng.sample(range(r), 2)
        a = FqPoly(F, [rng.randrange(ctx.q) for _ in range(max_deg + 1)])
        G = mat_mul(G, elementary(F, r, i, j, a))
    perm = list(range(r))
    rng.shuffle(perm)
    P = tuple(tuple(G[i][perm[j]] for j in range(r)) for i in range(r))
    return P


# --------------------------------------------------------------------------
# reduction


@dataclass(frozen=True)
class ReductionCertificate:
    """basis . gamma = pi^global_power . unit_witness . diag(pi^n)."""

    gamma: PolyMatrix
    gamma_inv: PolyMatrix
    weyl_rep: tuple[int, ...]
    unit_witness: tuple
    global_power: int
    col_degrees: tuple[int, ...]  # degrees d_j of the scaled polynomial basis


def _column_reduce(P: list[list[FqPoly]], F: FiniteField):
    r = len(P)
    G = [list(row) for row in identity(F, r)]
    Ginv = [list(row) for row in identity(F, r)]
    for _ in range(10_000):
        d = []
        for j in range(r):
            dj = max(P[i][j].deg() for i in range(r))
            if dj == NEG_INF:
                raise SingularMatrix("basis has a zero column")
            d.append(dj)
        lcm = [[P[i][j].coeff(d[j]) for j in range(r)] for i in range(r)]
        c = fq_kernel_vector(F, lcm)
        if c is None:
            break
        j0 = max((j for j in range(r) if c[j]), key=lambda j: (d[j], j))
        inv = F.inv(c[j0])
        for j in range(r):
            if j == j0 or not c[j]:
                continue
            a = FqPoly(F, [F.mul(c[j], inv)], d[j0] - d[j])
            for i in range(r):
                if P[i][j].coeffs:
                    P[i][j0] = P[i][j0] + a * P[i][j]
                if G[i][j].coeffs:
                    G[i][j0] = G[i][j0] + a * G[i][j]
            # gamma^-1 <- E^-1 gamma^-1: row j -= a * row j0
            Ginv[j] = [x - a * y for x, y in zip(Ginv[j], Ginv[j0])]
    else:  # pragma: no cover
        raise ConsistencyError("column reduction did not terminate")
    order = sorted(range(r), key=lambda j: d[j])
    P = [[row[j] for j in order] for row in P]
    G = [[row[j] for j in order] for row in G]
    Ginv = [Ginv[j] for j in order]
    d = [d[j] for j in order]
    return P, G, Ginv, d


def _as_laurent_matrix(F: FiniteField, rows) -> tuple:
    out = []
    for row in rows:
        new = []
        for x in row:
            if isinstance(x, FqLaurent):
                new.append(x)
            else:
                new.append(FqLaurent(F, [F.from_int(int(x))] if int(x) % F.p else []))
        out.append(tuple(new))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class LatticeVertex:
    """Class [L] of the lattice spanned over O_inf by the rows of ``basis``."""

    ctx: Context
    basis: tuple

    def __post_init__(self):
        if len(self.basis) != self.ctx.r or any(len(row) != self.ctx.r for row in self.basis):
            raise ValidationError(f"basis must be {self.ctx.r}x{self.ctx.r}")

    @cached_property
    def scale(self) -> int:
        """c with T^c * basis polynomial and some entry of T-valuation 0."""
        vals = [x.val() for row in self.basis for x in row if not x.is_zero()]
        if not vals:
            raise SingularMatrix("zero basis")
        return -min(vals)

    @cached_property
    def poly_basis(self) -> PolyMatrix:
        F, c = self.ctx.field, self.scale
        return tuple(tuple(FqPoly(F, x.coeffs, x.low + c) for x in row) for row in self.basis)

    @cached_property
    def reduction(self) -> ReductionCertificate:
        F = self.ctx.field
        P, G, Ginv, d = _column_reduce([list(row) for row in self.poly_basis], F)
        dmax = d[-1]
        n = tuple(dmax - dj for dj in d)
        U = tuple(tuple(FqLaurent(F, x.coeffs, x.low - d[j]) for j, x in enumerate(row)) for row in P)
        return ReductionCertificate(
            gamma=tuple(map(tuple, G)),
            gamma_inv=tuple(map(tuple, Ginv)),
            weyl_rep=n,
            unit_witness=U,
            global_power=self.scale - dmax,
            col_degrees=tuple(d),
        )

    def log_norm(self, y: Sequence[FqLaurent]):
        """log nu(y) for the norm with unit ball T^-0 L_P (P the scaled basis).

        Equals max_j (deg (y gamma)_j - d_j); y lies in L_P iff this is <= 0.
        """
        cert = self.reduction
        yg = vec_mat(y, cert.gamma)
        return max(x.deg() - dj for x, dj in zip(yg, cert.col_degrees))

    def __repr__(self) -> str:
        return f"LatticeVertex({[[repr(x) for x in row] for row in self.basis]})"


def standard_vertex(ctx: Context, n: Sequence) -> LatticeVertex:
    n = integral_point(ctx, n)
    F = ctx.field
    zero = FqLaurent(F)
    rows = tuple(
        tuple(FqLaurent.pi_power(F, n[i]) if i == j else zero for j in range(ctx.r)) for i in range(ctx.r)
    )
    return LatticeVertex(ctx, rows)


def vertex_from_rows(ctx: Context, rows) -> LatticeVertex:
    v = LatticeVertex(ctx, _as_laurent_matrix(ctx.field, rows))
    if poly_det(v.poly_basis).is_zero():
        raise SingularMatrix("basis is singular")
    return v


def reduce_to_weyl(ctx: Context, v: LatticeVertex) -> ReductionCertificate:
    return v.reduction


def verify_certificate(ctx: Context, v: LatticeVertex, cert: ReductionCertificate) -> bool:
    """basis . gamma . diag(pi^-n) = pi^g . U with U in GL(r, O_inf), det gamma in F_q^*."""
    F, r = ctx.field, ctx.r
    det = poly_det(cert.gamma)
    if det.deg() != 0:
        return False
    n = cert.weyl_rep
    if any(a < b for a, b in zip(n, n[1:])) or n[-1] != 0:
        return False
    lhs = mat_mul(v.basis, cert.gamma)
    U = []
    for row in lhs:
        # multiply column j by pi^-n_j = T^n_j, then by pi^-g = T^g
        U.append(tuple(FqLaurent(F, x.coeffs, x.low + n[j] + cert.global_power) for j, x in enumerate(row)))
    if tuple(map(tuple, U)) != tuple(map(tuple, cert.unit_witness)):
        return False
    if any(x.deg() > 0 for row in U for x in row):
        return False
    lead = [[x.coeff(0) for x in row] for row in U]
    if fq_det(F, lead) == 0:
        return False
    ident = mat_mul(cert.gamma, cert.gamma_inv)
    return ident == identity(F, r)


def same_class(ctx: Context, v: LatticeVertex, w: LatticeVertex) -> bool:
    cv, cw = v.reduction, w.reduction
    if cv.weyl_rep != cw.weyl_rep:
        return False
    diff = sum(cw.col_degrees) - sum(cv.col_degrees)
    if diff % ctx.r:
        return False
    t = diff // ctx.r
    return all(v.log_norm(row) <= t for row in w.poly_basis)


# --------------------------------------------------------------------------
# shifts and arrows


@dataclass(frozen=True, eq=False)
class Arrow:
    origin: LatticeVertex
    target: LatticeVertex
    direction: tuple[int, ...] | None = None


def _as_vector(ctx: Context, y) -> tuple:
    F = ctx.field
    out = []
    for x in y:
        if isinstance(x, FqLaurent):
            out.append(x)
        else:
            out.append(FqLaurent(F, [int(x)]))
    if len(out) != ctx.r:
        raise ValidationError(f"vector must have {ctx.r} entries")
    return tuple(out)


def shift_toward(ctx: Context, v: LatticeVertex, y) -> LatticeVertex:
    """Vertex of (L cap K_inf y) + pi L."""
    F = ctx.field
    y = _as_vector(ctx, y)
    if all(x.is_zero() for x in y):
        raise ZeroVector("shift toward the zero vector")
    cert = v.reduction
    t = v.log_norm(y)
    u = tuple(x.shift(-t) for x in y)
    ug = vec_mat(u, cert.gamma)
    d = cert.col_degrees
    resid = [x.coeff(dj) for x, dj in zip(ug, d)]
    j = max(i for i, c in enumerate(resid) if c)
    rows = [u]
    for i in range(ctx.r):
        if i != j:
            rows.append(tuple(FqLaurent(F, x.coeffs, x.low + d[i] - 1) for x in cert.gamma_inv[i]))
    return LatticeVertex(ctx, tuple(rows))


def direction_vector(ctx: Context, v: LatticeVertex, c: Sequence[int]) -> tuple:
    """Lift of the point c of P(L/piL) to V, in coordinates of v's basis rows."""
    F = ctx.field
    out = [FqLaurent(F) for _ in range(ctx.r)]
    for ci, row in zip(c, v.basis):
        if ci:
            out = [a + b.scale(ci) for a, b in zip(out, row)]
    return tuple(out)


def arrows_type1(ctx: Context, v: LatticeVertex) -> list[Arrow]:
    out = []
    for c in projective_points(ctx.field, ctx.r):
        out.append(Arrow(v, shift_toward(ctx, v, direction_vector(ctx, v, c)), c))
    return out


def points_to(ctx: Context, e: Arrow, y) -> bool:
    return same_class(ctx, e.target, shift_toward(ctx, e.origin, y))


def act(ctx: Context, gamma: Sequence[Sequence[FqPoly]], v: LatticeVertex, gamma_inv=None) -> LatticeVertex:
    """gamma . [L] = [L gamma^-1]."""
    gi = gamma_inv if gamma_inv is not None else unimodular_inverse(gamma)
    return LatticeVertex(ctx, mat_mul(v.poly_basis, gi))


def log_nu(ctx: Context, x: Sequence, v: Sequence) -> Fraction | float:
    """max_i (deg v_i + x_i); NEG_INF iff v = 0."""
    from .weyl_complex import weyl_point

    x = weyl_point(ctx, x)
    v = _as_vector(ctx, v)
    vals = [vi.deg() + xi for vi, xi in zip(v, x) if not vi.is_zero()]
    return max(vals) if vals else NEG_INF


def type1_adjacent(ctx: Context, v: LatticeVertex, w: LatticeVertex) -> bool:
    """Whether (v, w) is a type-1 arrow: some pi L_v < M < L_v with [M] = [w], dim M/pi L_v = 1."""
    return any(same_class(ctx, e.target, w) for e in arrows_type1(ctx, v))
