"""Brute-force oracles over finite fields.

Finite F_q-lattices live in an extension F_{q^m}; their exponential
polynomials are computed by expanding prod (X - lambda) and, independently,
from Moore minors.  A valued model over F_{q^m}[u] (|u| < 1) tests the
reduction identity for lattices with one norm gap, and the local inner
degrees at the origin in rank 3 are recovered by dividing Moore determinants
by the rational linear forms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterator, Sequence

from .core_params import (
    FIELD_SIZE_GUARD,
    ConsistencyError,
    Context,
    FieldTooLarge,
    FiniteField,
    ValidationError,
    finite_field,
    projective_points,
)


class DependentBasis(ValidationError):
    pass


class HypothesisViolated(ValidationError):
    pass


class DivisibilityFailure(ConsistencyError):
    pass


class ExtField:
    """F_{q^m} together with its subfield F_q = {x : x^q = x}."""

    def __init__(self, ctx: Context, m: int):
        if m < 1:
            raise ValidationError("extension degree must be positive")
        if ctx.q ** m > FIELD_SIZE_GUARD:
            raise FieldTooLarge(f"q^m = {ctx.q ** m} exceeds guard {FIELD_SIZE_GUARD}")
        self.q = ctx.q
        self.m = m
        self.F: FiniteField = finite_field(ctx.p, ctx.e * m)
        self.order = ctx.q ** m

    @cached_property
    def base(self) -> list[int]:
        """Elements of F_q inside F_{q^m}, 0 first."""
        return [x for x in self.F.elements() if self.F.pow(x, self.q) == x]

    @cached_property
    def generator(self) -> int:
        return self.F.generator

    def frob(self, x: int, i: int = 1) -> int:
        return self.F.pow(x, self.q ** i)

    def span(self, basis: Sequence[int]) -> list[int]:
        F = self.F
        out = []
        for coeffs in product(self.base, repeat=len(basis)):
            acc = 0
            for c, b in zip(coeffs, basis):
                acc = F.add(acc, F.mul(c, b))
            out.append(acc)
        return out

    def det(self, rows: Sequence[Sequence[int]]) -> int:
        F = self.F
        M = [list(r) for r in rows]
        n = len(M)
        det = 1
        for col in range(n):
            piv = next((i for i in range(col, n) if M[i][col]), None)
            if piv is None:
                return 0
            if piv != col:
                M[col], M[piv] = M[piv], M[col]
                det = F.neg(det)
            det = F.mul(det, M[col][col])
            inv = F.inv(M[col][col])
            for i in range(col + 1, n):
                if M[i][col]:
                    f = F.mul(M[i][col], inv)
                    M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[col])]
        return det


@dataclass(frozen=True)
class FqLattice:
    ext: ExtField
    basis: tuple[int, ...]

    def __post_init__(self):
        if len(self.basis) < 1:
            raise ValidationError("lattice needs at least one generator")
        if self.ext.q ** len(self.basis) > FIELD_SIZE_GUARD:
            raise FieldTooLarge("lattice too large to enumerate")
        if moore_det(self.ext, self.basis) == 0:
            raise DependentBasis("basis is F_q-linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def elements(self) -> list[int]:
        return self.ext.span(self.basis)


def moore_matrix(ext: ExtField, elems: Sequence[int], exponents: Sequence[int]) -> list[list[int]]:
    return [[ext.frob(w, i) for i in exponents] for w in elems]


def moore_det(ext: ExtField, elems: Sequence[int]) -> int:
    """det (w_j^(q^i)), rows j, columns i = 0..n-1."""
    if not elems:
        raise ValidationError("Moore determinant of no elements")
    return ext.det(moore_matrix(ext, elems, range(len(elems))))


def is_dependent_bruteforce(ext: ExtField, elems: Sequence[int]) -> bool:
    """Some nontrivial F_q-combination vanishes."""
    F = ext.F
    for coeffs in product(ext.base, repeat=len(elems)):
        if any(coeffs):
            acc = 0
            for c, b in zip(coeffs, elems):
                acc = F.add(acc, F.mul(c, b))
            if acc == 0:
                return True
    return False


def _poly_mul(F: FiniteField, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def vanishing_poly(ext: ExtField, elems: Sequence[int]) -> list[int]:
    """Coefficients (low to high) of prod (X - lambda)."""
    F = ext.F
    poly = [1]
    for lam in elems:
        poly = _poly_mul(F, poly, [F.neg(lam), 1])
    return poly


def _q_additive_part(ext: ExtField, poly: list[int], n: int) -> list[int]:
    q = ext.q
    exps = {q ** i for i in range(n + 1)}
    if any(c and j not in exps for j, c in enumerate(poly)):
        raise ConsistencyError("vanishing polynomial of a lattice is not q-additive")
    return [poly[q ** i] for i in range(n + 1)]


def exp_coeffs_by_product(W: FqLattice) -> list[int]:
    """alpha_i from e_W = f_W / f_W'(0), f_W = prod_{lambda in W} (X - lambda)."""
    ext = W.ext
    F = ext.F
    c = _q_additive_part(ext, vanishing_poly(ext, W.elements()), W.dim)
    inv = F.inv(c[0])
    return [F.mul(x, inv) for x in c]


def exp_coeffs_by_moore(W: FqLattice) -> list[int]:
    """alpha_i = (-1)^i M^(i) / M^(0), M^(i) the minor of the X^(q^i) column."""
    ext = W.ext
    F = ext.F
    n = W.dim
    minors = []
    for i in range(n + 1):
        cols = [t for t in range(n + 1) if t != i]
        minors.append(ext.det(moore_matrix(ext, W.basis, cols)))
    inv = F.inv(minors[0])
    return [F.mul(minors[i] if i % 2 == 0 else F.neg(minors[i]), inv) for i in range(n + 1)]


def exp_poly_coeffs(W: FqLattice) -> list[int]:
    a = exp_coeffs_by_product(W)
    b = exp_coeffs_by_moore(W)
    if a != b:
        raise ConsistencyError(f"product and Moore coefficients differ: {a} vs {b}")
    return a


def eval_q_poly(ext: ExtField, coeffs: Sequence[int], x: int) -> int:
    F = ext.F
    acc = 0
    for i, c in enumerate(coeffs):
        acc = F.add(acc, F.mul(c, ext.frob(x, i)))
    return acc


def beta_zero_count(ctx: Context, m: int = 2) -> int:
    """#{w in F_{q^m} minus F_q : alpha_1(F_q + F_q w) = 0}."""
    ext = ExtField(ctx, m)
    count = 0
    for w in ext.F.elements():
        if w in ext.base:
            continue
        if exp_poly_coeffs(FqLattice(ext, (1, w)))[1] == 0:
            count += 1
    return count


# --------------------------------------------------------------------------
# valued model: elements of F_{q^m}[u], |u| < 1


UPoly = tuple  # coefficients in F_{q^m}, low to high in u


def _trim(a: list[int]) -> UPoly:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def u_add(F: FiniteField, a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return _trim([F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])


def u_mul(F: FiniteField, a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    return _trim(_poly_mul(F, list(a), list(b)))


def u_order(a: UPoly) -> float:
    for i, c in enumerate(a):
        if c:
            return i
    return float("inf")


@dataclass(frozen=True)
class ValuedLattice:
    """F_q-span of basis elements of F_{q^m}[u]; the first d0 are divisible by u."""

    ext: ExtField
    basis: tuple[UPoly, ...]
    d0: int

    @property
    def d(self) -> int:
        return len(self.basis)

    def elements(self) -> list[UPoly]:
        F = self.ext.F
        out = []
        for coeffs in product(self.ext.base, repeat=self.d):
            acc: UPoly = ()
            for c, b in zip(coeffs, self.basis):
                acc = u_add(F, acc, u_mul(F, (c,), b))
            out.append(acc)
        return out

    def check_hypothesis(self) -> None:
        small, big = self.basis[: self.d0], self.basis[self.d0 :]
        if any(u_order(b) < 1 for b in small):
            raise HypothesisViolated("the first d0 generators must be divisible by u")
        residues = [b[0] if b else 0 for b in big]
        if big and moore_det(self.ext, residues) == 0:
            raise HypothesisViolated("reductions of the unit generators are dependent")
        if len(set(self.elements())) != self.ext.q ** self.d:
            raise HypothesisViolated("generators are F_q-linearly dependent")

    def reduced(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.basis[self.d0 :])

    def spectrum(self) -> list[float]:
        """u-orders of an SMB, smallest norm (largest order) first."""
        counts: dict[float, int] = {}
        for x in self.elements():
            if x:
                o = u_order(x)
                counts[o] = counts.get(o, 0) + 1
        out = []
        below = 1  # #{x : ord x > t}, zero included
        for o in sorted(counts, reverse=True):
            total = below + counts[o]
            mult = _log_q(self.ext.q, total) - _log_q(self.ext.q, below)
            out.extend([o] * mult)
            below = total
        return out

    def vanishing_coeffs(self) -> list[UPoly]:
        """Coefficients of X^(q^j) in prod (X - lambda), exact in u."""
        F = self.ext.F
        poly: list[UPoly] = [(1,)]
        for lam in self.elements():
            neg = tuple(F.neg(c) for c in lam)
            new: list[UPoly] = [()] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i + 1] = u_add(F, new[i + 1], c)
                new[i] = u_add(F, new[i], u_mul(F, c, neg))
            poly = new
        q = self.ext.q
        exps = {q ** j for j in range(self.d + 1)}
        if any(c and i not in exps for i, c in enumerate(poly)):
            raise ConsistencyError("vanishing polynomial is not q-additive")
        return [poly[q ** j] for j in range(self.d + 1)]


def _log_q(q: int, n: int) -> int:
    k = 0
    while n > 1:
        if n % q:
            raise ConsistencyError(f"{n} is not a power of {q}")
        n //= q
        k += 1
    return k


def lemma410_check(W: ValuedLattice) -> bool:
    """Reduction of alpha_j(W)/alpha_d(W) against the reduced lattice.

    The ratios are the coefficients of the monic f_W; for d0 <= j <= d their
    constant terms must be (alpha_{j-d0}(Wbar)/alpha_{d-d0}(Wbar))^(q^d0), and
    for j < d0 they must vanish mod u.
    """
    W.check_hypothesis()
    ext = W.ext
    F = ext.F
    coeffs = W.vanishing_coeffs()
    lhs = [c[0] if c else 0 for c in coeffs]
    if W.d0 == W.d:
        bar = [1]
    else:
        bar = _q_additive_part(ext, vanishing_poly(ext, ext.span(W.reduced())), W.d - W.d0)
    for j in range(W.d + 1):
        want = F.pow(bar[j - W.d0], ext.q ** W.d0) if j >= W.d0 else 0
        if lhs[j] != want:
            return False
    return True


def alpha_vanishes(W: ValuedLattice, k: int) -> bool:
    """alpha_k(W) = 0 exactly (as an element of F_{q^m}[u])."""
    return not W.vanishing_coeffs()[k]


def spectral_principle_holds(W: ValuedLattice, k: int) -> bool:
    """If alpha_k(W) = 0 then |lambda_k| = |lambda_{k+1}|."""
    if not 1 <= k < W.d:
        raise ValidationError(f"k={k} outside 1..{W.d - 1}")
    if not alpha_vanishes(W, k):
        return True
    s = W.spectrum()
    return s[k - 1] == s[k]


def exhaustive_models(ctx: Context, m: int, d: int, u_degree: int = 1) -> Iterator[ValuedLattice]:
    """Every model with unit generators a + b u and small generators b u (u-degree <= u_degree)."""
    ext = ExtField(ctx, m)
    elems = ext.F.elements()
    for d0 in range(d + 1):
        if d - d0 > m or d0 > m:
            continue
        tails = list(product(elems, repeat=u_degree))
        for units in product([x for x in elems if x], repeat=d - d0):
            if units and moore_det(ext, units) == 0:
                continue
            for smalls in product(tails, repeat=d0):
                leads = [s[0] for s in smalls]
                if smalls and (0 in leads or moore_det(ext, leads) == 0):
                    continue
                for unit_tails in product(tails, repeat=d - d0):
                    basis = tuple(_trim([0] + list(s)) for s in smalls) + tuple(
                        _trim([a] + list(t)) for a, t in zip(units, unit_tails)
                    )
                    yield ValuedLattice(ext, basis, d0)


def random_model(ctx: Context, rng: random.Random, m: int, d: int, u_degree: int = 2) -> ValuedLattice:
    ext = ExtField(ctx, m)
    elems = ext.F.elements()
    while True:
        d0 = rng.randrange(0, min(d, m) + 1)
        if d - d0 > m:
            continue
        smalls = [_trim([0] + [rng.choice(elems) for _ in range(u_degree)]) for _ in range(d0)]
        units = [_trim([rng.choice(elems)] + [rng.choice(elems) for _ in range(u_degree)]) for _ in range(d - d0)]
        W = ValuedLattice(ext, tuple(smalls + units), d0)
        try:
            W.check_hypothesis()
        except HypothesisViolated:
            continue
        return W


def random_spectral_model(ctx: Context, rng: random.Random, m: int, d: int) -> ValuedLattice:
    """u^(e_i) (a_i + b_i u) with random shifts e_i in {0, 1, 2}; no hypothesis imposed."""
    ext = ExtField(ctx, m)
    elems = ext.F.elements()
    while True:
        basis = []
        for _ in range(d):
            shift = rng.randrange(3)
            a = rng.choice([x for x in elems if x])
            b = rng.choice(elems) if rng.random() < 0.5 else 0
            basis.append(_trim([0] * shift + [a, b]))
        W = ValuedLattice(ext, tuple(sorted(basis, key=lambda x: -u_order(x))), 0)
        if len(set(W.elements())) == ext.q ** d:
            return W


# --------------------------------------------------------------------------
# inner degrees at the origin from Moore determinants (rank 3)


Poly3 = dict  # {(a, b, c): coeff in F_q}


def _moore_poly(F: FiniteField, exps: Sequence[int]) -> Poly3:
    """det of rows (w_i^e for e in exps) as a polynomial in w_1, w_2, w_3."""
    out: Poly3 = {}
    for perm in permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        mono = [0, 0, 0]
        for row, col in enumerate(perm):
            mono[row] += exps[col]
        key = tuple(mono)
        c = 1 if sign > 0 else F.neg(1)
        out[key] = F.add(out.get(key, 0), c)
        if not out[key]:
            del out[key]
    return out


def _grlex(mono: tuple) -> tuple:
    return (sum(mono), mono)


def divide_linear(F: FiniteField, f: Poly3, form: Sequence[int]) -> tuple[Poly3, Poly3]:
    """Long division of f by the linear form sum c_i w_i (graded lex); (quotient, remainder)."""
    lead = next(i for i, c in enumerate(form) if c)
    inv = F.inv(form[lead])
    rest = dict(f)
    quot: Poly3 = {}
    rem: Poly3 = {}
    while rest:
        mono = max(rest, key=_grlex)
        c = rest.pop(mono)
        if mono[lead] == 0:
            rem[mono] = c
            continue
        qm = list(mono)
        qm[lead] -= 1
        qm = tuple(qm)
        qc = F.mul(c, inv)
        quot[qm] = F.add(quot.get(qm, 0), qc)
        for i, fc in enumerate(form):
            if fc and i != lead:
                m2 = list(qm)
                m2[i] += 1
                m2 = tuple(m2)
                val = F.sub(rest.get(m2, 0), F.mul(qc, fc))
                if val:
                    rest[m2] = val
                else:
                    rest.pop(m2, None)
    return {k: v for k, v in quot.items() if v}, rem


def poly_degree(f: Poly3) -> int:
    return max(sum(m) for m in f)


def moore_minor_poly(ctx: Context, k: int) -> Poly3:
    """M^(k) in rank 3: the Moore matrix with the q^k column removed from 0..3."""
    if ctx.r != 3:
        raise ValidationError("Moore-minor inner degrees are implemented for r = 3")
    if k not in (1, 2):
        raise ValidationError("k must be 1 or 2")
    q = ctx.q
    exps = [q ** i for i in range(4) if i != k]
    return _moore_poly(ctx.field, exps)


def inner_degree_via_moore(ctx: Context, k: int) -> int:
    """deg M^(k) minus the q^2 + q + 1 simple boundary zeros."""
    if ctx.q not in (2, 3):
        raise ValidationError("Moore-minor inner degrees are limited to q in {2, 3}")
    F = ctx.field
    f = moore_minor_poly(ctx, k)
    deg = poly_degree(f)
    forms = projective_points(F, 3)
    for form in forms:
        f, rem = divide_linear(F, f, form)
        if rem:
            raise DivisibilityFailure(f"M^({k}) is not divisible by the form {form}")
    for form in forms:
        if not divide_linear(F, f, form)[1]:
            raise DivisibilityFailure(f"M^({k}) has a multiple zero along {form}")
    return deg - len(forms)
