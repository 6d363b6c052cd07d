"""Exact arithmetic foundation: contexts, finite fields, (Laurent) polynomials over F_q.

Elements of F_q with q = p^e are encoded as integers 0 <= a < q whose base-p
digits are the coefficients of a polynomial in Y, reduced modulo a fixed monic
irreducible f of degree e.  The modulus is the lexicographically least
irreducible (smallest integer encoding of its lower coefficients), so encodings
are stable across runs.  The prime subfield is {0, ..., p-1}.

Rationals are ``fractions.Fraction``.  The degree of the zero polynomial and the
log-norm of a zero vector are ``NEG_INF``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

NEG_INF = float("-inf")
POS_INF = float("inf")

Rational = Fraction

# q^m guard for brute-force tables
FIELD_SIZE_GUARD = 2 ** 20


class ArtifactError(Exception):
    """Base error.  ``exit_code`` is what the CLI returns for it."""

    exit_code = 2


class ValidationError(ArtifactError):
    exit_code = 2


class ConsistencyError(ArtifactError):
    """An internal identity failed; signals a bug, never bad input."""

    exit_code = 3


class NotPrimePower(ValidationError):
    pass


class RankTooSmall(ValidationError):
    pass


class DivisionByZero(ValidationError):
    pass


class FieldTooLarge(ValidationError):
    pass


# --------------------------------------------------------------------------
# finite fields


def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    f = factorint(q)
    if len(f) != 1:
        return None
    ((p, e),) = f.items()
    return p, e


def _least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e over F_p, coefficients low -> high."""
    for code in range(p ** e):
        low = [(code // p ** i) % p for i in range(e)]
        if gf_irreducible_p([1] + low[::-1], p, ZZ):
            return tuple(low) + (1,)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """F_{p^e} with table-driven multiplication."""

    def __init__(self, p: int, e: int):
        order = p ** e
        if order > FIELD_SIZE_GUARD:
            raise FieldTooLarge(f"field of size {order} exceeds guard {FIELD_SIZE_GUARD}")
        self.p = p
        self.e = e
        self.order = order
        self.modulus = _least_irreducible(p, e)
        self._digits = [self._to_digits(a) for a in range(order)] if order <= 4096 else None
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"

    # raw polynomial arithmetic, used only while building the tables
    def _to_digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _from_digits(self, ds: Sequence[int]) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def _slow_mul(self, a: int, b: int) -> int:
        p, e, f = self.p, self.e, self.modulus
        da, db = self._to_digits(a), self._to_digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if c:
                for i in range(e + 1):
                    prod[k - e + i] = (prod[k - e + i] - c * f[i]) % p
        return self._from_digits(prod[:e])

    def _slow_pow(self, a: int, n: int) -> int:
        out = 1
        while n:
            if n & 1:
                out = self._slow_mul(out, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return out

    def _build_tables(self) -> None:
        q = self.order
        n = q - 1
        primes = list(factorint(n)) if n > 1 else []
        g = next(g for g in range(1, q) if all(self._slow_pow(g, n // l) != 1 for l in primes))
        x, exp = 1, [1]
        for _ in range(n - 1):
            x = self._slow_mul(x, g)
            exp.append(x)
        self.generator = g
        self._exp = exp + exp  # doubled to skip a modulo in mul
        self._log = [0] * q
        for i, v in enumerate(exp):
            self._log[v] = i

    # public arithmetic
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        if self._digits is not None:
            da, db = self._digits[a], self._digits[b]
            return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])
        return self._from_digits([(x + y) % self.p for x, y in zip(self._to_digits(a), self._to_digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        return self._from_digits([(-x) % self.p for x in self._to_digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in a finite field")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise DivisionByZero("0 to a negative power")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return n % self.p

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    def is_in_subfield(self, a: int, sub_order: int) -> bool:
        return self.pow(a, sub_order) == a


@lru_cache(maxsize=None)
def finite_field(p: int, e: int) -> FiniteField:
    return FiniteField(p, e)


# --------------------------------------------------------------------------
# contexts


@dataclass(frozen=True)
class Context:
    q: int
    p: int
    r: int

    @property
    def e(self) -> int:
        return _prime_power(self.q)[1]

    @property
    def field(self) -> FiniteField:
        return finite_field(self.p, self.e)


def make_context(q: int, r: int) -> Context:
    pe = _prime_power(int(q))
    if pe is None:
        raise NotPrimePower(f"q={q} is not a prime power")
    if int(r) < 2:
        raise RankTooSmall(f"r={r} must be at least 2")
    return Context(q=int(q), p=pe[0], r=int(r))


# --------------------------------------------------------------------------
# F_q-matrices (lists of rows of field integers)


def fq_rref(F: FiniteField, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in rows]
    pivots: list[int] = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][c])
        M[rank] = [F.mul(inv, x) for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[rank])]
        pivots.append(c)
        rank += 1
        if rank == len(M):
            break
    return M, pivots


def fq_rank(F: FiniteField, rows: Sequence[Sequence[int]]) -> int:
    return len(fq_rref(F, rows)[1])


def fq_kernel_vector(F: FiniteField, rows: Sequence[Sequence[int]]) -> list[int] | None:
    """A nonzero c with M c = 0, or None if M has full column rank."""
    R, pivots = fq_rref(F, rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    f = free[0]
    c = [0] * ncols
    c[f] = 1
    for i, pc in enumerate(pivots):
        c[pc] = F.neg(R[i][f])
    return c


def fq_det(F: FiniteField, rows: Sequence[Sequence[int]]) -> int:
    M = [list(r) for r in rows]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return det


def fq_inverse(F: FiniteField, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    R, pivots = fq_rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("singular matrix over F_q")
    return [row[n:] for row in R]


def fq_matmul(F: FiniteField, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    out = []
    for row in A:
        new = []
        for j in range(len(B[0])):
            acc = 0
            for k, a in enumerate(row):
                if a and B[k][j]:
                    acc = F.add(acc, F.mul(a, B[k][j]))
            new.append(acc)
        out.append(new)
    return out


def projective_points(F: FiniteField, n: int) -> list[tuple[int, ...]]:
    """P^{n-1}(F_q): representatives whose last nonzero coordinate is 1."""
    pts = []
    for v in product(F.elements(), repeat=n):
        nz = [x for x in v if x]
        if nz and nz[-1] == 1:
            pts.append(v)
    return pts


def normalize_projective(F: FiniteField, v: Sequence[int]) -> tuple[int, ...]:
    nz = [x for x in v if x]
    if not nz:
        raise DivisionByZero("zero vector has no projective class")
    inv = F.inv(nz[-1])
    return tuple(F.mul(inv, x) for x in v)


# --------------------------------------------------------------------------
# Laurent polynomials in T over F_q


class FqLaurent:
    """Finitely supported sum of c_i T^(low+i); immutable."""

    __slots__ = ("field", "low", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable[int] = (), low: int = 0):
        cs = list(coeffs)
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        end = len(cs)
        while end > start and cs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "field", field)
        if start == end:
            object.__setattr__(self, "low", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "low", low + start)
            object.__setattr__(self, "coeffs", tuple(cs[start:end]))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("immutable")

    # constructors
    @classmethod
    def monomial(cls, field: FiniteField, c: int, exp: int) -> "FqLaurent":
        return cls(field, [c], exp)

    @classmethod
    def constant(cls, field: FiniteField, c: int) -> "FqLaurent":
        return cls(field, [c], 0)

    @classmethod
    def pi_power(cls, field: FiniteField, n: int) -> "FqLaurent":
        """pi^n = T^(-n)."""
        return cls(field, [1], -n)

    # structure
    def is_zero(self) -> bool:
        return not self.coeffs

    def deg(self):
        """Largest T-exponent; NEG_INF for zero.  log_q|x| = deg x."""
        return self.low + len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def val(self):
        """Smallest T-exponent; POS_INF for zero."""
        return self.low if self.coeffs else POS_INF

    def coeff(self, k: int) -> int:
        i = k - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_poly(self) -> bool:
        return not self.coeffs or self.low >= 0

    def _like(self, other: "FqLaurent", coeffs, low) -> "FqLaurent":
        if isinstance(self, FqPoly) and isinstance(other, FqPoly):
            return FqPoly(self.field, coeffs, low)
        return FqLaurent(self.field, coeffs, low)

    # arithmetic
    def __add__(self, other: "FqLaurent") -> "FqLaurent":
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        F = self.field
        low = min(self.low, other.low)
        high = max(self.deg(), other.deg())
        out = [F.add(self.coeff(k), other.coeff(k)) for k in range(low, high + 1)]
        return self._like(other, out, low)

    def __neg__(self) -> "FqLaurent":
        F = self.field
        return self._like(self, [F.neg(c) for c in self.coeffs], self.low)

    def __sub__(self, other: "FqLaurent") -> "FqLaurent":
        return self + (-other)

    def __mul__(self, other: "FqLaurent") -> "FqLaurent":
        if not self.coeffs or not other.coeffs:
            return self._like(other, (), 0)
        F = self.field
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return self._like(other, out, self.low + other.low)

    def scale(self, c: int) -> "FqLaurent":
        F = self.field
        return self._like(self, [F.mul(c, x) for x in self.coeffs], self.low)

    def shift(self, k: int) -> "FqLaurent":
        """Multiply by T^k."""
        if isinstance(self, FqPoly) and self.coeffs and self.low + k < 0:
            return FqLaurent(self.field, self.coeffs, self.low + k)
        return self._like(self, self.coeffs, self.low + k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FqLaurent):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs and self.field is other.field

    def __hash__(self) -> int:
        return hash((self.low, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                k = self.low + i
                mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
                if not mono:
                    terms.append(str(c))
                else:
                    terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms))

    def to_json(self) -> dict:
        return {"low": self.low, "coeffs": list(self.coeffs)}


class FqPoly(FqLaurent):
    """Element of A = F_q[T]."""

    __slots__ = ()

    def __init__(self, field: FiniteField, coeffs: Iterable[int] = (), low: int = 0):
        super().__init__(field, coeffs, low)
        if self.coeffs and self.low < 0:
            raise ValidationError("FqPoly with negative exponent")

    @classmethod
    def from_coeffs(cls, field: FiniteField, coeffs: Sequence[int]) -> "FqPoly":
        return cls(field, coeffs, 0)

    def divmod(self, other: "FqPoly") -> tuple["FqPoly", "FqPoly"]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        db = other.deg()
        inv = F.inv(other.lc())
        rem = [self.coeff(k) for k in range(0, max(self.deg(), -1) + 1)] if self.coeffs else []
        quo = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                f = F.mul(c, inv)
                quo[k - db] = f
                for j in range(db + 1):
                    b = other.coeff(j)
                    if b:
                        rem[k - db + j] = F.sub(rem[k - db + j], F.mul(f, b))
        return FqPoly(F, quo), FqPoly(F, rem)


def poly_arith(a: FqPoly, b: FqPoly, op: str):
    """Ring operations in A = F_q[T]; ``op`` is add, mul or divrem."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divrem":
        return a.divmod(b)
    raise ValidationError(f"unknown polynomial operation {op!r}")


def all_polys(F: FiniteField, max_deg: int) -> list[FqPoly]:
    """Every polynomial of degree <= max_deg (including 0)."""
    if max_deg < 0:
        return [FqPoly(F)]
    return [FqPoly(F, cs) for cs in product(F.elements(), repeat=max_deg + 1)]


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)
