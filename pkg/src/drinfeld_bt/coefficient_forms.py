"""The finite model of a-torsion and the coefficient forms a_l_k.

For deg a = d and x in W(Q), the rd torsion points e_{s,i} (0 <= s < d,
1 <= i <= r) have log-norms

    log e_{s,i} = B + sum over nonzero (a_{i+1}, ..., a_r) in A^{r-i}
                      with M < B of (B - M),

B = s + x_i - d, M = max_n (deg a_n + x_n).  Everything depends only on (d, x),
never on a itself.  The sum is evaluated by counting tuples per value of M.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .alpha_norms import alpha_constant_log, log_alpha_norm_vertex
from .core_params import Context, ValidationError, floor_frac
from .weyl_complex import weyl_point, window_vertices, wk_membership


class IndexOutOfRange(ValidationError):
    pass


class KOutOfRange(ValidationError):
    pass


class RegimeViolation(ValidationError):
    pass


@dataclass(frozen=True)
class TorsionEntry:
    s: int
    i: int
    lognorm: Fraction


def _count_at_most(q: int, xs: Sequence[Fraction], v: Fraction) -> int:
    """#{(a_n) in A^len(xs) : deg a_n + x_n <= v for all n}, zero tuple included."""
    total = 1
    for xn in xs:
        if v >= xn:
            total *= q ** (floor_frac(v - xn) + 1)
    return total


@lru_cache(maxsize=1 << 16)
def _log_e(q: int, x: tuple, d: int, s: int, i: int) -> Fraction:
    B = s + x[i - 1] - d
    tail = x[i:]
    values = sorted({m + xn for xn in tail for m in range(0, floor_frac(B - xn) + 2) if m + xn < B})
    total = Fraction(B)
    below = 1  # only the zero tuple lies below the smallest candidate value
    for v in values:
        upto = _count_at_most(q, tail, v)
        total += (upto - below) * (B - v)
        below = upto
    return total


def _check_d(d: int) -> None:
    if d < 1:
        raise ValidationError("d must be positive")


def log_e_si(ctx: Context, x: Sequence, d: int, s: int, i: int) -> Fraction:
    _check_d(d)
    if not (0 <= s < d and 1 <= i <= ctx.r):
        raise IndexOutOfRange(f"(s, i) = ({s}, {i}) outside 0..{d - 1} x 1..{ctx.r}")
    return _log_e(ctx.q, weyl_point(ctx, x), d, s, i)


@lru_cache(maxsize=1 << 14)
def _torsion_seq(q: int, x: tuple, d: int) -> tuple[TorsionEntry, ...]:
    r = len(x)
    entries = [TorsionEntry(s, i, _log_e(q, x, d, s, i)) for s in range(d) for i in range(1, r + 1)]
    entries.sort(key=lambda e: (e.lognorm, -e.i, e.s))
    return tuple(entries)


def torsion_char_sequence(ctx: Context, x: Sequence, d: int) -> list[TorsionEntry]:
    _check_d(d)
    return list(_torsion_seq(ctx.q, weyl_point(ctx, x), d))


def wprime_membership(ctx: Context, x: Sequence, d: int, k: int) -> bool:
    """x in W'_d(k): the torsion lattice is k-inseparable."""
    _check_d(d)
    if not 1 <= k < ctx.r * d:
        raise KOutOfRange(f"k={k} outside 1..{ctx.r * d - 1}")
    seq = _torsion_seq(ctx.q, weyl_point(ctx, x), d)
    return seq[k - 1].lognorm == seq[k].lognorm


def log_coeff_norm(ctx: Context, x: Sequence, d: int, k: int) -> Fraction:
    """d - sum_{s<=k} (q^s - q^(s-1)) m_s with m_s the s-th torsion log-norm."""
    _check_d(d)
    if not 1 <= k <= ctx.r * d:
        raise KOutOfRange(f"k={k} outside 1..{ctx.r * d}")
    q = ctx.q
    seq = _torsion_seq(q, weyl_point(ctx, x), d)
    return d - sum((q ** s - q ** (s - 1)) * seq[s - 1].lognorm for s in range(1, k + 1))


def coeff_constant_log(ctx: Context, d: int, k: int) -> Fraction:
    """(d-k) q^k + q (q^k - 1)/(q - 1), the value on n_{r-1} >= k."""
    _check_d(d)
    if k > d:
        raise RegimeViolation(f"k={k} exceeds d={d}")
    if k < 1:
        raise KOutOfRange("k must be positive")
    q = ctx.q
    return Fraction((d - k) * q ** k + q * (q ** k - 1) // (q - 1))


def origin_closed_form(ctx: Context, d: int, k: int) -> Fraction:
    """log ||a_l_k|| at the origin: (d - s) q^k + q^r (q^(rs) - 1)/(q^r - 1), k = k0 + s r."""
    q, r = ctx.q, ctx.r
    s = k // r
    return Fraction((d - s) * q ** k + q ** r * (q ** (r * s) - 1) // (q ** r - 1))


def theorem39_verify(ctx: Context, d: int, k: int, bound: int) -> dict:
    """Compare a_l_k with alpha_k on the window n_1 <= bound (regime k <= d)."""
    from .vanderput import FormSpec, inner_degree

    _check_d(d)
    if not 1 <= k <= d:
        raise RegimeViolation(f"need 1 <= k <= d, got k={k}, d={d}")
    expected_offset = coeff_constant_log(ctx, d, k) - alpha_constant_log(ctx, k)
    membership_bad, offset_bad, degree_bad = [], [], []
    alpha, coeff = FormSpec("alpha", k), FormSpec("coeff", k, d)
    for n in window_vertices(ctx.r, bound):
        if wprime_membership(ctx, n, d, k) != wk_membership(ctx, n, k):
            membership_bad.append(n)
        off = log_coeff_norm(ctx, n, d, k) - log_alpha_norm_vertex(ctx, n, k)
        if off != expected_offset:
            offset_bad.append((n, off))
        na, nc = inner_degree(ctx, alpha, n), inner_degree(ctx, coeff, n)
        if na != nc:
            degree_bad.append((n, na, nc))
    return {
        "membership_equal": not membership_bad,
        "constant_offset": not offset_bad,
        "inner_degrees_equal": not degree_bad,
        "offset": expected_offset,
        "membership_violations": membership_bad,
        "offset_violations": offset_bad,
        "inner_degree_violations": degree_bad,
        "passed": not (membership_bad or offset_bad or degree_bad),
    }
