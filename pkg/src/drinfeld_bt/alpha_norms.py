"""log_q of spectral norms of the para-Eisenstein series alpha_k on W.

At a vertex n the value is -(q-1) * sum_{j<=k} q^(j-1) c_j, with c_j the
log-norm of the j-th term of the characteristic sequence of n.  On W(Q) the
function is affine on each simplex, so rational points are interpolated from
the vertices of their carrier simplex.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .core_params import Context, ValidationError, floor_frac
from .weyl_complex import _sequence, integral_point, weyl_point

# ||E_k||_x = 1 on all of W, so its log is constant 0.
ORTHO_EISENSTEIN_LOG_NORM = Fraction(0)


def _check_k(k: int) -> None:
    if k < 1:
        raise ValidationError("k must be positive")


@lru_cache(maxsize=1 << 16)
def _alpha_vertex(q: int, n: tuple, k: int) -> Fraction:
    seq = _sequence(tuple(map(Fraction, n)), k)
    return -(q - 1) * sum(q ** j * e.lognorm for j, e in enumerate(seq))


def log_alpha_norm_vertex(ctx: Context, n: Sequence, k: int) -> Fraction:
    _check_k(k)
    return _alpha_vertex(ctx.q, integral_point(ctx, n), k)


def carrier_simplex(x: Sequence[Fraction]) -> list[tuple[tuple[int, ...], Fraction]]:
    """Vertices of the smallest simplex containing x with barycentric weights.

    Uses the type-A alcove structure: with b = floor(x) and fractional parts
    f, x = (1 - t_1) b + sum_j (t_j - t_{j+1}) (b + 1_{S_j}) where
    t_1 > t_2 > ... are the distinct positive values of f and
    S_j = {i : f_i >= t_j}.  Zero weights are dropped.
    """
    base = tuple(floor_frac(c) for c in x)
    frac = [c - b for c, b in zip(x, base)]
    levels = sorted({f for f in frac if f > 0}, reverse=True)
    out = []
    w0 = 1 - (levels[0] if levels else 0)
    if w0:
        out.append((base, w0))
    for j, t in enumerate(levels):
        nxt = levels[j + 1] if j + 1 < len(levels) else Fraction(0)
        vert = tuple(b + (1 if f >= t else 0) for b, f in zip(base, frac))
        out.append((vert, t - nxt))
    return out


def log_alpha_norm_point(ctx: Context, x: Sequence, k: int) -> Fraction:
    _check_k(k)
    x = weyl_point(ctx, x)
    return sum(w * _alpha_vertex(ctx.q, v, k) for v, w in carrier_simplex(x))


def alpha_constant_log(ctx: Context, k: int) -> Fraction:
    """Value on the deep chamber n_{r-1} >= k."""
    _check_k(k)
    q = ctx.q
    return Fraction(q * (q ** k - 1) // (q - 1) - k * q ** k)


def strictness_threshold(n: Sequence[int]) -> int:
    """sup{i : n_{r-i+1} = 0}: beyond it log||alpha_k||_n strictly decreases."""
    r = len(n)
    return max(i for i in range(1, r + 1) if n[r - i] == 0)
