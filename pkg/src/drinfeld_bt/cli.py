"""Command-line entry point.

Every subcommand except ``render`` prints one JSON document:
{"schema_version", "command", "params", "result"}.  Exit codes: 0 success,
2 validation error, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .core_params import ArtifactError, ConsistencyError, Context, ValidationError, make_context

SCHEMA_VERSION = "1.0"
MAX_WINDOW_BOUND = 64


def to_json(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, float):
        if obj == float("inf"):
            return "inf"
        if obj == float("-inf"):
            return "-inf"
        return obj
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [to_json(x) for x in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [to_json(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _coords(text: str, ctx: Context) -> list[Fraction]:
    """Comma-separated coordinates; a missing trailing 0 is supplied."""
    try:
        xs = [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad coordinate list {text!r}") from exc
    if len(xs) == ctx.r - 1:
        xs.append(Fraction(0))
    if len(xs) != ctx.r:
        raise ValidationError(f"expected {ctx.r} coordinates (or {ctx.r - 1}), got {len(xs)}")
    return xs


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"bad integer list {text!r}") from exc


def _drop_last(n: Sequence[int]) -> list[int]:
    return list(n[:-1])


def _bound(b: int) -> int:
    if not 1 <= b <= MAX_WINDOW_BOUND:
        raise ValidationError(f"bound must be in 1..{MAX_WINDOW_BOUND}")
    return b


# --------------------------------------------------------------------------
# subcommands


def cmd_charseq(ctx: Context, args) -> Any:
    from .weyl_complex import characteristic_sequence

    seq = characteristic_sequence(ctx, _coords(args.x, ctx), args.count)
    return [{"s": e.symbol.s, "i": e.symbol.i, "lognorm": e.lognorm, "cycle": e.cycle_index} for e in seq]


def cmd_wk(ctx: Context, args) -> Any:
    from .coefficient_forms import wprime_membership
    from .weyl_complex import window_vertices, wk_window

    bound = _bound(args.bound)
    if args.d is None:
        verts = sorted(wk_window(ctx, args.k, bound))
    else:
        verts = [n for n in window_vertices(ctx.r, bound) if wprime_membership(ctx, n, args.d, args.k)]
    return {"vertices": [_drop_last(n) for n in verts]}


def cmd_norm(ctx: Context, args) -> Any:
    from .alpha_norms import log_alpha_norm_point
    from .coefficient_forms import log_coeff_norm

    x = _coords(args.x, ctx)
    if args.kind == "alpha":
        return {"log_norm": log_alpha_norm_point(ctx, x, args.k)}
    if args.d is None:
        raise ValidationError("coefficient forms need --d")
    return {"log_norm": log_coeff_norm(ctx, x, args.d, args.k)}


def _arrow_json(ctx: Context, f, e) -> dict:
    from .vanderput import vdp

    return {
        "direction": list(e.direction),
        "target_weyl_rep": _drop_last(e.target.reduction.weyl_rep),
        "vdp": vdp(ctx, f, e),
    }


def cmd_vdp(ctx: Context, args) -> Any:
    from .building import Arrow, direction_vector, shift_toward, standard_vertex
    from .core_params import normalize_projective
    from .vanderput import FormSpec
    from .weyl_complex import integral_point

    f = FormSpec.parse(args.form)
    origin_txt, _, dir_txt = args.edge.partition("/")
    n = integral_point(ctx, _coords(origin_txt, ctx))
    v = standard_vertex(ctx, n)
    if dir_txt:
        c = _ints(dir_txt)
        if len(c) != ctx.r or any(not 0 <= a < ctx.q for a in c):
            raise ValidationError(f"direction needs {ctx.r} entries in 0..{ctx.q - 1}")
        c = normalize_projective(ctx.field, c)
        arrows = [Arrow(v, shift_toward(ctx, v, direction_vector(ctx, v, c)), c)]
    else:
        from .building import arrows_type1

        arrows = arrows_type1(ctx, v)
    return {"origin": _drop_last(n), "arrows": [_arrow_json(ctx, f, e) for e in arrows]}


def cmd_inner_degree(ctx: Context, args) -> Any:
    from .vanderput import FormSpec, inner_degree

    f = FormSpec.parse(args.form)
    return {"inner_degree": inner_degree(ctx, f, _coords(args.vertex, ctx))}


def cmd_case_study(ctx: Context, args) -> Any:
    from .vanderput import case_study_report

    rep = case_study_report(ctx, bound=args.bound)
    for row in rep["vertices"]:
        row["vertex"] = row["vertex"][:-1]
    return rep


def cmd_verify(ctx: Context, args) -> Any:
    from .verification import verify_suite

    return verify_suite(args.suite)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="field size, a prime power (default 2)")
    common.add_argument("--r", type=int, default=3, help="rank, at least 2 (default 3)")

    p = argparse.ArgumentParser(prog="drinfeld-bt", description="Building invariants of Drinfeld modular forms.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("charseq", parents=[common], help="characteristic sequence at x")
    s.add_argument("--x", required=True)
    s.add_argument("--count", type=int, required=True)
    s.set_defaults(func=cmd_charseq)

    s = sub.add_parser("wk", parents=[common], help="vertices of W(k), or W'_d(k) with --d")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--d", type=int)
    s.add_argument("--bound", type=int, required=True)
    s.set_defaults(func=cmd_wk)

    s = sub.add_parser("norm", parents=[common], help="log_q of the spectral norm at x")
    s.add_argument("kind", choices=["alpha", "coeff"])
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--d", type=int)
    s.add_argument("--x", required=True)
    s.set_defaults(func=cmd_norm)

    s = sub.add_parser("vdp", parents=[common], help="van der Put transform on type-1 arrows")
    s.add_argument("--form", required=True, help="alpha:K or coeff:K:D")
    s.add_argument("--edge", required=True, help="origin vertex, optionally /direction, e.g. 0,0,0/0,0,1")
    s.set_defaults(func=cmd_vdp)

    s = sub.add_parser("inner-degree", parents=[common], help="local inner degree at a vertex")
    s.add_argument("--form", required=True)
    s.add_argument("--vertex", required=True)
    s.set_defaults(func=cmd_inner_degree)

    s = sub.add_parser("case-study", parents=[common], help="orbits and inner degrees of alpha_2 in rank 3")
    s.add_argument("--bound", type=int, default=4)
    s.set_defaults(func=cmd_case_study)

    s = sub.add_parser("render", parents=[common], help="SVG or ASCII picture of a window (r = 3)")
    s.add_argument("--mode", required=True, help="wk:K, wprime:D:K, alpha_norm:K or inner_degree:K")
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--format", choices=["svg", "ascii"], default="svg")
    s.add_argument("--output", help="write to this file instead of stdout")
    s.set_defaults(func=None)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    s.add_argument("--suite", default="all", choices=["weyl", "norms", "vdp", "coeff", "oracle", "all"])
    s.set_defaults(func=cmd_verify)
    return p


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ctx = make_context(args.q, args.r)
        if args.command == "render":
            from .render import render_chamber

            doc = render_chamber(ctx, args.mode, args.bound, args.format)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(doc)
            else:
                sys.stdout.write(doc)
            return 0
        result = args.func(ctx, args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 3
    except ArtifactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "params": _params(args), "result": to_json(result)}
    print(json.dumps(doc, sort_keys=True))
    if args.command == "verify" and not result["passed"]:
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
