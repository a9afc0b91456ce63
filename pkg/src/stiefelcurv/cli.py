"""Command-line front end: ``stiefelcurv <command> ...`` or ``python -m stiefelcurv``."""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import blockfile
from .curvature import sectional_curvature
from .errors import ManifoldError, UsageError, VerificationError
from .experiments import (
    probe_conjecture,
    run_exp1,
    run_exp2,
    run_exp3_mix,
    run_exp3_surface,
)
from .extremizers import (
    ExtremizerKind,
    build_extremizer,
    closed_geodesic_st42,
    geodesic_length,
    injectivity_lower_bound,
    verify_attainment,
)
from .inequalities import (
    euclidean_bound_grid,
    skew_commutator_bound,
    submult_bound,
    verify_bound_fn_max,
    wu_chen_refined,
)
from .output import FORMATS, emit, render
from .tangents import (
    GrassmannTangent,
    SkewTangent,
    StiefelTangent,
    random_tangent_pair,
    random_skew,
)

SLACK_TOL = 1e-12


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _matrix(a) -> list:
    return np.asarray(a).tolist()


def _tangent_dict(t) -> dict:
    if isinstance(t, SkewTangent):
        return {"X": _matrix(t.x)}
    if isinstance(t, StiefelTangent):
        return {"A": _matrix(t.a), "B": _matrix(t.b)}
    return {"B": _matrix(t.b)}



def _tangents_from_file(manifold: str, path: str):
    blocks = blockfile.require(blockfile.read_blocks(path), manifold)
    if manifold == "so":
        return SkewTangent(blocks[0]), SkewTangent(blocks[1])
    if manifold == "stiefel":
        return StiefelTangent(blocks[0], blocks[1]), StiefelTangent(blocks[2], blocks[3])
    return GrassmannTangent(blocks[0]), GrassmannTangent(blocks[1])


def cmd_curvature(args) -> int:
    if args.input:
        x, y = _tangents_from_file(args.manifold, args.input)
        for label, want in (("n", args.n), ("p", args.p)):
            have = x.n if label == "n" else getattr(x, "p", x.n)
            if want is not None and want != have:
                raise UsageError(f"--{label} {want} does not match the input blocks ({label}={have})")
        report = sectional_curvature(args.manifold, args.metric, x, y)
        source = {"input": args.input}
    else:
        if args.n is None:
            raise UsageError("--n is required without --input")
        pair = random_tangent_pair(args.manifold, args.metric, args.n, args.p, args.seed)
        report = sectional_curvature(args.manifold, args.metric, pair.first, pair.second)
        source = {"seed": args.seed}
    out = report.to_dict()
    out["source"] = source
    _print_json(out)
    return 0



def cmd_extremizer(args) -> int:
    kind = ExtremizerKind(args.kind)
    pair = build_extremizer(kind, args.n, args.p)
    out = {"kind": kind.value, "metric": pair.metric.value, "dims": list(pair.dims),
           "gram_residual": pair.gram_residual,
           "first": _tangent_dict(pair.first), "second": _tangent_dict(pair.second)}
    if args.verify:
        att = verify_attainment(kind, args.n, args.p)
        out.update(expected=att.expected, computed=att.computed, passed=att.passed)
    _print_json(out)
    if args.verify and not out["passed"]:
        raise VerificationError(f"{kind.value}: expected {out['expected']}, computed {out['computed']}")
    return 0



def cmd_bounds(args) -> int:
    if args.which == "appendixA":
        (a1, a2), value = verify_bound_fn_max(args.grid)
        ok = a1 == 0.0 and a2 == 0.0 and abs(value - 1.25) <= SLACK_TOL
        _print_json({"which": "appendixA", "grid": args.grid, "argmax": [a1, a2], "max": value, "passed": ok})
        if not ok:
            raise VerificationError("canonical bound function maximum is not 1.25 at (0, 0)")
    elif args.which == "euclidean":
        res = euclidean_bound_grid(args.grid)
        ok = abs(res["lower_min"] + 0.5) <= SLACK_TOL and abs(res["upper_max"] - 1.0) <= SLACK_TOL
        _print_json({"which": "euclidean", "grid": args.grid, **res, "passed": ok})
        if not ok:
            raise VerificationError("Euclidean bound functions do not reach -0.5 and 1")
    else:
        b = injectivity_lower_bound(args.metric, args.geodesic_length)
        _print_json({"which": "injectivity", "metric": args.metric, "value": b.value,
                     "curvature_bound": b.curvature_bound, "geodesic_evaluated": b.geodesic_evaluated})
    return 0



def _random_pair(rng, which: str, m: int, p: int):
    if which == "skew-commutator":
        return random_skew(rng, p), random_skew(rng, p)
    if which == "submult":
        return random_skew(rng, p), rng.standard_normal((p, m))
    return rng.standard_normal((m, p)), rng.standard_normal((m, p))


def cmd_inequality(args) -> int:
    if args.fuzz < 1:
        raise UsageError("--fuzz must be >= 1")
    rng = np.random.default_rng(args.seed)
    worst, violations = math.inf, 0
    refined_above_classic = 0
    for _ in range(args.fuzz):
        a, b = _random_pair(rng, args.which, args.m, args.p)
        if args.which == "skew-commutator":
            reports = [skew_commutator_bound(a, b)]
        elif args.which == "submult":
            reports = [submult_bound(a, b)]
        else:
            wc = wu_chen_refined(a, b)
            reports = list(wc.classic if args.which == "wu-chen" else wc.refined)
            if wc.refined[0].rhs > wc.classic[0].rhs + SLACK_TOL:
                refined_above_classic += 1
        for r in reports:
            worst = min(worst, r.slack)
            violations += r.slack < -SLACK_TOL
    out = {"which": args.which, "trials": args.fuzz, "seed": args.seed, "m": args.m, "p": args.p,
           "min_slack": worst, "violations": int(violations)}
    if args.which == "refined":
        out["refined_rhs_above_classic"] = refined_above_classic
        violations += refined_above_classic
    _print_json(out)
    if violations:
        raise VerificationError(f"{violations} inequality violations")
    return 0



def _p_values(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _or(value, default):
    return default if value is None else value


def cmd_experiment(args) -> int:
    name = args.name
    if name == "exp1":
        records = run_exp1(_or(args.n, 20), _or(args.p, 10), _or(args.steps, 50), args.transpose_b1)
    elif name == "exp2":
        records = run_exp2(args.p_values, _or(args.trials, 100), args.seed, args.allow_large)
    elif name == "exp3-surface":
        records = run_exp3_surface(_or(args.grid, 50))
    elif name == "exp3-mix":
        records = run_exp3_mix(_or(args.steps, 100))
    else:
        probe = probe_conjecture(_or(args.n, 4), _or(args.trials, 100_000), args.seed)
        records = [probe.record()]
        if not (probe.lower_bound_holds and probe.upper_bound_holds):
            emit_or_print(records, args)
            raise VerificationError("conjecture probe violated a proven bound")
    emit_or_print(records, args)
    return 0


def emit_or_print(records, args) -> None:
    if args.out:
        emit(records, args.format, args.out)
    else:
        sys.stdout.write(render(records, args.format))



def cmd_geodesic(args) -> int:
    c0, c1 = closed_geodesic_st42(0.0), closed_geodesic_st42(1.0)
    length = geodesic_length(args.samples)
    out = {"curve": "st42", "samples": args.samples, "length": length,
           "length_error": abs(length - 2 * math.pi), "closure_error": float(np.linalg.norm(c1 - c0))}
    _print_json(out)
    return 0



def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stiefelcurv", description="Sectional curvature of SO(n), St(n,p), Gr(n,p).")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("curvature", help="curvature of a random or file-supplied tangent plane")
    c.add_argument("--manifold", choices=["so", "stiefel", "grassmann"], required=True)
    c.add_argument("--metric", choices=["canonical", "euclidean"], default="canonical")
    c.add_argument("--n", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--input", help="block file with the two tangents")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_curvature)

    e = sub.add_parser("extremizer", help="build an extremal tangent plane")
    e.add_argument("--kind", choices=[k.value for k in ExtremizerKind], required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--p", type=int)
    e.add_argument("--verify", action="store_true")
    e.set_defaults(func=cmd_extremizer)

    b = sub.add_parser("bounds", help="scalar curvature bounds")
    b.add_argument("--which", choices=["appendixA", "euclidean", "injectivity"], required=True)
    b.add_argument("--grid", type=int, default=400)
    b.add_argument("--geodesic-length", type=float)
    b.add_argument("--metric", choices=["canonical", "euclidean"], default="canonical")
    b.set_defaults(func=cmd_bounds)

    i = sub.add_parser("inequality", help="fuzz a matrix inequality")
    i.add_argument("--which", choices=["wu-chen", "refined", "skew-commutator", "submult"], required=True)
    i.add_argument("--fuzz", type=int, default=1000)
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--m", type=int, default=5, help="rows of the random factors")
    i.add_argument("--p", type=int, default=4, help="columns / skew size")
    i.set_defaults(func=cmd_inequality)

    x = sub.add_parser("experiment", help="run a curvature experiment")
    x.add_argument("name", choices=["exp1", "exp2", "exp3-surface", "exp3-mix", "conjecture"])
    x.add_argument("--out")
    x.add_argument("--format", choices=FORMATS, default="csv")
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--trials", type=int)
    x.add_argument("--n", type=int)
    x.add_argument("--p", type=int)
    x.add_argument("--steps", type=int)
    x.add_argument("--grid", type=int)
    x.add_argument("--p-values", type=_p_values, default=[2, 4, 8, 16, 32])
    x.add_argument("--allow-large", action="store_true")
    x.add_argument("--transpose-b1", action="store_true")
    x.set_defaults(func=cmd_experiment)

    g = sub.add_parser("geodesic", help="closed geodesic diagnostics")
    g.add_argument("curve", choices=["st42"])
    g.add_argument("--samples", type=int, default=10_000)
    g.set_defaults(func=cmd_geodesic)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ManifoldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return UsageError.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
