"""Command-line interface: ``pinchkit <subcommand> ...``.

Exit codes: 0 success, 1 verification failure (or error rows in a batch),
2 usage error, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import reproduce
from .curvature import mean_curvature_sq, scalar_curvature, summarize
from .dataio import RunConfig, batch_classify, dump_point_data, load_point_data, point_to_document, render_rows
from .errors import DomainError, DimensionMismatch, InputError, PinchkitError
from .lawson_simons import OptimizerConfig, maximize_theta
from .models import clifford_minimal, einstein_torus, umbilical_sphere
from .pinching import alpha, compare_alpha_b, gamma, xu_gu_bound
from .rng import resolve_seed

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _int_range(text: str) -> range:
    parts = text.split(":")
    try:
        lo, hi = (int(parts[0]), int(parts[-1])) if len(parts) in (1, 2) else (None, None)
    except ValueError:
        lo = None
    if lo is None:
        raise UsageError(f"--k-range expects a or a:b, got {text!r}")
    return range(lo, hi + 1)


def _grid(text: str) -> list:
    parts = text.split(":")
    if len(parts) == 1:
        return [_rational(parts[0])]
    if len(parts) != 3:
        raise UsageError(f"--h-grid expects start:stop:count, got {text!r}")
    start, stop = _rational(parts[0]), _rational(parts[1])
    try:
        count = int(parts[2])
    except ValueError as exc:
        raise UsageError(f"grid count must be an integer, got {parts[2]!r}") from exc
    if count < 1:
        raise UsageError("grid count must be >= 1")
    if count == 1:
        return [start]
    return [start + (stop - start) * Fraction(i, count - 1) for i in range(count)]


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


# -- subcommands --------------------------------------------------------------------


def cmd_bounds(args) -> int:
    """alpha, b and the Xu-Gu bound on a grid; b and the comparison exist only for c = 1."""
    c = _rational(args.c)
    rows = []
    for k in _int_range(args.k_range):
        for H in _grid(args.h_grid):
            if H < 0:
                raise UsageError("H must be non-negative")
            if c == 1:
                rows.append(compare_alpha_b(args.n, k, H).as_row())
                continue
            a = alpha(args.n, k, H, c)
            rows.append({
                "n": args.n, "k": k, "H": repr(float(H)), "c": repr(float(c)),
                "alpha": repr(float(a)), "b": "n/a", "xu_gu": repr(float(xu_gu_bound(args.n, H, c))),
                "gamma_k": gamma(args.n, k), "b_minus_alpha": "n/a", "comparison": "n/a",
            })
    columns = ["n", "k", "H", "c", "alpha", "b", "xu_gu", "gamma_k", "b_minus_alpha", "comparison"]
    _emit(render_rows(rows, args.format, columns), args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    P = load_point_data(args.file)
    doc = {"file": args.file, "label": P.label, "n": P.n, "m": P.m, "c": P.c}
    doc.update(summarize(P).as_dict())
    if P.is_exact:
        doc["exact"] = {"H2": str(mean_curvature_sq(P, exact=True)),
                        "rho": str(scalar_curvature(P, exact=True))}
    _emit(_json(doc), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    tolerances = {}
    if args.detect_tol is not None:
        tolerances["detect"] = args.detect_tol
    if args.einstein_tol is not None:
        tolerances["einstein"] = args.einstein_tol
    cfg = RunConfig(seed=resolve_seed(args.seed), workers=args.workers, tolerances=tolerances, fmt=args.format,
                    optimizer=OptimizerConfig(starts=args.starts))
    report = batch_classify(args.files, args.k, cfg)
    _emit(report.render(args.format), args.out)
    if report.n_errors == len(report.rows):
        return EXIT_INPUT
    return EXIT_FAIL if report.n_errors else EXIT_OK


def cmd_optimize_theta(args) -> int:
    P = load_point_data(args.file)
    cfg = OptimizerConfig(starts=args.starts, seed=resolve_seed(args.seed))
    res = maximize_theta(P, args.q, cfg)
    _emit(_json(res.as_dict()), args.out)
    return EXIT_OK


def cmd_model(args) -> int:
    conv = _rational if args.exact else float
    c = conv(args.c)
    if args.kind == "umbilical":
        H = conv(args.H)
        P = umbilical_sphere(args.n, args.m, c, H)
        spec = {"n": args.n, "m": args.m, "c": float(c), "H": float(H)}
    else:
        r = conv(args.r)
        if args.kind == "clifford":
            if args.n % 2:
                raise UsageError("clifford needs an even --n")
            P, model = clifford_minimal(args.n // 2, r, c, args.m)
        else:
            if args.k is None:
                raise UsageError("torus needs --k")
            P, model = einstein_torus(args.n, args.k, r, c, args.m)
        spec = model.as_dict()
    if args.out:
        out = Path(args.out)
        out.write_text(dump_point_data(P))
        out.with_name(out.stem + ".spec.json").write_text(_json(spec))
    else:
        sys.stdout.write(_json({"point": point_to_document(P), "spec": spec}))
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = resolve_seed(args.seed)
    numbers = sorted(set(args.criteria)) if args.criteria else None
    if numbers and any(n not in reproduce.CRITERIA for n in numbers):
        raise UsageError(f"criteria must be in {sorted(reproduce.CRITERIA)}")
    results = reproduce.run_all(seed, args.workers, numbers)
    _emit(reproduce.render_report(results, seed), args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# -- parser -----------------------------------------------------------------------------


def _criteria(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pinchkit", description="Ricci pinching toolkit for submanifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="json", formats=("json", "csv", "markdown")):
        p.add_argument("--out", help="write to this file instead of stdout")
        p.add_argument("--format", choices=formats, default=fmt)

    p = sub.add_parser("bounds", help="tabulate alpha, b and the Xu-Gu bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-range", required=True, help="a or a:b (inclusive)")
    p.add_argument("--h-grid", required=True, help="H or start:stop:count (rationals allowed)")
    p.add_argument("--c", default="1", help="ambient curvature; b is only defined for c = 1")
    common(p, fmt="csv")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("analyze", help="curvature summary of a point-data file")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="classify one or more point-data files at split index k")
    p.add_argument("files", nargs="+")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, help="master seed (default $PINCHKIT_SEED or 0)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--starts", type=int, default=32)
    p.add_argument("--detect-tol", type=float)
    p.add_argument("--einstein-tol", type=float)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("optimize-theta", help="maximize Theta_q over q-planes")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--starts", type=int, default=32)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_optimize_theta)

    p = sub.add_parser("model", help="write a model point (and its analytic sidecar)")
    p.add_argument("kind", choices=("torus", "clifford", "umbilical"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--r", default="1")
    p.add_argument("--c", default="1")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--H", default="1", help="mean curvature (umbilical only)")
    p.add_argument("--exact", action="store_true", help="rational mode: --r, --c, --H parsed as p/q")
    p.add_argument("--out", help="point file; the sidecar goes to <stem>.spec.json")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("verify-paper", help="run the acceptance suite and print a pass/fail table")
    p.add_argument("--seed", type=int, help="master seed (default $PINCHKIT_SEED or 0)")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--criteria", type=_criteria, help="comma-separated subset, e.g. 1,2,8")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be >= 1")
        return args.func(args)
    except InputError as exc:
        print(f"pinchkit: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UsageError, DomainError, DimensionMismatch, ValueError) as exc:
        print(f"pinchkit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PinchkitError as exc:
        print(f"pinchkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
