"""cli - Command-Line Front End.

    ballpark count  --matrix A.txt --radius 2 [--center 0.1,0.2]
    ballpark bound  --dim 3 --delta 0.5 --radius 1
    ballpark verify --matrix A.txt --radius 3 [--delta 0.5]
    ballpark sweep  --trials 1000 --seed 42 [--format structured]
    ballpark poisson-check --matrix A.txt [--bandwidth 0.5] [--trunc-radius 200]

stdout carries only data: CSV (one header line) or JSON lines. Logging
goes to stderr.

Exit codes:
    0  success
    1  an inequality trial failed (verify, sweep) or a Poisson check failed
    2  bad input (arguments, matrix file, settings, support, box)
    3  rank-deficient matrix
    4  u_nu denominator not positive
    5  delta * |A| > 1
    6  predicted point count above the ceiling
"""

import argparse
import csv
import dataclasses
import json
import logging
import math
import sys
from typing import Optional, Sequence, TextIO

from . import crucible, fence, headcount, knobs, scaffold
from .mishaps import (
    BallparkError,
    CountOverflowError,
    HypothesisViolationError,
    PositivityError,
    RankDeficiencyError,
)

logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_RANK = 3
EXIT_POSITIVITY = 4
EXIT_HYPOTHESIS = 5
EXIT_OVERFLOW = 6

_EXIT_CODES = (
    (HypothesisViolationError, EXIT_HYPOTHESIS),
    (PositivityError, EXIT_POSITIVITY),
    (RankDeficiencyError, EXIT_RANK),
    (CountOverflowError, EXIT_OVERFLOW),
)


def exit_code_for(error: BallparkError) -> int:
    for kind, code in _EXIT_CODES:
        if isinstance(error, kind):
            return code
    return EXIT_BAD_INPUT


def _fmt(value: float) -> str:
    return format(value, ".15g")


def parse_center(text: str) -> tuple[float, ...]:
    """Comma-separated reals, e.g. '0.25,0.5'."""
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"center must be comma-separated reals, got {text!r}")
    if not values or not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"center must be comma-separated finite reals, got {text!r}")
    return values


def _write_csv(out: TextIO, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _write_json(out: TextIO, objects: Sequence[dict]) -> None:
    for obj in objects:
        out.write(json.dumps(obj, sort_keys=False) + "\n")


def _load_basis(args: argparse.Namespace, settings: knobs.Settings) -> scaffold.LatticeBasis:
    matrix = scaffold.load_matrix(args.matrix)
    return scaffold.build_basis(matrix, rank_tol=settings.rank_tol)


def _query(args: argparse.Namespace, basis: scaffold.LatticeBasis, settings: knobs.Settings) -> headcount.BallQuery:
    center = args.center if args.center is not None else (0.0,) * basis.dim
    tol = args.boundary_tol if args.boundary_tol is not None else settings.boundary_tol(args.radius)
    return headcount.BallQuery(radius=args.radius, center=center, boundary_tol=tol)


def _output_format(args: argparse.Namespace, default: str) -> str:
    return args.format or default


def cmd_count(args: argparse.Namespace, settings: knobs.Settings, out: TextIO) -> int:
    basis = _load_basis(args, settings)
    query = _query(args, basis, settings)
    result = headcount.count_ball(basis, query, ceiling=settings.count_ceiling)
    record = result.to_dict()
    if _output_format(args, settings.output_format) == "structured":
        _write_json(out, [record])
    else:
        _write_csv(out, list(record), [[str(v) if isinstance(v, int) else _fmt(v) for v in record.values()]])
    return EXIT_OK


def cmd_bound(args: argparse.Namespace, settings: knobs.Settings, out: TextIO) -> int:
    value = fence.u_nu(fence.BoundParams(dim_n=args.dim, delta=args.delta, radius=args.radius))
    record = {"N": args.dim, "delta": args.delta, "R": args.radius, **value.to_dict()}
    if _output_format(args, settings.output_format) == "structured":
        _write_json(out, [record])
    else:
        _write_csv(out, list(record), [[str(args.dim)] + [_fmt(v) for v in list(record.values())[1:]]])
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: knobs.Settings, out: TextIO) -> int:
    basis = _load_basis(args, settings)
    delta = args.delta if args.delta is not None else scaffold.op_norm_upper_delta(basis)
    record = crucible.verify_theorem(
        basis, delta, _query(args, basis, settings),
        slack_rel=settings.slack_rel,
        hypothesis_tol=settings.hypothesis_tol,
        ceiling=settings.count_ceiling,
    )
    if _output_format(args, settings.output_format) == "structured":
        _write_json(out, [record.to_dict()])
    else:
        _write_csv(out, crucible.csv_header(basis.dim), [record.to_row()])
    return EXIT_OK if record.passed else EXIT_FAILED


def cmd_sweep(args: argparse.Namespace, settings: knobs.Settings, out: TextIO) -> int:
    overrides = {
        "trials": args.trials,
        "seed": args.seed,
        "n_min": args.n_min,
        "n_max": args.n_max,
        "workers": args.workers,
    }
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if args.delta_fraction is not None:
        overrides["delta_policy"] = knobs.DeltaPolicy.FRACTION
        overrides["delta_fraction"] = args.delta_fraction
    config = dataclasses.replace(settings.sweep, **overrides)

    records = crucible.sweep_theorem(config, settings)
    summary = crucible.summarize(records)
    if _output_format(args, config.output_format) == "structured":
        _write_json(out, [r.to_dict() for r in records] + [{"summary": summary.to_dict()}])
    else:
        _write_csv(out, crucible.csv_header(config.n_max), [r.to_row(config.n_max) for r in records])
        out.write(f"# {summary}\n")
    return EXIT_FAILED if summary.failures else EXIT_OK


def cmd_poisson(args: argparse.Namespace, settings: knobs.Settings, out: TextIO) -> int:
    basis = _load_basis(args, settings)
    delta = args.delta if args.delta is not None else scaffold.op_norm_upper_delta(basis)
    bandwidth = args.bandwidth if args.bandwidth is not None else delta / math.sqrt(basis.dim)
    center = args.center if args.center is not None else (0.0,) * basis.dim
    result = crucible.poisson_check(basis, delta, center, bandwidth, args.trunc_radius)
    record = result.to_dict()
    if _output_format(args, settings.output_format) == "structured":
        _write_json(out, [record])
    else:
        row = [str(v).lower() if isinstance(v, bool) else str(v) if isinstance(v, int) else _fmt(v)
               for v in record.values()]
        _write_csv(out, list(record), [row])
    return EXIT_OK if result.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballpark",
        description="Count lattice points in balls and check the Bessel-function error bound.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr.")
    parser.add_argument("--config", default=None, help="Settings file (default: ~/.ballpark/config.json).")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=knobs.OUTPUT_FORMATS, default=None,
                     help="csv or structured (JSON lines).")

    lattice = argparse.ArgumentParser(add_help=False)
    lattice.add_argument("--matrix", required=True, help="Matrix file: one row per line, or {\"rows\": ...} JSON.")
    lattice.add_argument("--center", type=parse_center, default=None, help="Comma-separated x (default 0).")

    ball = argparse.ArgumentParser(add_help=False)
    ball.add_argument("--radius", type=float, required=True, help="Ball radius R.")
    ball.add_argument("--boundary-tol", type=float, default=None, dest="boundary_tol",
                      help="Boundary band half-width (default 1e-9 * R).")

    p = sub.add_parser("count", parents=[lattice, ball, fmt], help="Weighted lattice point count.")
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("bound", parents=[fmt], help="Evaluate omega_{N-1} u_nu(R, delta).")
    p.add_argument("--dim", type=int, required=True, help="Dimension N.")
    p.add_argument("--delta", type=float, required=True, help="delta > 0.")
    p.add_argument("--radius", type=float, required=True, help="R > 0.")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("verify", parents=[lattice, ball, fmt], help="One theorem trial.")
    p.add_argument("--delta", type=float, default=None, help="delta (default 1/|A|).")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sweep", parents=[fmt], help="Seeded randomized theorem trials.")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n-min", type=int, default=None, dest="n_min")
    p.add_argument("--n-max", type=int, default=None, dest="n_max")
    p.add_argument("--delta-fraction", type=float, default=None, dest="delta_fraction",
                   help="Use delta = f / |A| instead of 1 / |A|.")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("poisson-check", parents=[lattice, fmt], help="Poisson summation check, Fejer family.")
    p.add_argument("--delta", type=float, default=None, help="delta (default 1/|A|).")
    p.add_argument("--bandwidth", type=float, default=None, help="c (default delta / sqrt(N)).")
    p.add_argument("--trunc-radius", type=int, default=200, dest="trunc_radius")
    p.set_defaults(handler=cmd_poisson)

    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    out = out or sys.stdout
    try:
        settings = knobs.get_config(args.config)
        return args.handler(args, settings, out)
    except BallparkError as e:
        print(f"ballpark: error: {e}", file=sys.stderr)
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
