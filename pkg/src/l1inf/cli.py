"""Command-line front door: project a matrix file, run sweeps, certify.

Exit codes: 0 success, 1 certification mismatch, 2 malformed input file,
3 invalid flags or flag combinations, 4 output I/O failure.  Data goes to
files or standard output; diagnostics and --stats lines go to standard
error, so pipelines stay clean.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import bench
from .core import MatrixFormatError, read_matrix, sparsity_report, write_matrix
from .oracle import certify_random_instances
from .projection import ALGORITHMS, project_ball_l1inf

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_BAD_INPUT = 2
EXIT_BAD_FLAGS = 3
EXIT_IO = 4


class _FlagError(Exception):
    """Invalid flags or flag combinations (mapped to exit code 3)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _FlagError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="l1inf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project a matrix file onto the l1,inf ball")
    p.add_argument("input", help="matrix file: first line 'n m', then n rows of m reals")
    p.add_argument("--radius", type=float, required=True, help="ball radius, >= 0")
    p.add_argument("--algo", choices=ALGORITHMS, default="inverse_total_order")
    p.add_argument("--output", default="-", help="output matrix file, '-' for stdout")
    p.add_argument("--stats", action="store_true",
                   help="print theta/sparsity/J/K/elapsed as key=value lines on stderr")

    b = sub.add_parser("bench", help="run a benchmark sweep and emit CSV")
    b.add_argument("--mode", choices=("radius", "size", "J"), default=None)
    b.add_argument("--n", default=None, help="rows: integer or comma list")
    b.add_argument("--m", default=None, help="columns: integer or comma list")
    b.add_argument("--radii", default=None,
                   help="radius list: lo:hi:log|lin:count or comma-separated values")
    b.add_argument("--radius", default=None, type=float,
                   help="single radius (size mode default: 1.0)")
    b.add_argument("--algo", default=None,
                   help="algorithm name or 'all' (default inverse_total_order)")
    b.add_argument("--seed", default=None, type=int)
    b.add_argument("--reps", default=None, type=int, help="timed repetitions per cell")
    b.add_argument("--out", default=None, help="CSV output path, '-' for stdout")
    b.add_argument("--timing-strict", action="store_true",
                   help="force sequential single-thread execution")
    b.add_argument("--workers", default=None, type=int,
                   help="worker threads for independent cells (ignored with --timing-strict)")
    b.add_argument("--verify", action="store_true",
                   help="check theta agreement across algorithms per cell")
    b.add_argument("--config", default=None,
                   help="key=value file supplying defaults for the flags above")

    c = sub.add_parser("check", help="randomized certification against the oracles")
    c.add_argument("--trials", default=1000, type=int)
    c.add_argument("--max-n", default=8, type=int)
    c.add_argument("--max-m", default=8, type=int)
    c.add_argument("--seed", default=0, type=int)
    c.add_argument("--tol", default=1e-9, type=float)
    return parser


def _cmd_project(args) -> int:
    if args.radius < 0:
        raise _FlagError("--radius must be nonnegative")
    try:
        Y = read_matrix(args.input)
    except MatrixFormatError as exc:
        print(f"l1inf: {args.input}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"l1inf: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    start = time.perf_counter_ns()
    out = project_ball_l1inf(Y, args.radius, algo=args.algo)
    elapsed_ns = time.perf_counter_ns() - start

    try:
        if args.output == "-":
            write_matrix(out.X, sys.stdout)
        else:
            write_matrix(out.X, args.output)
    except OSError as exc:
        print(f"l1inf: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.stats:
        report = sparsity_report(out.X)
        for key, value in (
            ("theta", format(out.theta, ".17g")),
            ("entry_sparsity", format(report.entry_sparsity, ".17g")),
            ("column_sparsity", format(report.column_sparsity, ".17g")),
            ("K", out.stats.K),
            ("J", out.stats.J),
            ("elapsed_ns", elapsed_ns),
        ):
            print(f"{key}={value}", file=sys.stderr)
    return EXIT_OK


def _read_config(path) -> dict[str, str]:
    values = {}
    with open(path, "r", encoding="ascii") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise _FlagError(f"config line must be key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in str(text).split(",") if tok.strip()]


def _cmd_bench(args) -> int:
    cfg_file: dict[str, str] = {}
    if args.config:
        try:
            cfg_file = _read_config(args.config)
        except OSError as exc:
            print(f"l1inf: cannot read {args.config}: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT

    def setting(name, cast, default):
        value = getattr(args, name, None)
        if value is not None:
            return value
        if name in cfg_file:
            return cast(cfg_file[name])
        return default

    mode = setting("mode", str, None)
    if mode not in ("radius", "size", "J"):
        raise _FlagError("--mode must be one of radius, size, J")
    ns = _int_list(setting("n", str, "1000"))
    ms = _int_list(setting("m", str, "1000"))
    if not ns or not ms:
        raise _FlagError("--n and --m need at least one value")
    seed = setting("seed", int, 0)
    reps = setting("reps", int, 5)
    out_path = setting("out", str, "-")
    workers = setting("workers", int, 1)
    algo_spec = setting("algo", str, "inverse_total_order")
    algos = list(ALGORITHMS) if algo_spec == "all" else [algo_spec]
    for algo in algos:
        if algo not in ALGORITHMS:
            raise _FlagError(f"unknown --algo {algo!r}")

    radii_spec = setting("radii", str, None)
    single_radius = setting("radius", float, None)
    if mode in ("radius", "J"):
        if radii_spec is None:
            raise _FlagError(f"--radii is required for --mode {mode}")
        radii = bench.parse_range_spec(str(radii_spec))
    else:
        if radii_spec is not None:
            radii = bench.parse_range_spec(str(radii_spec))
        else:
            radii = [single_radius if single_radius is not None else 1.0]

    shapes = [(n, m) for n in ns for m in ms]
    try:
        if mode == "J":
            if len(shapes) != 1:
                raise _FlagError("--mode J takes a single shape")
            pairs = bench.measure_J(shapes[0][0], shapes[0][1], radii, seed, repetitions=reps)
            payload = "entry_sparsity,J_fraction\n" + "".join(
                f"{format(s, '.17g')},{format(j, '.17g')}\n" for s, j in pairs
            )
            if out_path == "-":
                sys.stdout.write(payload)
            else:
                with open(out_path, "w", encoding="ascii") as fh:
                    fh.write(payload)
        else:
            cfg = bench.SweepConfig(
                shapes=shapes,
                radii=radii,
                algos=algos,
                seed=seed,
                repetitions=reps,
                timing_strict=args.timing_strict,
                workers=workers,
                verify=args.verify,
            )
            runner = bench.sweep_radius if mode == "radius" else bench.sweep_size
            records = runner(cfg)
            if out_path == "-":
                bench.emit_csv(records, sys.stdout)
            else:
                bench.emit_csv(records, out_path)
    except ValueError as exc:
        raise _FlagError(str(exc)) from None
    except OSError as exc:
        print(f"l1inf: cannot write {out_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_check(args) -> int:
    if args.trials < 1 or args.max_n < 1 or args.max_m < 1 or args.tol <= 0:
        raise _FlagError("check flags must be positive")
    report = certify_random_instances(
        trials=args.trials,
        max_n=args.max_n,
        max_m=args.max_m,
        seed=args.seed,
        tol=args.tol,
    )
    print(f"trials={report.trials} pass={report.trials - report.failures} "
          f"fail={report.failures}", file=sys.stderr)
    for message in report.messages:
        print(message, file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "project":
            return _cmd_project(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_check(args)
    except _FlagError as exc:
        print(f"l1inf: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
