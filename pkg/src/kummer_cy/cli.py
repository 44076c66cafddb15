"""Command-line runner: ``kummer-cy [suite] [options]``."""

from __future__ import annotations

import argparse
import os
import sys

from .modularity import JOBS_ENV, default_jobs
from .report import UnsupportedFormatError, emit_report
from .suites import SUITES, Options, run_suite


def build_parser() -> argparse.ArgumentParser:
    defaults = Options()
    ap = argparse.ArgumentParser(
        prog="kummer-cy",
        description="Run exact verification suites and print a deterministic report.",
    )
    ap.add_argument("suite", nargs="?", default="all", choices=SUITES + ("all",))
    ap.add_argument("--p-max", type=int, default=defaults.p_max, help="largest prime for point counts")
    ap.add_argument(
        "--degree-bound",
        type=int,
        default=None,
        help=f"degree bound for invariant generation (default {defaults.z3_degree_bound} for Z3, "
        f"{defaults.z7_degree_bound} for Z7)",
    )
    ap.add_argument(
        "--calibration-split",
        type=int,
        default=defaults.calibration_split,
        help="primes up to this bound train the congruence rule; larger ones test it",
    )
    ap.add_argument("--klein-p-max", type=int, default=defaults.klein_p_max, help="largest prime for the quartic count")
    ap.add_argument("--qexp-file", default=None, help="file of q-expansion coefficients a_1 a_2 ... to compare against")
    ap.add_argument("--format", default="json", dest="fmt", help="json, markdown or csv")
    ap.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")
    ap.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    return ap


def options_from_args(ap: argparse.ArgumentParser, args) -> Options:
    if args.p_max < 5:
        ap.error("--p-max must be at least 5")
    if args.degree_bound is not None and args.degree_bound < 1:
        ap.error("--degree-bound must be positive")
    if not 2 <= args.calibration_split < args.p_max:
        ap.error("--calibration-split must lie in [2, p-max)")
    if args.klein_p_max < 2:
        ap.error("--klein-p-max must be at least 2")
    jobs = default_jobs() if args.jobs is None else args.jobs
    if jobs < 1:
        ap.error("--jobs must be positive")
    if args.qexp_file is not None and not os.path.isfile(args.qexp_file):
        ap.error(f"--qexp-file {args.qexp_file!r} does not exist")
    opts = Options(
        p_max=args.p_max,
        calibration_split=args.calibration_split,
        klein_p_max=args.klein_p_max,
        qexp_file=args.qexp_file,
        jobs=jobs,
    )
    return opts.with_degree_bound(args.degree_bound)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    opts = options_from_args(ap, args)
    if args.fmt not in ("json", "markdown", "csv"):
        ap.error(f"unsupported format {args.fmt!r}; choose json, markdown or csv")
    report = run_suite(args.suite, opts)
    try:
        data = emit_report(report, args.fmt)
    except UnsupportedFormatError as exc:
        ap.error(str(exc))
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
