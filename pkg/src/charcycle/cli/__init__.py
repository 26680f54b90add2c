"""Command-line front end.

    charcycle JOB [--format text|structured] [--strategy single|iterative]
              [--vertices] [--split CYCLES] [--strict] [--cache-dir DIR]
              [--output FILE] [--figures DIR | --no-figures] [-v]

JOB is a job file, ``-`` for stdin, or inline job text.  Exit status: 0 on
success, 2 for an invalid job, 3 when the engine fails, 4 when a
conditional-result warning is raised under ``--strict``.
"""

from __future__ import annotations

import argparse
import logging
import sys
import warnings
from pathlib import Path

from ..cech import SaturationWarning
from ..cycles import HolonomicityError, Localizer
from ..decompose import UnresolvedComponentError
from ..hilbert import NotAssociatedError
from .cache import CacheWarning, DiskCache, cache_key
from .jobs import COMMANDS, JobSpec, JobSyntaxError, parse_cycle, parse_job
from .report import SCHEMA, Report, read_report, run

__all__ = [
    "COMMANDS",
    "CacheWarning",
    "DiskCache",
    "JobSpec",
    "JobSyntaxError",
    "Report",
    "SCHEMA",
    "cache_key",
    "main",
    "parse_cycle",
    "parse_job",
    "read_report",
    "run",
]

EXIT_OK, EXIT_PARSE, EXIT_ENGINE, EXIT_STRICT = 0, 2, 3, 4

ENGINE_ERRORS = (UnresolvedComponentError, HolonomicityError, NotAssociatedError, ArithmeticError)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charcycle", description="Characteristic cycles of localizations and local cohomology.")
    ap.add_argument("job", help="job file, '-' for stdin, or inline job text")
    ap.add_argument("--format", choices=("text", "structured"), help="output format (default: text)")
    ap.add_argument("--strategy", choices=("single", "iterative"), help="localization strategy (default: iterative)")
    ap.add_argument("--vertices", action="store_true", help="dump every hypercube vertex")
    ap.add_argument("--split", metavar="CYCLES", help="direct-sum split of the module, parts separated by '|'")
    ap.add_argument("--strict", action="store_true", help="treat conditional-result warnings as errors")
    ap.add_argument("--cache-dir", metavar="DIR", help="persist component localizations here")
    ap.add_argument("--output", "-o", metavar="FILE", help="write the report here instead of stdout")
    fig = ap.add_mutually_exclusive_group()
    fig.add_argument("--figures", metavar="DIR", help="directory for figures (default: next to --output)")
    fig.add_argument("--no-figures", action="store_true", help="do not render figures")
    ap.add_argument("--method", choices=("limit", "divisor"), default="limit", help=argparse.SUPPRESS)
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return ap


def _job_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    path = Path(arg)
    if "\n" not in arg and ";" not in arg and path.is_file():
        return path.read_text(encoding="utf-8")
    return arg


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)
    try:
        job = parse_job(_job_text(args.job), strategy=args.strategy, format=args.format, split=args.split)
    except JobSyntaxError as e:
        print(e.render(), file=sys.stderr)
        return EXIT_PARSE
    store = DiskCache(args.cache_dir) if args.cache_dir else None
    localizer = Localizer(store=store, method=args.method)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            report = run(job, localizer, vertices=args.vertices)
        except ENGINE_ERRORS as e:
            _flush(caught)
            print(f"error: {job.command} failed: {type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_ENGINE
    conditional = [w for w in caught if issubclass(w.category, SaturationWarning)]
    _flush(caught)
    if conditional and args.strict:
        print("error: result is conditional (see warning above) and --strict is set", file=sys.stderr)
        return EXIT_STRICT
    out = report.render()
    if args.output:
        target = Path(args.output)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    fig_dir = args.figures or (str(Path(args.output).parent) if args.output else None)
    if fig_dir and not args.no_figures:
        from .figures import render

        stem = Path(args.output).stem if args.output else "report"
        for path in render(report, fig_dir, stem):
            logging.getLogger("charcycle").info("wrote %s", path)
    return EXIT_OK


def _flush(caught) -> None:
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
