#!/usr/bin/env python3
"""
Command-line entry point for the two-point function toolkit.

Usage:
    python qp.py verify --suite series --order 20 --kmax 12
    python qp.py verify --suite maps --faces 5 --json
    python qp.py series --target h --order 6 --format csv
    python qp.py maps --faces 2 --what slices --out maps/

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
arguments.
"""

import argparse
import logging
import sys

from verify import config
from verify.checks import SUITES, run_suite
from verify.emit import FORMATS, MAP_KINDS, TARGETS, emit_maps, emit_series

logger = logging.getLogger("qp")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qp", description="Exact two-point function of quadrangulations")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run acceptance checks")
    verify.add_argument("--suite", choices=SUITES, default="all")
    verify.add_argument("--order", type=int, default=config.QP_DEFAULT_ORDER, help="Series order N")
    verify.add_argument("--kmax", type=int, default=config.QP_DEFAULT_KMAX, help="Largest index K")
    verify.add_argument("--faces", type=int, default=config.QP_DEFAULT_FACES, help="Faces n for map checks")
    verify.add_argument("--seed", type=int, default=config.QP_DEFAULT_SEED, help="Seed for random series")
    verify.add_argument("--workers", type=int, default=config.QP_WORKERS)
    verify.add_argument("--extended", action="store_true", help="Allow faces up to QP_MAX_FACES")
    verify.add_argument("--json", action="store_true", help="Print the JSON report instead of the table")
    verify.add_argument("--out", help="Also write the JSON report to this path")

    series = sub.add_parser("series", help="Write a coefficient table")
    series.add_argument("--target", choices=TARGETS, required=True)
    series.add_argument("--order", type=int, default=config.QP_DEFAULT_ORDER)
    series.add_argument("--kmax", type=int, default=config.QP_DEFAULT_KMAX)
    series.add_argument("--format", choices=FORMATS, help="csv by default, json for the kernel bundle")
    series.add_argument("--out", help="Output file (default: stdout)")

    maps = sub.add_parser("maps", help="Export maps, slices or dividing lines as DOT")
    maps.add_argument("--faces", type=int, default=2)
    maps.add_argument("--what", choices=MAP_KINDS, default="all")
    maps.add_argument("--format", choices=("dot",), default="dot")
    maps.add_argument("--out", default="maps", help="Output directory")
    return parser


def _verify(args: argparse.Namespace) -> int:
    report = run_suite(
        suite=args.suite,
        order=args.order,
        kmax=args.kmax,
        faces=args.faces,
        seed=args.seed,
        workers=args.workers,
        extended=args.extended,
    )
    print(report.to_json() if args.json else report.to_table())
    if args.out:
        with open(args.out, "w") as f:
            f.write(report.to_json() + "\n")
    return report.exit_code


def _series(args: argparse.Namespace) -> int:
    fmt = args.format or ("json" if args.target == "kernel" else "csv")
    text = emit_series(args.target, args.order, args.kmax, fmt, args.out)
    if not args.out:
        sys.stdout.write(text)
    return 0


def _maps(args: argparse.Namespace) -> int:
    written = emit_maps(args.faces, args.what, args.out)
    print(f"wrote {len(written)} files to {args.out}")
    return 0


COMMANDS = {"verify": _verify, "series": _series, "maps": _maps}


def main(argv=None) -> int:
    """Parse arguments, dispatch, and map errors to exit codes."""
    logging.basicConfig(
        level=getattr(logging, config.QP_LOG_LEVEL, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValueError as e:
        logger.error("%s", e)
        print(f"qp {args.command}: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        logger.error("cannot write output: %s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
