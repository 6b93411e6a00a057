"""
Command-line front end.

Usage:
    frobenius_cli.py delta -p 2 -n 2 "x1 + x2; x1*x2"
    frobenius_cli.py wronskian -p 3 -n 1 --order 2 "x + x^2"
    frobenius_cli.py represent -p 2 -n 2 --poly "x1" --file map.txt
    frobenius_cli.py verify prop2 -p 2 -n 2 --seed 42 --trials 50 --output json
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from config import get_config
from src.cli.commands import EXIT_USAGE, CommandArguments, run_command
from src.cli.session import SessionConfig
from src.cli.verification import LAWS
from src.utils.logger import set_level, setup_logger

logger = setup_logger(__name__)

_MAP_HELP = "polynomial map, components separated by ';' (or use --file)"


def _session_options() -> argparse.ArgumentParser:
    """Flags shared by every subcommand; unset flags fall back to the configured defaults."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("-p", type=int, default=None, help="prime characteristic (2..13)")
    parent.add_argument("-n", type=int, default=None, help="number of variables")
    parent.add_argument("--seed", type=int, default=None, help="master seed for random trials")
    parent.add_argument("--trials", type=int, default=None, help="number of verification trials")
    parent.add_argument("--max-degree", type=int, default=None, help="total degree bound of random polynomials")
    parent.add_argument("--max-terms", type=int, default=None, help="term count bound of random polynomials")
    parent.add_argument("--output", choices=("text", "json"), default=None, help="output mode")
    parent.add_argument("--timing", action="store_true", help="report wall-clock time")
    parent.add_argument("-v", "--verbose", action="count", default=0, help="log INFO (-v) or DEBUG (-vv) to stderr")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobenius_cli",
        description="Frobenius matrices, Jacobians and Wronskians over F_p",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Delta(F) = det U(F)
  python scripts/frobenius_cli.py delta -p 2 -n 2 "x1+x2; x1*x2"

  # Does {F^a} form a basis over k[X^p]?
  python scripts/frobenius_cli.py basis-check -p 2 -n 1 "x1^2"

  # Seeded verification run, machine readable
  python scripts/frobenius_cli.py verify prop2 -p 2 -n 2 --seed 42 --trials 50 --output json
        """,
    )
    parent = _session_options()
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")

    for name, help_text in (
        ("jacobian", "Jacobian determinant j(F)"),
        ("delta", "Delta(F) = det U(F)"),
        ("umatrix", "the Frobenius matrix U(F)"),
        ("basis-check", "whether the powers of F form a k[X^p]-basis"),
    ):
        sub = subparsers.add_parser(name, parents=[parent], help=help_text)
        sub.add_argument("map", nargs="?", help=_MAP_HELP)
        sub.add_argument("--file", type=Path, default=None, help="read the map from a file, one polynomial per line")

    wronskian = subparsers.add_parser("wronskian", parents=[parent], help="generalized Wronskian of the powers of F")
    wronskian.add_argument("map", nargs="?", help=_MAP_HELP)
    wronskian.add_argument("--file", type=Path, default=None)
    wronskian.add_argument("--order", type=int, default=None, help="order r, 1 <= r <= p (default p)")

    represent = subparsers.add_parser("represent", parents=[parent], help="Delta(F) * g over the powers of F")
    represent.add_argument("map", nargs="?", help=_MAP_HELP)
    represent.add_argument("--file", type=Path, default=None)
    represent.add_argument("--poly", default=None, help="the polynomial g (default 1)")

    ideal = subparsers.add_parser("ideal-gens", parents=[parent], help="Jacobians of all n-subsets of a list")
    ideal.add_argument("map", help="polynomials separated by ';' (at least n of them)")

    verify = subparsers.add_parser("verify", parents=[parent], help="seeded randomized verification of a law")
    verify.add_argument("law", choices=sorted(LAWS), help="law to verify")
    verify.add_argument("--failure-log", type=Path, default=None, help="directory for failed_<law>.txt")

    return parser


def _command_arguments(args: argparse.Namespace) -> CommandArguments:
    failure_log = getattr(args, "failure_log", None)
    if failure_log is None:
        failure_log = get_config().failure_log_dir
    return CommandArguments(
        map_text=getattr(args, "map", None),
        map_file=getattr(args, "file", None),
        poly=getattr(args, "poly", None),
        order=getattr(args, "order", None),
        law=getattr(args, "law", None),
        failure_log_dir=failure_log,
        timing=args.timing,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and print its output.

    Returns:
        Exit code: 0 success, 1 verification failure, 2 usage or parse error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return int(exit_request.code or 0)

    if args.verbose:
        set_level("DEBUG" if args.verbose > 1 else "INFO")

    try:
        session = SessionConfig.from_defaults(
            p=args.p,
            n=args.n,
            seed=args.seed,
            trials=args.trials,
            max_degree=args.max_degree,
            max_terms=args.max_terms,
            output=args.output,
        )
    except ValidationError as error:
        for problem in error.errors():
            location = ".".join(str(part) for part in problem["loc"]) or "session"
            print(f"error: {location}: {problem['msg']}", file=sys.stderr)
        return EXIT_USAGE

    result = run_command(args.command, _command_arguments(args), session)
    if result.output:
        print(result.output)
    if result.error:
        print(result.error, file=sys.stderr)
    return result.exit_code
