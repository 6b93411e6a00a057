"""
Bulk verification runs over a grid of (p, n) pairs.

Runs one or more laws for every listed (p, n) and prints a summary; the
default grid per law is the acceptance grid of the toolkit.

Usage:
    python scripts/run_acceptance.py                      # every law, default grids
    python scripts/run_acceptance.py prop2 lemma4
    python scripts/run_acceptance.py prop2 --pairs 2,1 3,2 --trials 20 --seed 7
"""
import argparse
import sys
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Tuple

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from pydantic import ValidationError  # noqa: E402

from config import get_config  # noqa: E402
from src.cli.session import SessionConfig  # noqa: E402
from src.cli.verification import LAWS, run_verification  # noqa: E402
from src.utils.errors import AlgebraError  # noqa: E402
from src.utils.logger import get_default_log_file, setup_logger  # noqa: E402

log_file = get_default_log_file("acceptance") if get_config().log_to_file else None
logger = setup_logger(__name__, log_file=log_file, level="INFO")

Pair = Tuple[int, int]


# law -> (pairs, trials, max_degree)
ACCEPTANCE_GRID: Dict[str, Tuple[List[Pair], int, int]] = {
    "prop2": ([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)], 100, 3),
    "lemma4": ([(2, 1), (2, 2), (3, 1), (3, 2)], 25, 3),
    "lemma2": ([(2, 1), (2, 2), (3, 1)], 100, 3),
    "lemma3": ([(2, 2), (3, 2), (5, 1)], 100, 3),
    "nousiainen": ([(2, 1), (2, 2), (3, 1)], 100, 3),
    "prop3": ([(2, 1), (2, 2), (3, 1)], 100, 3),
    "lemma1": ([(5, 2), (7, 2)], 20, 3),
    "formula5": ([(3, 1), (5, 1), (7, 1)], 20, 4),
    "prop1-blocks": ([(2, 2), (3, 1), (3, 2)], 20, 3),
    "theorem-kf": ([(2, 1), (2, 2), (3, 1)], 50, 3),
}


def parse_pair(text: str) -> Pair:
    try:
        p, n = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p,n, got {text!r}")
    return p, n


def run_law(
    law: str,
    pairs: List[Pair],
    trials: int,
    max_degree: int,
    max_terms: int,
    seed: int,
    failure_log: Optional[Path],
) -> Dict[Pair, bool]:
    """Run one law over its (p, n) grid; True per pair when every trial passed."""
    results = {}
    for p, n in pairs:
        start_time = datetime.now()
        try:
            session = SessionConfig(
                p=p, n=n, seed=seed, trials=trials, max_degree=max_degree, max_terms=max_terms
            )
            report = run_verification(law, session, failure_log_dir=failure_log, progress=False)
        except (ValidationError, AlgebraError) as e:
            logger.error(f"{law} at p={p}, n={n} could not run: {e}")
            results[(p, n)] = False
            continue

        duration = (datetime.now() - start_time).total_seconds()
        status = "PASS" if report.passed else "FAIL"
        logger.info(f"{law:<14} p={p} n={n}  {report.trials - report.failures}/{report.trials}  "
                    f"{status}  ({duration:.2f}s)")
        if report.first_counterexample is not None:
            logger.error(f"  first counterexample: {report.first_counterexample.describe()}")
        results[(p, n)] = report.passed
    return results


def main() -> int:
    """
    Main acceptance script.

    Returns:
        Exit code: 0 if every run passed, 1 if any failed
    """
    parser = argparse.ArgumentParser(
        description="Run seeded verification laws over grids of (p, n)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # The full acceptance grid
  python scripts/run_acceptance.py

  # One law on custom pairs
  python scripts/run_acceptance.py lemma3 --pairs 2,2 5,1 --trials 40
        """
    )
    parser.add_argument("laws", nargs="*", help=f"laws to run (default: all of {', '.join(LAWS)})")
    parser.add_argument("--pairs", nargs="+", type=parse_pair, default=None,
                        help="(p, n) pairs as p,n (default: the law's acceptance grid)")
    parser.add_argument("--trials", type=int, default=None, help="trials per pair (default: per law)")
    parser.add_argument("--max-degree", type=int, default=None)
    parser.add_argument("--max-terms", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--failure-log", type=Path, default=None,
                        help="directory for failed_<law>.txt (default: FJT_FAILURE_LOG_DIR)")
    args = parser.parse_args()

    laws = args.laws or list(ACCEPTANCE_GRID)
    unknown = [law for law in laws if law not in LAWS]
    if unknown:
        logger.error(f"Unknown law(s): {unknown}")
        logger.error(f"Known laws: {', '.join(LAWS)}")
        return 2
    failure_log = args.failure_log or get_config().failure_log_dir

    start_time = datetime.now()
    logger.info("=" * 80)
    logger.info("FROBENIUS JACOBIAN TOOLKIT - ACCEPTANCE RUN")
    logger.info("=" * 80)
    logger.info(f"Laws: {', '.join(laws)}")
    logger.info(f"Seed: {args.seed}")

    summary: Dict[str, Dict[Pair, bool]] = {}
    for i, law in enumerate(laws, 1):
        pairs, trials, max_degree = ACCEPTANCE_GRID[law]
        logger.info("")
        logger.info(f"[{i}/{len(laws)}] {law}")
        logger.info("-" * 80)
        summary[law] = run_law(
            law,
            args.pairs or pairs,
            args.trials or trials,
            args.max_degree if args.max_degree is not None else max_degree,
            args.max_terms,
            args.seed,
            failure_log,
        )

    duration = (datetime.now() - start_time).total_seconds()
    failed = [
        f"{law}(p={p},n={n})" for law, runs in summary.items() for (p, n), ok in runs.items() if not ok
    ]
    total = sum(len(runs) for runs in summary.values())

    logger.info("")
    logger.info("=" * 80)
    logger.info("ACCEPTANCE SUMMARY")
    logger.info("=" * 80)
    logger.info(f"Runs: {total}")
    logger.info(f"Passed: {total - len(failed)}")
    logger.info(f"Failed: {len(failed)}")
    logger.info(f"Duration: {duration:.2f} seconds ({duration / 60:.2f} minutes)")

    if failed:
        logger.error(f"✗ Failed: {', '.join(failed)}")
        return 1

    logger.info("All runs passed!")
    logger.info("=" * 80)
    return 0


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
