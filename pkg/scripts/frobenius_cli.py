"""
Command-line entry point for the Frobenius Jacobian Toolkit.

Usage:
    python scripts/frobenius_cli.py delta -p 2 -n 2 "x1+x2; x1*x2"
    python scripts/frobenius_cli.py verify prop2 -p 2 -n 2 --seed 42 --trials 50 --output json

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from config import get_config  # noqa: E402
from src.cli.app import main as cli_main  # noqa: E402
from src.utils.logger import get_default_log_file, setup_logger  # noqa: E402

if get_config().log_to_file:
    logger = setup_logger(__name__, log_file=get_default_log_file("frobenius_cli"))
else:
    logger = setup_logger(__name__)


def main() -> int:
    try:
        return cli_main(sys.argv[1:])
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        return 1
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        logger.exception("Full traceback:")
        return 1


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
