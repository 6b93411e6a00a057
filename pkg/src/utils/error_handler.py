"""
Failed-trial tracking for verification runs.

Each failing trial becomes one tab-separated line in
``<log_dir>/failed_<law>.txt`` so the exact instance can be replayed later
from its trial index and seed.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import List, Union

from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class FailedTrial:
    trial: int
    seed: int
    error_type: str
    message: str


def failure_log_path(log_dir: Union[str, Path], law: str) -> Path:
    return Path(log_dir) / f"failed_{law}.txt"


def record_failed_trial(
    log_dir: Union[str, Path],
    law: str,
    trial: int,
    seed: int,
    error: Union[Exception, str],
) -> None:
    """Append one failure line; a write failure is logged, never raised."""
    if isinstance(error, Exception):
        error_type, message = type(error).__name__, str(error)
    else:
        error_type, message = "CounterExample", error
    # one record per line
    message = " ".join(message.split())
    path = failure_log_path(log_dir, law)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("a", encoding="utf-8") as f:
            f.write(f"{trial}\t{seed}\t{error_type}\t{message}\n")
        logger.debug(f"Recorded failed trial {trial} of {law} in {path}")
    except OSError as write_error:
        logger.error(f"Failed to record failed trial: {write_error}")
        logger.error(f"Original failure: {error_type}: {message}")


def read_failed_trials(log_dir: Union[str, Path], law: str) -> List[FailedTrial]:
    """Failures recorded for a law, in file order; empty if none were logged."""
    path = failure_log_path(log_dir, law)
    if not path.exists():
        return []
    failures = []
    with path.open("r", encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t", 3)
            if len(parts) != 4:
                logger.warning(f"Skipping malformed line in {path}: {line!r}")
                continue
            trial, seed, error_type, message = parts
            try:
                failures.append(FailedTrial(int(trial), int(seed), error_type, message))
            except ValueError:
                logger.warning(f"Skipping line with non-numeric ids in {path}: {line!r}")
    return failures
