"""
Centralized logging configuration for the Frobenius Jacobian Toolkit.

Provides structured logging with:
- Console output with color coding (on stderr; stdout carries results)
- Optional file output
- Standardized formatting
"""
import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional


class ColoredFormatter(logging.Formatter):
    """Custom formatter with color coding for console output."""

    # ANSI color codes
    COLORS = {
        'DEBUG': '\033[36m',     # Cyan
        'INFO': '\033[32m',      # Green
        'WARNING': '\033[33m',   # Yellow
        'ERROR': '\033[31m',     # Red
        'CRITICAL': '\033[35m',  # Magenta
    }
    RESET = '\033[0m'

    def format(self, record: logging.LogRecord) -> str:
        """Format log record with color."""
        levelname = record.levelname
        if levelname in self.COLORS:
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = levelname


LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logger(
    name: str,
    log_file: Optional[Path] = None,
    level: Optional[str] = None,
    console: bool = True,
) -> logging.Logger:
    """
    Get a configured logger.

    Args:
        name: Logger name, usually ``__name__``.
        log_file: Also write records to this file.
        level: Level name; defaults to ``LOG_LEVEL`` from the app config.
        console: Attach a colored stderr handler.
    """
    logger = logging.getLogger(name)

    if level is None:
        level = _configured_level()
    numeric_level = getattr(logging, level.upper(), logging.WARNING)
    logger.setLevel(numeric_level)

    # Avoid duplicate handlers if logger already configured
    if logger.handlers:
        return logger

    if console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(numeric_level)
        console_handler.setFormatter(ColoredFormatter(LOG_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(console_handler)

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(file_handler)

    # Records are handled here; the root logger stays untouched.
    logger.propagate = False
    return logger


def set_level(level: str) -> None:
    """Re-level every toolkit logger (``src.*``) and its handlers."""
    numeric_level = getattr(logging, level.upper(), logging.WARNING)
    for name, candidate in logging.root.manager.loggerDict.items():
        if not isinstance(candidate, logging.Logger):
            continue
        if name == "src" or name.startswith("src.") or name.startswith("scripts"):
            candidate.setLevel(numeric_level)
            for handler in candidate.handlers:
                handler.setLevel(numeric_level)


def get_default_log_file(process_name: str) -> Path:
    """Daily log file path under ``logs/`` for a named process."""
    today = datetime.now().strftime('%Y-%m-%d')
    log_dir = Path("logs")
    log_dir.mkdir(exist_ok=True)
    return log_dir / f"{process_name}_{today}.log"


def _configured_level() -> str:
    # Imported lazily: config imports nothing from src, but tests reload it.
    from config import get_config

    return get_config().log_level
