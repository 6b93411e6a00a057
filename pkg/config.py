"""
Central configuration management for the Frobenius Jacobian Toolkit.

This module provides type-safe configuration loading from environment variables
with sensible defaults for all settings.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Optional
import os
from dotenv import load_dotenv

load_dotenv()


@dataclass
class LimitsConfig:
    """Size caps that keep every computation at desk scale."""

    # p^n (and r^n) above this is rejected before any matrix is built
    max_matrix_dim: int = 32768
    # Laplace expansion is factorial-time; oracle use only
    cofactor_cap: int = 6
    # Largest exponent literal the expression parser accepts
    max_exponent: int = 4096
    max_prime: int = 13

    @classmethod
    def from_env(cls) -> "LimitsConfig":
        """Load limits from environment variables."""
        return cls(
            max_matrix_dim=int(os.getenv("FJT_MAX_MATRIX_DIM", "32768")),
            cofactor_cap=int(os.getenv("FJT_COFACTOR_CAP", "6")),
            max_exponent=int(os.getenv("FJT_MAX_EXPONENT", "4096")),
            max_prime=int(os.getenv("FJT_MAX_PRIME", "13")),
        )


@dataclass
class SessionDefaults:
    """Defaults for the command-line session flags."""

    p: int = 2
    n: int = 2
    seed: int = 0
    trials: int = 100
    max_degree: int = 3
    max_terms: int = 4
    output: str = "text"

    @classmethod
    def from_env(cls) -> "SessionDefaults":
        """Load CLI defaults from environment variables."""
        return cls(
            p=int(os.getenv("FJT_P", "2")),
            n=int(os.getenv("FJT_N", "2")),
            seed=int(os.getenv("FJT_SEED", "0")),
            trials=int(os.getenv("FJT_TRIALS", "100")),
            max_degree=int(os.getenv("FJT_MAX_DEGREE", "3")),
            max_terms=int(os.getenv("FJT_MAX_TERMS", "4")),
            output=os.getenv("FJT_OUTPUT", "text"),
        )


@dataclass
class AppConfig:
    """Application-wide configuration."""

    limits: LimitsConfig
    defaults: SessionDefaults
    log_level: str = "WARNING"
    log_to_file: bool = False
    failure_log_dir: Optional[Path] = None

    @classmethod
    def load(cls) -> "AppConfig":
        """
        Load complete application configuration.

        Returns:
            AppConfig: Fully configured application settings.
        """
        failure_dir = os.getenv("FJT_FAILURE_LOG_DIR")
        return cls(
            limits=LimitsConfig.from_env(),
            defaults=SessionDefaults.from_env(),
            log_level=os.getenv("LOG_LEVEL", "WARNING"),
            log_to_file=os.getenv("FJT_LOG_TO_FILE", "").lower() in ("1", "true", "yes"),
            failure_log_dir=Path(failure_dir) if failure_dir else None,
        )


# Global config instance (lazy-loaded)
_config: Optional[AppConfig] = None


def get_config(reload: bool = False) -> AppConfig:
    """
    Get application configuration singleton.

    Args:
        reload: Force reload configuration from environment.

    Returns:
        AppConfig: Application configuration instance.
    """
    global _config

    if _config is None or reload:
        _config = AppConfig.load()

    return _config
