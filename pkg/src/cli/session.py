"""
Session settings shared by every CLI command and verification run.
"""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import isprime

from config import AppConfig, get_config
from src.algebra.multiindex import check_capacity
from src.utils.errors import CapacityError

OutputMode = Literal["text", "json"]


class SessionConfig(BaseModel):
    """Field, dimension and random-instance settings for one invocation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    p: int = Field(ge=2)
    n: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    trials: int = Field(default=100, ge=1)
    max_degree: int = Field(default=3, ge=0)
    max_terms: int = Field(default=4, ge=1)
    output: OutputMode = "text"

    @field_validator("p")
    @classmethod
    def _p_is_small_prime(cls, p: int) -> int:
        if not isprime(p):
            raise ValueError(f"p must be prime, got {p}")
        max_prime = get_config().limits.max_prime
        if p > max_prime:
            raise ValueError(f"p must be at most {max_prime}, got {p}")
        return p

    @model_validator(mode="after")
    def _matrix_fits(self) -> "SessionConfig":
        try:
            check_capacity(self.p, self.n)
        except CapacityError as error:
            raise ValueError(f"p^n too large: {error}") from error
        return self

    @classmethod
    def from_defaults(cls, app_config: Optional[AppConfig] = None, **overrides) -> "SessionConfig":
        """Session built from the configured defaults, with explicit overrides on top."""
        defaults = (app_config or get_config()).defaults
        values = {
            "p": defaults.p,
            "n": defaults.n,
            "seed": defaults.seed,
            "trials": defaults.trials,
            "max_degree": defaults.max_degree,
            "max_terms": defaults.max_terms,
            "output": defaults.output,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def with_dimension(self, n: int) -> "SessionConfig":
        return self.model_copy(update={"n": n})
