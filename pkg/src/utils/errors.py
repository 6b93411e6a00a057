"""
Exception hierarchy for the toolkit.

Every error raised on purpose by the algebra, Frobenius, Wronskian and CLI
layers derives from AlgebraError, so callers (the CLI in particular) can map
them onto exit codes without catching unrelated exceptions.
"""
from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from src.utils.validators import InvariantViolation


class AlgebraError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(AlgebraError, ValueError):
    """Operands live in polynomial rings with different variable counts."""


class ModulusMismatchError(AlgebraError, ValueError):
    """Operands live over prime fields with different characteristic."""


class DomainError(AlgebraError, ValueError):
    """An operation precondition does not hold for the given input."""


class CapacityError(AlgebraError):
    """A requested structure exceeds the configured size cap."""


class InexactDivisionError(AlgebraError, ArithmeticError):
    """An exact polynomial division left a nonzero remainder."""


class InvariantViolationError(AlgebraError):
    """
    A computed structure broke one of its own invariants.

    This never signals bad input; it means a bug in the implementation.
    """

    def __init__(self, what: str, violations: Sequence["InvariantViolation"]):
        self.what = what
        self.violations = list(violations)
        details = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            details += f" (+{more} more)"
        super().__init__(f"{what}: {details}")


class ExpressionParseError(AlgebraError, ValueError):
    """Polynomial expression text does not match the grammar."""

    def __init__(self, message: str, position: int):
        self.message = message
        self.position = position
        super().__init__(f"{message} at position {position}")
