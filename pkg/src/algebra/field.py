"""
Scalars of the prime field F_p.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from sympy import isprime

from src.utils.errors import DomainError, ModulusMismatchError


@lru_cache(maxsize=None)
def require_prime(p: int) -> int:
    """Return p unchanged, or raise DomainError if it is not a prime."""
    if not isinstance(p, int) or isinstance(p, bool) or not isprime(p):
        raise DomainError(f"modulus must be a prime, got {p!r}")
    return p


@dataclass(frozen=True)
class FpScalar:
    """An element of F_p, stored as its residue in [0, p-1]."""

    residue: int
    modulus: int

    def __post_init__(self) -> None:
        require_prime(self.modulus)
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @classmethod
    def of(cls, value: int, p: int) -> "FpScalar":
        return cls(value % p, p)

    def _coerce(self, other: object) -> Optional[int]:
        if isinstance(other, FpScalar):
            if other.modulus != self.modulus:
                raise ModulusMismatchError(
                    f"cannot combine F_{self.modulus} and F_{other.modulus} scalars"
                )
            return other.residue
        if isinstance(other, int):
            return other % self.modulus
        return None

    def __add__(self, other: Union["FpScalar", int]) -> "FpScalar":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FpScalar(self.residue + value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Union["FpScalar", int]) -> "FpScalar":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FpScalar(self.residue - value, self.modulus)

    def __rsub__(self, other: int) -> "FpScalar":
        return FpScalar(other - self.residue, self.modulus)

    def __neg__(self) -> "FpScalar":
        return FpScalar(-self.residue, self.modulus)

    def __mul__(self, other: Union["FpScalar", int]) -> "FpScalar":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FpScalar(self.residue * value, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "FpScalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FpScalar(pow(self.residue, exponent, self.modulus), self.modulus)

    def inverse(self) -> "FpScalar":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.modulus}")
        return FpScalar(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other: Union["FpScalar", int]) -> "FpScalar":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self * FpScalar(value, self.modulus).inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FpScalar):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int) and not isinstance(other, bool):
            return self.residue == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.residue, self.modulus))

    def __bool__(self) -> bool:
        return self.residue != 0

    def __int__(self) -> int:
        return self.residue

    def __str__(self) -> str:
        return str(self.residue)
