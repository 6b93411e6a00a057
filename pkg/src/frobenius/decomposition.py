"""
Coordinates of a polynomial over the Frobenius subring k[X^p].

k[X] is free over k[X^p] with basis {X^a : a in [0, p-1]}; splitting every
exponent e = p*u + r (0 <= r < p) gives the unique coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping

from src.algebra.multiindex import DiagonalInterval, MultiIndex
from src.algebra.polynomial import Polynomial, sum_polynomials
from src.utils.errors import DomainError
from src.utils.validators import StructureValidator


@dataclass(frozen=True)
class FrobeniusDecomposition:
    """g = sum_a g_a X^a with every g_a in k[X^p]; zero coordinates are not stored."""

    p: int
    n: int
    coordinates: Mapping[MultiIndex, Polynomial] = field(default_factory=dict)

    def __post_init__(self) -> None:
        nonzero = {a: g for a, g in self.coordinates.items() if not g.is_zero()}
        object.__setattr__(self, "coordinates", nonzero)
        violations = StructureValidator.validate_frobenius_coordinates(nonzero, self.p, self.n)
        if violations:
            raise DomainError("invalid Frobenius coordinates: " + "; ".join(map(str, violations)))

    def coordinate(self, alpha: MultiIndex) -> Polynomial:
        return self.coordinates.get(tuple(alpha), Polynomial.zero(self.p, self.n))

    def as_vector(self) -> list[Polynomial]:
        """Coordinates for every basis index, in graded-lex order."""
        return [self.coordinate(alpha) for alpha in DiagonalInterval(0, self.p - 1, self.n)]


def frobenius_decompose(g: Polynomial) -> FrobeniusDecomposition:
    p, n = g.p, g.n
    buckets: Dict[MultiIndex, Dict[MultiIndex, int]] = {}
    for exponent, coefficient in g.terms.items():
        residue = tuple(e % p for e in exponent)
        buckets.setdefault(residue, {})[tuple(e - r for e, r in zip(exponent, residue))] = coefficient
    coordinates = {alpha: Polynomial(p, n, terms) for alpha, terms in buckets.items()}
    return FrobeniusDecomposition(p, n, coordinates)


def frobenius_recompose(decomposition: FrobeniusDecomposition) -> Polynomial:
    """sum_a g_a X^a; exact inverse of frobenius_decompose."""
    p, n = decomposition.p, decomposition.n
    violations = StructureValidator.validate_frobenius_coordinates(decomposition.coordinates, p, n)
    if violations:
        raise DomainError("cannot recompose: " + "; ".join(map(str, violations)))
    return sum_polynomials(
        (g * Polynomial.monomial(alpha, p) for alpha, g in decomposition.coordinates.items()),
        p,
        n,
    )
