"""
Jacobian matrices, Jacobians and generators of the Jacobian ideal.
"""
from __future__ import annotations

from itertools import combinations
from typing import List, Sequence

from src.algebra.matrix import PolyMatrix, det_fraction_free
from src.algebra.polymap import PolyMap
from src.algebra.polynomial import Polynomial
from src.utils.errors import DomainError


def jacobian_matrix(F: PolyMap) -> PolyMatrix:
    """JF with (i, j) entry d f_i / d x_j."""
    return PolyMatrix(
        [[f.partial(j) for j in range(F.n)] for f in F.components], F.p, F.n
    )


def jacobian(F: PolyMap) -> Polynomial:
    """j(F) = det JF."""
    return det_fraction_free(jacobian_matrix(F))


def jacobian_ideal_generators(G: Sequence[Polynomial]) -> List[Polynomial]:
    """
    j(F) for every n-element subsequence F of G, in itertools.combinations order.

    By the chain rule these generate the Jacobian ideal of k[G].
    """
    generators = list(G)
    if not generators:
        raise DomainError("at least one generator is required")
    n = generators[0].n
    if len(generators) < n:
        raise DomainError(
            f"need at least n = {n} generators for n-variable Jacobians, got {len(generators)}"
        )
    return [jacobian(PolyMap(tuple(subset))) for subset in combinations(generators, n)]
