"""
The Frobenius matrix U(F) and its determinant Delta(F).

Row alpha of U(F) holds the k[X^p]-coordinates of F^alpha in the monomial
basis {X^beta : beta in [0, p-1]}:

    F^alpha = sum_beta U(F)[alpha, beta] X^beta

Rows index powers of F, columns index basis monomials; both use the
graded-lex enumeration of [0, p-1].
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from src.algebra.field import FpScalar, require_prime
from src.algebra.matrix import PolyMatrix, det_fraction_free
from src.algebra.multiindex import DiagonalInterval, MultiIndex, check_capacity
from src.algebra.polymap import PolyMap, PowerCache
from src.algebra.polynomial import Polynomial
from src.frobenius.decomposition import frobenius_decompose
from src.utils.errors import DomainError, InvariantViolationError
from src.utils.logger import setup_logger
from src.utils.validators import StructureValidator

logger = setup_logger(__name__)


def q_exponent(p: int, n: int) -> int:
    """q = p^n (p - 1) / 2."""
    require_prime(p)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return p ** n * (p - 1) // 2


@dataclass(frozen=True)
class UMatrix:
    """U(F) together with the index interval that lays it out."""

    matrix: PolyMatrix
    p: int
    n: int

    @property
    def basis(self) -> DiagonalInterval:
        return DiagonalInterval(0, self.p - 1, self.n)

    def entry(self, alpha: MultiIndex, beta: MultiIndex) -> Polynomial:
        basis = self.basis
        return self.matrix[basis.rank(tuple(alpha)), basis.rank(tuple(beta))]

    def row(self, alpha: MultiIndex) -> dict[MultiIndex, Polynomial]:
        basis = self.basis
        values = self.matrix.row(basis.rank(tuple(alpha)))
        return dict(zip(basis, values))


def u_matrix(F: PolyMap, validate: bool = False) -> UMatrix:
    """
    Build U(F) row by row from the Frobenius decomposition of each F^alpha.

    With validate=True every row is re-expanded and checked against F^alpha.
    """
    p, n = F.p, F.n
    check_capacity(p, n)
    basis = list(DiagonalInterval(0, p - 1, n))
    power = PowerCache(F)
    rows = []
    for alpha in basis:
        decomposition = frobenius_decompose(power(alpha))
        rows.append([decomposition.coordinate(beta) for beta in basis])
    U = PolyMatrix(rows, p, n)
    logger.debug(f"u_matrix: built {len(basis)}x{len(basis)} for F = ({F})")
    if validate:
        violations = StructureValidator.validate_u_matrix(F, U)
        if violations:
            raise InvariantViolationError("U(F) failed validation", violations)
    return UMatrix(U, p, n)


def delta(F: PolyMap) -> Polynomial:
    """Delta(F) = det U(F), an element of k[X^p]."""
    return det_fraction_free(u_matrix(F).matrix)


def linear_map(A: Sequence[Sequence[int | FpScalar]], p: int) -> PolyMap:
    """F = AX with X and F read as column vectors: f_i = sum_j A_ij x_j."""
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise DomainError("a linear map needs a square n x n scalar matrix")
    components = []
    for row in A:
        components.append(Polynomial(
            p, n, {tuple(1 if k == j else 0 for k in range(n)): int(a) for j, a in enumerate(row)}
        ))
    return PolyMap(tuple(components))


def elementary_linear_map(j: int, k: int, scalar: int, p: int, n: int) -> PolyMap:
    """f_j = x_j + scalar * x_k and f_i = x_i otherwise (0-based j != k)."""
    if j == k:
        raise DomainError("an elementary map needs two distinct variables")
    A = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    A[j][k] = scalar % p
    return linear_map(A, p)


def diagonal_linear_map(diagonal: Sequence[int], p: int) -> PolyMap:
    """f_i = d_i x_i."""
    n = len(diagonal)
    return linear_map(
        [[diagonal[r] if r == c else 0 for c in range(n)] for r in range(n)], p
    )
