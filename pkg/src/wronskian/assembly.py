"""
Generalized Wronskians of the powers F^beta and their block triangularization.

For an order r (1 <= r <= p) all matrices are indexed by [0, r-1] in
graded-lex order:

    W[alpha, beta]  = d^alpha F^beta
    T[alpha, beta]  = C(beta, alpha) (-F)^(beta - alpha)     (0 unless alpha <= beta)
    W'              = W T

T is upper unitriangular and W' vanishes whenever |alpha| < |beta|, so
det W = det W' = product of the determinants of the diagonal grade blocks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from src.algebra.matrix import PolyMatrix
from src.algebra.multiindex import (
    DiagonalInterval,
    MultiIndex,
    binomial,
    bounded_compositions,
    check_capacity,
    degree,
    leq,
    multinomial,
    subtract,
)
from src.algebra.polymap import PolyMap, PowerCache
from src.algebra.polynomial import Polynomial
from src.utils.errors import DomainError, InvariantViolationError
from src.utils.logger import setup_logger
from src.utils.validators import StructureValidator

logger = setup_logger(__name__)


def check_order(r: int, p: int) -> None:
    """Orders above p make every grade factor beta! vanish; they are rejected."""
    if not isinstance(r, int) or not 1 <= r <= p:
        raise DomainError(f"Wronskian order must satisfy 1 <= r <= p = {p}, got {r}")


def _index(F: PolyMap, r: int) -> List[MultiIndex]:
    check_order(r, F.p)
    check_capacity(r, F.n)
    return list(DiagonalInterval(0, r - 1, F.n))


def wronskian_matrix(F: PolyMap, r: int) -> PolyMatrix:
    """The r^n x r^n generalized Wronskian d^alpha F^beta."""
    index = _index(F, r)
    power = PowerCache(F)
    columns = [power(beta) for beta in index]
    return PolyMatrix(
        [[f.derive(alpha) for f in columns] for alpha in index], F.p, F.n
    )


def t_matrix(F: PolyMap, r: int) -> PolyMatrix:
    """T[alpha, beta] = C(beta, alpha) (-F)^(beta - alpha), zero unless alpha <= beta."""
    index = _index(F, r)
    negative_power = PowerCache(F.negated())
    zero = Polynomial.zero(F.p, F.n)
    rows = []
    for alpha in index:
        row = []
        for beta in index:
            if not leq(alpha, beta):
                row.append(zero)
                continue
            coefficient = binomial(beta, alpha, F.p)
            row.append(negative_power(subtract(beta, alpha)).scale(coefficient))
        rows.append(row)
    return PolyMatrix(rows, F.p, F.n)


@dataclass(frozen=True)
class WronskianAssembly:
    """W, T, W' = W T and the grade block sizes s_l for one map and order."""

    F: PolyMap
    order: int
    W: PolyMatrix
    T: PolyMatrix
    Wprime: PolyMatrix
    block_sizes: Tuple[int, ...]

    @property
    def index(self) -> List[MultiIndex]:
        return list(DiagonalInterval(0, self.order - 1, self.F.n))

    def block_positions(self, l: int) -> List[int]:
        """Matrix positions of the multiindices of total degree l."""
        return [i for i, alpha in enumerate(self.index) if degree(alpha) == l]

    def block(self, l: int) -> PolyMatrix:
        """Diagonal block of W' on |alpha| = |beta| = l, cut out of the product."""
        positions = self.block_positions(l)
        return self.Wprime.submatrix(positions, positions)


def reduced_wronskian(F: PolyMap, r: int) -> WronskianAssembly:
    """Assemble W, T and W' = W T and validate the block structure."""
    _index(F, r)
    W = wronskian_matrix(F, r)
    T = t_matrix(F, r)
    Wprime = W @ T
    blocks = DiagonalInterval(0, r - 1, F.n).grade_blocks()
    block_sizes = tuple(len(blocks[l]) for l in range(F.n * (r - 1) + 1))
    assembly = WronskianAssembly(F, r, W, T, Wprime, block_sizes)
    violations = StructureValidator.validate_wronskian_assembly(assembly)
    if violations:
        logger.error(f"reduced Wronskian broke its structure for F = ({F}), r = {r}")
        raise InvariantViolationError("reduced Wronskian", violations)
    logger.debug(f"reduced_wronskian: r={r}, blocks={block_sizes}")
    return assembly


def diagonal_block(F: PolyMap, r: int, l: int) -> PolyMatrix:
    """
    The grade-l diagonal block of W', straight from the first partials of F:

        W'[alpha, beta] = beta! * sum over theta^1..theta^n with |theta^i| = beta_i
                          and theta^1 + ... + theta^n = alpha of
                          multinomial(alpha; theta^1..theta^n) prod_{i,j} (d_j f_i)^theta^i_j

    No matrix product is involved; entries are polynomials in the entries of JF.
    """
    _index(F, r)
    if not 0 <= l <= F.n * (r - 1):
        raise DomainError(f"grade must lie in [0, {F.n * (r - 1)}], got {l}")
    p, n = F.p, F.n
    grade = DiagonalInterval(0, r - 1, F.n).grade_blocks()[l]
    partials = [[f.partial(j) for j in range(n)] for f in F.components]
    rows = []
    for alpha in grade:
        rows.append([_block_entry(alpha, beta, partials, p, n) for beta in grade])
    return PolyMatrix(rows, p, n)


def _block_entry(
    alpha: MultiIndex,
    beta: MultiIndex,
    partials: List[List[Polynomial]],
    p: int,
    n: int,
) -> Polynomial:
    total = Polynomial.zero(p, n)

    def _walk(i: int, remaining: MultiIndex, thetas: List[MultiIndex]) -> None:
        nonlocal total
        if i == n:
            if any(remaining):
                return
            coefficient = multinomial(alpha, thetas, p)
            if not coefficient:
                return
            term = Polynomial.constant(coefficient, p, n)
            for row, theta in zip(partials, thetas):
                for d_f, t in zip(row, theta):
                    if t:
                        term = term * d_f ** t
            total = total + term
            return
        for theta in bounded_compositions(beta[i], remaining):
            _walk(i + 1, subtract(remaining, theta), thetas + [theta])

    _walk(0, alpha, [])
    return total.scale(math.prod(math.factorial(b) for b in beta) % p)
