"""
Dense matrices of polynomials and their exact determinants.

Two determinant paths are kept on purpose: fraction-free (Bareiss)
elimination is the workhorse, Laplace expansion is the reference that the
tests hold it against.
"""
from __future__ import annotations

from typing import Callable, List, Sequence, Tuple

from config import get_config
from src.algebra.field import FpScalar
from src.algebra.polynomial import Polynomial, format_canonical
from src.utils.errors import (
    CapacityError,
    DimensionMismatchError,
    DomainError,
    ModulusMismatchError,
)
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


class PolyMatrix:
    """An immutable r x c matrix with entries in F_p[x_1..x_n]."""

    __slots__ = ("_rows", "_p", "_n", "_nrows", "_ncols")

    def __init__(self, rows: Sequence[Sequence[Polynomial]], p: int | None = None, n: int | None = None):
        frozen = tuple(tuple(row) for row in rows)
        if frozen and any(len(row) != len(frozen[0]) for row in frozen):
            raise DomainError("matrix rows have different lengths")
        entries = [e for row in frozen for e in row]
        if entries:
            p = entries[0].p if p is None else p
            n = entries[0].n if n is None else n
        if p is None or n is None:
            raise DomainError("an empty matrix needs explicit p and n")
        for e in entries:
            if e.p != p:
                raise ModulusMismatchError(f"matrix entries over F_{p} and F_{e.p}")
            if e.n != n:
                raise DimensionMismatchError(f"matrix entries in {n} and {e.n} variables")
        self._rows = frozen
        self._p = p
        self._n = n
        self._nrows = len(frozen)
        self._ncols = len(frozen[0]) if frozen else 0

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def build(
        cls, nrows: int, ncols: int, entry: Callable[[int, int], Polynomial], p: int, n: int
    ) -> "PolyMatrix":
        return cls([[entry(i, j) for j in range(ncols)] for i in range(nrows)], p, n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, p: int, n: int) -> "PolyMatrix":
        zero = Polynomial.zero(p, n)
        return cls([[zero] * ncols for _ in range(nrows)], p, n)

    @classmethod
    def identity(cls, size: int, p: int, n: int) -> "PolyMatrix":
        zero, one = Polynomial.zero(p, n), Polynomial.one(p, n)
        return cls([[one if i == j else zero for j in range(size)] for i in range(size)], p, n)

    @classmethod
    def from_scalars(cls, values: Sequence[Sequence[int | FpScalar]], p: int, n: int) -> "PolyMatrix":
        return cls([[Polynomial.constant(v, p, n) for v in row] for row in values], p, n)

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    @property
    def p(self) -> int:
        return self._p

    @property
    def n(self) -> int:
        return self._n

    @property
    def shape(self) -> Tuple[int, int]:
        return (self._nrows, self._ncols)

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    def is_square(self) -> bool:
        return self._nrows == self._ncols

    def __getitem__(self, key: Tuple[int, int]) -> Polynomial:
        i, j = key
        return self._rows[i][j]

    def row(self, i: int) -> Tuple[Polynomial, ...]:
        return self._rows[i]

    def to_lists(self) -> List[List[Polynomial]]:
        return [list(row) for row in self._rows]

    def entries(self):
        for i, row in enumerate(self._rows):
            for j, e in enumerate(row):
                yield i, j, e

    def submatrix(self, row_ids: Sequence[int], col_ids: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self._rows[i][j] for j in col_ids] for i in row_ids], self._p, self._n)

    def minor_matrix(self, i: int, j: int) -> "PolyMatrix":
        """Delete row i and column j."""
        rows = [r for k, r in enumerate(self._rows) if k != i]
        return PolyMatrix([[e for k, e in enumerate(r) if k != j] for r in rows], self._p, self._n)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            [[self._rows[i][j] for i in range(self._nrows)] for j in range(self._ncols)],
            self._p,
            self._n,
        )

    def map(self, fn: Callable[[Polynomial], Polynomial]) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self._rows], self._p, self._n)

    def scale(self, factor: Polynomial | int | FpScalar) -> "PolyMatrix":
        return self.map(lambda e: e * factor)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if other.shape != self.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape} matrices")
        return PolyMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)],
            self._p,
            self._n,
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self._ncols != other._nrows:
            raise DimensionMismatchError(
                f"cannot multiply {self.shape} by {other.shape} matrices"
            )
        zero = Polynomial.zero(self._p, self._n)
        columns = other.transpose()._rows
        out = []
        for row in self._rows:
            out_row = []
            for column in columns:
                total = zero
                for a, b in zip(row, column):
                    if a.is_zero() or b.is_zero():
                        continue
                    total = total + a * b
                out_row.append(total)
            out.append(out_row)
        return PolyMatrix(out, self._p, self._n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self._p, self._n, self._rows) == (other._p, other._n, other._rows)

    def __hash__(self) -> int:
        return hash((self._p, self._n, self._rows))

    def is_upper_unitriangular(self) -> bool:
        return self.is_square() and all(
            (e == 1) if i == j else (i < j or e.is_zero()) for i, j, e in self.entries()
        )

    def to_strings(self) -> List[List[str]]:
        """Row-major canonical strings, the structured-output form."""
        return [[format_canonical(e) for e in row] for row in self._rows]

    def __repr__(self) -> str:
        return f"PolyMatrix({self._nrows}x{self._ncols}, p={self._p}, n={self._n})"


def _require_square(M: PolyMatrix, what: str) -> None:
    if not M.is_square():
        raise DomainError(f"{what} needs a square matrix, got {M.nrows}x{M.ncols}")


def det_fraction_free(M: PolyMatrix) -> Polynomial:
    """
    Exact determinant by fraction-free (Bareiss) elimination.

    Pivot rule: among the nonzero entries of the pivot column pick the one
    with the fewest terms; a zero column ends with determinant 0. Row swaps
    flip the tracked sign, and every division by the previous pivot is exact.
    """
    _require_square(M, "det_fraction_free")
    size = M.nrows
    p, n = M.p, M.n
    if size == 0:
        return Polynomial.one(p, n)
    if size == 1:
        return M[0, 0]
    a = M.to_lists()
    sign = 1
    previous = Polynomial.one(p, n)
    for k in range(size - 1):
        candidates = [i for i in range(k, size) if not a[i][k].is_zero()]
        if not candidates:
            return Polynomial.zero(p, n)
        pivot_row = min(candidates, key=lambda i: (a[i][k].num_terms, i))
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, size):
            lead = a[i][k]
            for j in range(k + 1, size):
                numerator = pivot * a[i][j] - lead * a[k][j]
                a[i][j] = numerator.exact_divide(previous)
            a[i][k] = Polynomial.zero(p, n)
        previous = pivot
    det = a[size - 1][size - 1]
    logger.debug(f"det_fraction_free: {size}x{size}, {det.num_terms} terms")
    return det if sign > 0 else -det


def det_cofactor(M: PolyMatrix) -> Polynomial:
    """Determinant by Laplace expansion along the first row; reference use only."""
    _require_square(M, "det_cofactor")
    cap = get_config().limits.cofactor_cap
    if M.nrows > cap:
        raise CapacityError(f"det_cofactor is capped at {cap}x{cap}, got {M.nrows}x{M.nrows}")
    return _laplace(M.to_lists(), M.p, M.n)


def _laplace(rows: List[List[Polynomial]], p: int, n: int) -> Polynomial:
    size = len(rows)
    if size == 0:
        return Polynomial.one(p, n)
    if size == 1:
        return rows[0][0]
    if size == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Polynomial.zero(p, n)
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = entry * _laplace(minor, p, n)
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(M: PolyMatrix) -> PolyMatrix:
    """
    Classical adjugate: adj(M)[i][j] = (-1)^(i+j) det(M with row j, column i removed).

    adj(M) M = M adj(M) = det(M) I holds over any commutative ring, so no
    invertibility is needed.
    """
    _require_square(M, "adjugate")
    size = M.nrows
    p, n = M.p, M.n
    if size == 1:
        return PolyMatrix.identity(1, p, n)
    cofactors = [[Polynomial.zero(p, n)] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            minor = det_fraction_free(M.minor_matrix(i, j))
            cofactors[i][j] = minor if (i + j) % 2 == 0 else -minor
    return PolyMatrix(cofactors, p, n).transpose()
