"""
Structural validation for computed algebraic objects.

Validates results before they are handed back to callers, to catch:
- Frobenius coordinates outside k[X^p]
- U-matrix rows that do not recompose to F^alpha
- Wronskian assemblies that break the block-triangular structure
- Representations that fail to re-expand

Each validator returns a list of InvariantViolation records; an empty list
means the object is sound.
"""
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, List, Mapping

from src.algebra.multiindex import DiagonalInterval, MultiIndex, degree
from src.algebra.polymap import PolyMap, PowerCache
from src.algebra.polynomial import Polynomial, format_canonical, sum_polynomials
from src.algebra.matrix import PolyMatrix

if TYPE_CHECKING:
    from src.wronskian.assembly import WronskianAssembly


@dataclass(frozen=True)
class InvariantViolation:
    """Represents a single invariant failure."""

    location: str
    value: Any
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message} (value={self.value}, rule={self.rule})"


class StructureValidator:
    """Validate toolkit structures after construction."""

    @staticmethod
    def validate_frobenius_coordinates(
        coordinates: Mapping[MultiIndex, Polynomial], p: int, n: int
    ) -> List[InvariantViolation]:
        errors = []
        basis = DiagonalInterval(0, p - 1, n)

        for alpha, g in coordinates.items():
            if alpha not in basis:
                errors.append(InvariantViolation(
                    location=f"coordinate[{alpha}]",
                    value=alpha,
                    rule="basis_index",
                    message=f"index must lie in [0, {p - 1}]^{n}"
                ))
            if g.p != p or g.n != n:
                errors.append(InvariantViolation(
                    location=f"coordinate[{alpha}]",
                    value=f"p={g.p}, n={g.n}",
                    rule="ring_check",
                    message=f"coordinate must live in F_{p}[x_1..x_{n}]"
                ))
            elif not g.in_frobenius_subring():
                errors.append(InvariantViolation(
                    location=f"coordinate[{alpha}]",
                    value=format_canonical(g),
                    rule="frobenius_subring",
                    message="coordinate must lie in k[X^p]"
                ))

        return errors

    @staticmethod
    def validate_u_matrix(F: PolyMap, U: PolyMatrix) -> List[InvariantViolation]:
        errors = []
        basis = list(DiagonalInterval(0, F.p - 1, F.n))

        if U.shape != (len(basis), len(basis)):
            errors.append(InvariantViolation(
                location="U",
                value=U.shape,
                rule="shape_check",
                message=f"U(F) must be {len(basis)}x{len(basis)}"
            ))
            return errors

        for i, j, entry in U.entries():
            if not entry.in_frobenius_subring():
                errors.append(InvariantViolation(
                    location=f"U[{basis[i]}, {basis[j]}]",
                    value=format_canonical(entry),
                    rule="frobenius_subring",
                    message="entries of U(F) must lie in k[X^p]"
                ))

        # Row alpha recomposes to F^alpha
        power = PowerCache(F)
        monomials = [Polynomial.monomial(beta, F.p) for beta in basis]
        for i, alpha in enumerate(basis):
            recomposed = sum_polynomials(
                (u * x for u, x in zip(U.row(i), monomials)), F.p, F.n
            )
            if recomposed != power(alpha):
                errors.append(InvariantViolation(
                    location=f"U row {alpha}",
                    value=format_canonical(recomposed),
                    rule="row_recomposition",
                    message="row does not recompose to F^alpha"
                ))

        return errors

    @staticmethod
    def validate_wronskian_assembly(assembly: "WronskianAssembly") -> List[InvariantViolation]:
        errors = []
        F, r = assembly.F, assembly.order
        index = list(DiagonalInterval(0, r - 1, F.n))

        if not assembly.T.is_upper_unitriangular():
            errors.append(InvariantViolation(
                location="T",
                value=assembly.T.shape,
                rule="unitriangular",
                message="T must be upper unitriangular in graded-lex order"
            ))

        # W' vanishes above the grade blocks
        for i, alpha in enumerate(index):
            for j, beta in enumerate(index):
                if degree(alpha) < degree(beta) and not assembly.Wprime[i, j].is_zero():
                    errors.append(InvariantViolation(
                        location=f"W'[{alpha}, {beta}]",
                        value=format_canonical(assembly.Wprime[i, j]),
                        rule="block_vanishing",
                        message="W' must vanish when |alpha| < |beta|"
                    ))

        expected_sizes = [
            sum(1 for alpha in index if degree(alpha) == l) for l in range(F.n * (r - 1) + 1)
        ]
        if list(assembly.block_sizes) != expected_sizes:
            errors.append(InvariantViolation(
                location="block_sizes",
                value=list(assembly.block_sizes),
                rule="block_count",
                message=f"expected {expected_sizes}"
            ))

        weighted = sum(l * s for l, s in enumerate(assembly.block_sizes))
        target = F.n * r ** F.n * (r - 1) // 2
        if weighted != target:
            errors.append(InvariantViolation(
                location="block_sizes",
                value=weighted,
                rule="grade_sum",
                message=f"sum of l * s_l must equal n r^n (r-1) / 2 = {target}"
            ))

        return errors

    @staticmethod
    def validate_representation(
        g: Polynomial,
        F: PolyMap,
        coefficients: Mapping[MultiIndex, Polynomial],
        multiplier: Polynomial,
    ) -> List[InvariantViolation]:
        """Check sum_beta c_beta F^beta == multiplier * g with every c_beta in k[X^p]."""
        errors = []

        for beta, c in coefficients.items():
            if not c.in_frobenius_subring():
                errors.append(InvariantViolation(
                    location=f"c[{beta}]",
                    value=format_canonical(c),
                    rule="frobenius_subring",
                    message="representation coefficients must lie in k[X^p]"
                ))

        power = PowerCache(F)
        expanded = sum_polynomials(
            (c * power(beta) for beta, c in coefficients.items()), F.p, F.n
        )
        target = multiplier * g
        if expanded != target:
            errors.append(InvariantViolation(
                location="representation",
                value=format_canonical(expanded),
                rule="re_expansion",
                message=f"sum c_beta F^beta must equal {format_canonical(target)}"
            ))

        return errors
