"""
Unit tests for U(F), Delta(F) and the linear-map constructors.
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.matrix import PolyMatrix, det_cofactor
from src.algebra.polymap import PolyMap, monomial_power
from src.algebra.polynomial import Polynomial
from src.frobenius.decomposition import FrobeniusDecomposition, frobenius_recompose
from src.frobenius.umatrix import (
    delta,
    diagonal_linear_map,
    elementary_linear_map,
    linear_map,
    q_exponent,
    u_matrix,
)
from src.utils.errors import CapacityError, DomainError
from tests.conftest import poly, polymaps


class TestQExponent:
    """q = p^n (p - 1) / 2."""

    @pytest.mark.parametrize("p,n,expected", [(2, 1, 1), (2, 2, 2), (3, 1, 3), (3, 2, 9), (5, 2, 50)])
    def test_values(self, p, n, expected):
        """Known exponents."""
        assert q_exponent(p, n) == expected

    def test_rejects_bad_input(self):
        """Composite p or n < 1."""
        with pytest.raises(DomainError):
            q_exponent(4, 1)
        with pytest.raises(DomainError):
            q_exponent(3, 0)


class TestUMatrix:
    """Rows hold the k[X^p]-coordinates of F^alpha."""

    def test_unit_jacobian_map(self, unit_jacobian_map):
        """U(x + x^2) over F_2 is [[1, 0], [x^2, 1]]."""
        U = u_matrix(unit_jacobian_map)
        x_squared = poly(2, 1, {(2,): 1})
        assert U.matrix == PolyMatrix([[Polynomial.one(2, 1), Polynomial.zero(2, 1)], [x_squared, Polynomial.one(2, 1)]])
        assert U.entry((1,), (0,)) == x_squared
        assert U.row((1,)) == {(0,): x_squared, (1,): Polynomial.one(2, 1)}

    @pytest.mark.parametrize("p,n", [(2, 1), (2, 3), (3, 2)])
    def test_identity_map_gives_identity(self, p, n):
        """U(X) = I."""
        U = u_matrix(PolyMap.identity(p, n)).matrix
        assert U == PolyMatrix.identity(p ** n, p, n)

    def test_validated_build(self, cubic_map_p3):
        """validate=True re-expands every row without complaint."""
        U = u_matrix(cubic_map_p3, validate=True)
        assert U.matrix.shape == (9, 9)
        for _, _, entry in U.matrix.entries():
            assert entry.in_frobenius_subring()

    def test_capacity(self):
        """p^n above the cap is refused."""
        with pytest.raises(CapacityError):
            u_matrix(PolyMap.identity(2, 16))


class TestDelta:
    """Delta(F) = det U(F)."""

    def test_sum_product_map(self, sum_product_map):
        """Delta(x1 + x2, x1 x2) = x1^2 + x2^2 over F_2."""
        assert delta(sum_product_map) == poly(2, 2, {(2, 0): 1, (0, 2): 1})

    def test_unit_jacobian_map(self, unit_jacobian_map):
        """Lower unitriangular U has Delta = 1."""
        assert delta(unit_jacobian_map) == 1

    def test_frobenius_square_map(self, frobenius_square_map):
        """(x1^2, x2) has zero Jacobian and Delta = 0."""
        assert delta(frobenius_square_map).is_zero()

    def test_cubic_map(self, cubic_map_p3):
        """j = 1 forces Delta = 1."""
        assert delta(cubic_map_p3) == 1

    def test_lies_in_frobenius_subring(self, sum_product_map, cubic_map_p3):
        """Delta(F) is an element of k[X^p]."""
        assert delta(sum_product_map).in_frobenius_subring()
        assert delta(cubic_map_p3).in_frobenius_subring()


class TestLinearMaps:
    """F = AX and its special cases."""

    def test_linear_map_components(self):
        """f_i = sum_j A_ij x_j."""
        F = linear_map([[1, 2], [0, 1]], 3)
        assert F[0] == poly(3, 2, {(1, 0): 1, (0, 1): 2})
        assert F[1] == Polynomial.variable(1, 3, 2)

    def test_non_square_rejected(self):
        """A must be n x n."""
        with pytest.raises(DomainError):
            linear_map([[1, 2]], 3)

    def test_elementary_map_has_delta_one(self):
        """Elementary maps have det A = 1."""
        F = elementary_linear_map(0, 1, 2, 3, 2)
        assert F[0] == poly(3, 2, {(1, 0): 1, (0, 1): 2})
        assert delta(F) == 1

    def test_elementary_map_needs_distinct_variables(self):
        """j == k is not an elementary map."""
        with pytest.raises(DomainError):
            elementary_linear_map(1, 1, 1, 3, 2)

    @pytest.mark.parametrize("diagonal,p,expected", [
        ([2], 3, 2),
        ([2, 1], 5, 4),
        ([1, 1], 2, 1),
    ])
    def test_diagonal_map(self, diagonal, p, expected):
        """Delta(diag(d) X) = (prod d_i)^q."""
        assert delta(diagonal_linear_map(diagonal, p)) == expected


class TestRandomMaps:
    """U(F) and Delta(F) on random maps."""

    @pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (5, 1)])
    @settings(max_examples=15, deadline=None)
    @given(data=st.data())
    def test_delta_matches_cofactor_expansion(self, p, n, data):
        """For p^n <= 6, Delta(F) agrees with the Laplace determinant of U(F)."""
        F = data.draw(polymaps(p, n))
        assert det_cofactor(u_matrix(F).matrix) == delta(F)

    @pytest.mark.parametrize("p,n", [(2, 2), (3, 1), (3, 2)])
    @settings(max_examples=15, deadline=None)
    @given(data=st.data())
    def test_rows_recompose_to_powers(self, p, n, data):
        """sum_beta U[alpha, beta] X^beta = F^alpha for every alpha."""
        F = data.draw(polymaps(p, n))
        U = u_matrix(F)
        for alpha in U.basis:
            row = FrobeniusDecomposition(p, n, U.row(alpha))
            assert frobenius_recompose(row) == monomial_power(F, alpha)
