"""
Unit tests for the exact identities around U(F) and Delta(F).
"""
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.algebra.polymap import PolyMap, PowerCache
from src.algebra.polynomial import Polynomial, sum_polynomials
from src.frobenius.identities import (
    DeltaRepresenter,
    RepresentationStatus,
    express_in_power_basis,
    is_frobenius_basis,
    linear_map_delta,
    represent_delta_multiple,
    verify_delta_jacobian_power,
    verify_delta_multiplicativity,
    verify_delta_representation,
    verify_principal_jacobian_membership,
)
from tests.conftest import poly, polymap, polynomials

small_maps_p2 = st.tuples(
    polynomials(2, 2, max_degree=2, max_terms=3),
    polynomials(2, 2, max_degree=2, max_terms=3),
).map(PolyMap)


class TestDeltaJacobianPower:
    """Delta(F) == j(F)^q."""

    def test_fixture_maps(self, sum_product_map, unit_jacobian_map, frobenius_square_map, cubic_map_p3):
        """Holds on every worked map."""
        for F in (sum_product_map, unit_jacobian_map, frobenius_square_map, cubic_map_p3):
            check = verify_delta_jacobian_power(F)
            assert check.holds, check.to_dict()

    @settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(small_maps_p2)
    def test_random_maps(self, F):
        """Holds for random maps over F_2 in two variables."""
        assert verify_delta_jacobian_power(F)

    def test_to_dict(self, sum_product_map):
        """Witness renders polynomials canonically."""
        record = verify_delta_jacobian_power(sum_product_map).to_dict()
        assert record["identity"] == "delta-jacobian-power"
        assert record["holds"] is True
        assert record["lhs"] == "x1^2 + x2^2"
        assert record["details"] == {"q": 2}


class TestMultiplicativity:
    """Delta(phi_F G) == phi_F(Delta(G)) Delta(F)."""

    def test_sum_product_after_shear(self, sum_product_map):
        """Composition with a non-linear shear."""
        G = polymap(2, 2, {(1, 0): 1, (0, 2): 1}, {(0, 1): 1})
        check = verify_delta_multiplicativity(sum_product_map, G)
        assert check.holds
        assert check.details["matrix_identity"] is True

    def test_both_orders(self, cubic_map_p3):
        """Holds for F o G and G o F."""
        G = polymap(3, 2, {(1, 0): 2}, {(0, 1): 1, (1, 1): 1})
        assert verify_delta_multiplicativity(cubic_map_p3, G)
        assert verify_delta_multiplicativity(G, cubic_map_p3)


class TestLinearMapDelta:
    """Delta(AX) == (det A)^q."""

    def test_general_matrix(self):
        """det [[1, 2], [3, 4]] = 3 over F_5, and 3^50 = 4."""
        result = linear_map_delta([[1, 2], [3, 4]], 5)
        assert result.det_a == 3
        assert result.delta == 4
        assert result.holds

    def test_singular_matrix(self):
        """A singular A gives Delta = 0."""
        result = linear_map_delta([[1, 1], [2, 2]], 3)
        assert result.det_a == 0
        assert result.delta.is_zero()
        assert result.holds


class TestBasisCriterion:
    """Powers of F form a k[X^p]-basis exactly when j(F) is a unit."""

    def test_unit_jacobian(self, cubic_map_p3, unit_jacobian_map):
        assert is_frobenius_basis(cubic_map_p3)
        assert is_frobenius_basis(unit_jacobian_map)

    def test_non_unit_jacobian(self, sum_product_map, frobenius_square_map):
        assert not is_frobenius_basis(sum_product_map)
        assert not is_frobenius_basis(frobenius_square_map)


class TestDeltaRepresentation:
    """Delta(F) g = sum_beta c_beta F^beta with c_beta in k[X^p]."""

    def test_represents_variable(self, sum_product_map):
        """Delta x1 over the powers of (x1 + x2, x1 x2)."""
        g = Polynomial.variable(0, 2, 2)
        coefficients = represent_delta_multiple(g, sum_product_map)
        power = PowerCache(sum_product_map)
        total = sum_polynomials((c * power(beta) for beta, c in coefficients.items()), 2, 2)
        assert total == poly(2, 2, {(2, 0): 1, (0, 2): 1}) * g
        assert all(c.in_frobenius_subring() for c in coefficients.values())

    def test_zero_delta(self, frobenius_square_map):
        """With Delta = 0 the representation is the zero combination."""
        representer = DeltaRepresenter(frobenius_square_map)
        assert representer.delta.is_zero()
        check = verify_delta_representation(Polynomial.variable(0, 2, 2), frobenius_square_map)
        assert check.holds
        assert check.rhs.is_zero()

    @settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(small_maps_p2, polynomials(2, 2, max_degree=3, max_terms=4))
    def test_random_inputs(self, F, g):
        """Re-expansion holds for random F and g."""
        assert verify_delta_representation(g, F)


class TestPowerBasisExpression:
    """Expressing g over the powers of F when j(F) is a unit."""

    def test_unit_jacobian(self, cubic_map_p3):
        """Coefficients re-expand to g itself."""
        g = poly(3, 2, {(1, 1): 1, (0, 0): 2})
        outcome = express_in_power_basis(g, cubic_map_p3)
        assert outcome.status == RepresentationStatus.REPRESENTED
        power = PowerCache(cubic_map_p3)
        total = sum_polynomials((c * power(beta) for beta, c in outcome.coefficients.items()), 3, 2)
        assert total == g

    def test_non_unit_jacobian_is_inconclusive(self, sum_product_map):
        """Non-unit Jacobian: refused, no coefficients."""
        outcome = express_in_power_basis(Polynomial.variable(0, 2, 2), sum_product_map)
        assert outcome.status == RepresentationStatus.INCONCLUSIVE
        assert outcome.coefficients is None


class TestPrincipalJacobianMembership:
    """j(F)^q lies in k[X^p][F]."""

    def test_sum_product_map(self, sum_product_map):
        check = verify_principal_jacobian_membership(sum_product_map)
        assert check.holds
        assert check.lhs == poly(2, 2, {(2, 0): 1, (0, 2): 1})
        assert check.details["coefficients_in_frobenius_subring"] is True

    def test_cubic_map(self, cubic_map_p3):
        assert verify_principal_jacobian_membership(cubic_map_p3)
