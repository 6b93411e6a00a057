"""
Exact checks of the identities relating U(F), Delta(F) and the Jacobian.

Every check computes both sides along independent code paths and returns an
IdentityCheck witness holding the two values, so a failure can be printed
as a concrete counterexample.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Mapping, Optional, Sequence

from src.algebra.field import FpScalar
from src.algebra.jacobian import jacobian
from src.algebra.matrix import PolyMatrix, adjugate, det_fraction_free
from src.algebra.multiindex import DiagonalInterval, MultiIndex
from src.algebra.polymap import PolyMap, PowerCache, substitute
from src.algebra.polynomial import Polynomial, format_canonical, sum_polynomials
from src.frobenius.decomposition import frobenius_decompose
from src.frobenius.umatrix import delta, linear_map, q_exponent, u_matrix
from src.utils.errors import InvariantViolationError
from src.utils.logger import setup_logger
from src.utils.validators import StructureValidator

logger = setup_logger(__name__)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of an exact identity check, with both sides as witness."""

    name: str
    holds: bool
    lhs: Polynomial
    rhs: Polynomial
    details: Mapping[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity": self.name,
            "holds": self.holds,
            "lhs": format_canonical(self.lhs),
            "rhs": format_canonical(self.rhs),
            "details": {key: _render(value) for key, value in self.details.items()},
        }


def _render(value: Any) -> Any:
    if isinstance(value, Polynomial):
        return format_canonical(value)
    if isinstance(value, PolyMatrix):
        return value.to_strings()
    if isinstance(value, FpScalar):
        return value.residue
    if isinstance(value, Mapping):
        return {str(k): _render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    return value


def verify_delta_jacobian_power(F: PolyMap) -> IdentityCheck:
    """Delta(F) == j(F)^q, Delta from the U-matrix determinant, j from JF."""
    q = q_exponent(F.p, F.n)
    lhs = delta(F)
    rhs = jacobian(F) ** q
    return IdentityCheck("delta-jacobian-power", lhs == rhs, lhs, rhs, {"q": q})


def verify_delta_multiplicativity(F: PolyMap, G: PolyMap) -> IdentityCheck:
    """
    Delta(phi_F G) == phi_F(Delta(G)) * Delta(F).

    Also checks the matrix form U(phi_F G) == phi_F(U(G)) U(F) it comes from.
    """
    composed = F.compose(G)
    U_F = u_matrix(F).matrix
    U_G = u_matrix(G).matrix
    U_composed = u_matrix(composed).matrix

    lhs = det_fraction_free(U_composed)
    rhs = substitute(det_fraction_free(U_G), F) * det_fraction_free(U_F)
    matrix_identity = U_composed == U_G.map(lambda entry: substitute(entry, F)) @ U_F
    return IdentityCheck(
        "delta-multiplicativity",
        lhs == rhs and matrix_identity,
        lhs,
        rhs,
        {"matrix_identity": matrix_identity, "composed": [str(f) for f in composed]},
    )


@dataclass(frozen=True)
class LinearMapDelta:
    delta: Polynomial
    det_a: FpScalar
    holds: bool


def linear_map_delta(A: Sequence[Sequence[int | FpScalar]], p: int) -> LinearMapDelta:
    """Delta(AX) together with whether it equals (det A)^q."""
    F = linear_map(A, p)
    n = F.n
    det_a = det_fraction_free(PolyMatrix.from_scalars(A, p, n)).constant_value()
    value = delta(F)
    expected = det_a ** q_exponent(p, n)
    return LinearMapDelta(value, det_a, value == Polynomial.constant(expected, p, n))


def is_frobenius_basis(F: PolyMap) -> bool:
    """{F^a : a in [0, p-1]} is a k[X^p]-basis of k[X] iff j(F) is a nonzero constant."""
    return jacobian(F).is_unit()


class DeltaRepresenter:
    """
    Expresses Delta(F) * g over the powers F^beta.

    From F^alpha = sum_beta U[alpha, beta] X^beta and adj(U) U = Delta I:

        Delta X^alpha = sum_beta adj(U)[alpha, beta] F^beta

    so Delta g = sum_beta c_beta F^beta with c_beta = sum_alpha g_alpha adj(U)[alpha, beta].
    No invertibility of U is needed, Delta(F) = 0 included.
    """

    def __init__(self, F: PolyMap):
        self.F = F
        self.basis = list(DiagonalInterval(0, F.p - 1, F.n))
        self.U = u_matrix(F).matrix
        self.adjugate = adjugate(self.U)
        self.delta = det_fraction_free(self.U)

    def represent(self, g: Polynomial) -> Dict[MultiIndex, Polynomial]:
        F = self.F
        decomposition = frobenius_decompose(g)
        g_vector = decomposition.as_vector()
        coefficients = {}
        for j, beta in enumerate(self.basis):
            coefficients[beta] = sum_polynomials(
                (g_alpha * self.adjugate[i, j] for i, g_alpha in enumerate(g_vector) if not g_alpha.is_zero()),
                F.p,
                F.n,
            )
        violations = StructureValidator.validate_representation(g, F, coefficients, self.delta)
        if violations:
            logger.error(f"representation re-expansion failed for F = ({F}), g = {g}")
            raise InvariantViolationError("representation of Delta(F) * g", violations)
        return coefficients


def represent_delta_multiple(g: Polynomial, F: PolyMap) -> Dict[MultiIndex, Polynomial]:
    """Coefficients c_beta in k[X^p] with Delta(F) * g = sum_beta c_beta F^beta."""
    return DeltaRepresenter(F).represent(g)


class RepresentationStatus(str, Enum):
    REPRESENTED = "represented"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PowerBasisExpression:
    status: RepresentationStatus
    coefficients: Optional[Dict[MultiIndex, Polynomial]] = None


def express_in_power_basis(g: Polynomial, F: PolyMap) -> PowerBasisExpression:
    """
    g = sum_beta c_beta F^beta with c_beta in k[X^p], when j(F) is a unit.

    For a non-unit Jacobian the powers are not known to form a basis and the
    query is refused with an INCONCLUSIVE outcome.
    """
    if not is_frobenius_basis(F):
        logger.warning(f"j(F) is not a unit for F = ({F}); membership left inconclusive")
        return PowerBasisExpression(RepresentationStatus.INCONCLUSIVE)
    representer = DeltaRepresenter(F)
    unit = representer.delta.constant_value().inverse()
    coefficients = {beta: c.scale(unit) for beta, c in representer.represent(g).items()}
    violations = StructureValidator.validate_representation(
        g, F, coefficients, Polynomial.one(F.p, F.n)
    )
    if violations:
        raise InvariantViolationError("power-basis expression", violations)
    return PowerBasisExpression(RepresentationStatus.REPRESENTED, coefficients)


def verify_principal_jacobian_membership(F: PolyMap) -> IdentityCheck:
    """
    Exhibit j(F)^q = Delta(F) * 1 = sum_beta c_beta F^beta with c_beta in k[X^p].

    This witnesses j(F)^q in k[X^p][F] for the subalgebra generated by F.
    """
    representer = DeltaRepresenter(F)
    coefficients = representer.represent(Polynomial.one(F.p, F.n))
    power = PowerCache(F)
    lhs = jacobian(F) ** q_exponent(F.p, F.n)
    rhs = sum_polynomials((c * power(beta) for beta, c in coefficients.items()), F.p, F.n)
    in_subring = all(c.in_frobenius_subring() for c in coefficients.values())
    return IdentityCheck(
        "principal-jacobian-membership",
        lhs == rhs == representer.delta and in_subring,
        lhs,
        rhs,
        {
            "delta": representer.delta,
            "coefficients": {str(beta): c for beta, c in coefficients.items()},
            "coefficients_in_frobenius_subring": in_subring,
        },
    )


def verify_delta_representation(g: Polynomial, F: PolyMap) -> IdentityCheck:
    """
    sum_beta c_beta F^beta == Delta(F) * g with every c_beta in k[X^p].

    The re-expansion runs here a second time, independently of the
    validation inside DeltaRepresenter, so a failure yields both sides.
    """
    try:
        representer = DeltaRepresenter(F)
        coefficients = representer.represent(g)
    except InvariantViolationError as error:
        zero = Polynomial.zero(F.p, F.n)
        return IdentityCheck("delta-representation", False, zero, zero, {"violation": str(error)})
    power = PowerCache(F)
    lhs = sum_polynomials((c * power(beta) for beta, c in coefficients.items()), F.p, F.n)
    rhs = representer.delta * g
    in_subring = all(c.in_frobenius_subring() for c in coefficients.values())
    return IdentityCheck(
        "delta-representation",
        lhs == rhs and in_subring,
        lhs,
        rhs,
        {
            "delta": representer.delta,
            "coefficients_in_frobenius_subring": in_subring,
        },
    )
