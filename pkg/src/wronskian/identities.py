"""
Exact identities of the Wronskian engine.

- the alternating derivative sum and its closed form
- the univariate Wronskian of 1, f, ..., f^(r-1)
- the Kronecker-structured matrix Q = ||d^alpha X^beta|| and c_p
- det W = c_p^n Delta(F), with the factorization W = Q U(F)^T
- block structure of the reduced Wronskian
"""
from __future__ import annotations

import math
from functools import reduce
from typing import List, Sequence

import numpy as np

from src.algebra.field import FpScalar, require_prime
from src.algebra.jacobian import jacobian
from src.algebra.matrix import PolyMatrix, det_fraction_free
from src.algebra.multiindex import DiagonalInterval, check_capacity, zero_index
from src.algebra.polymap import PolyMap
from src.algebra.polynomial import Polynomial
from src.frobenius.identities import IdentityCheck
from src.frobenius.umatrix import delta, q_exponent, u_matrix
from src.utils.errors import DomainError, InvariantViolationError
from src.utils.logger import setup_logger
from src.wronskian.assembly import check_order, diagonal_block, reduced_wronskian, wronskian_matrix

logger = setup_logger(__name__)


# ----------------------------------------------------------------------
# Alternating derivative sums
# ----------------------------------------------------------------------

def _derivation_order(f: Polynomial, derivation_indices: Sequence[int]) -> tuple[int, ...]:
    order = list(zero_index(f.n))
    for k in derivation_indices:
        if not 1 <= k <= f.n:
            raise DomainError(f"derivation index {k} outside [1, {f.n}]")
        order[k - 1] += 1
    return tuple(order)


def alternating_derivative_sum(f: Polynomial, derivation_indices: Sequence[int], m: int) -> Polynomial:
    """
    sum_{k=0}^{m} C(m, k) (-f)^(m-k) D_1 ... D_l f^k, with D_k = d/dx_{i_k}.

    Requires l <= m < p so that no binomial C(m, k) collapses mod p.
    """
    l = len(derivation_indices)
    order = _derivation_order(f, derivation_indices)
    if m < l:
        raise DomainError(f"need m >= l, got m={m}, l={l}")
    if m >= f.p:
        raise DomainError(f"need m < p = {f.p}, got m={m}")
    total = Polynomial.zero(f.p, f.n)
    negative = -f
    for k in range(m + 1):
        term = (negative ** (m - k)) * (f ** k).derive(order)
        total = total + term.scale(math.comb(m, k))
    return total


def alternating_derivative_closed_form(f: Polynomial, derivation_indices: Sequence[int], m: int) -> Polynomial:
    """0 when m > l, l! prod_k D_k f when m = l."""
    l = len(derivation_indices)
    _derivation_order(f, derivation_indices)
    if m > l:
        return Polynomial.zero(f.p, f.n)
    product = Polynomial.constant(math.factorial(l), f.p, f.n)
    for k in derivation_indices:
        product = product * f.partial(k - 1)
    return product


def verify_alternating_derivative_sum(f: Polynomial, derivation_indices: Sequence[int], m: int) -> IdentityCheck:
    lhs = alternating_derivative_sum(f, derivation_indices, m)
    rhs = alternating_derivative_closed_form(f, derivation_indices, m)
    return IdentityCheck(
        "alternating-derivative-sum",
        lhs == rhs,
        lhs,
        rhs,
        {"indices": list(derivation_indices), "m": m},
    )


# ----------------------------------------------------------------------
# Constants and the matrix Q
# ----------------------------------------------------------------------

def c_p_constant(p: int) -> FpScalar:
    """c_p = prod_{k=1}^{p-1} k! mod p; never zero."""
    require_prime(p)
    return FpScalar(math.prod(math.factorial(k) for k in range(1, p)), p)


def univariate_power_wronskian_check(f: Polynomial, r: int) -> IdentityCheck:
    """det ||D^k f^l||_{0<=k,l<r} == (f')^(r(r-1)/2) prod_{k=1}^{r-1} k!."""
    if f.n != 1:
        raise DomainError(f"univariate check needs n = 1, got n = {f.n}")
    check_order(r, f.p)
    lhs = det_fraction_free(wronskian_matrix(PolyMap((f,)), r))
    rhs = (f.partial(0) ** (r * (r - 1) // 2)).scale(
        math.prod(math.factorial(k) for k in range(1, r)) % f.p
    )
    return IdentityCheck("univariate-power-wronskian", lhs == rhs, lhs, rhs, {"r": r})


def _univariate_factor(p: int, n: int, i: int) -> np.ndarray:
    """Q_i = ||d_i^a x_i^b||_{0<=a,b<p} as polynomials in all n variables."""
    factor = np.empty((p, p), dtype=object)
    for b in range(p):
        exponent = [0] * n
        exponent[i] = b
        x_b = Polynomial.monomial(exponent, p)
        for a in range(p):
            order = [0] * n
            order[i] = a
            factor[a, b] = x_b.derive(order)
    return factor


def q_matrix(p: int, n: int) -> PolyMatrix:
    """
    Q = ||d^alpha X^beta|| built as the Kronecker product Q_1 (x) ... (x) Q_n.

    numpy.kron lays the product out lexicographically; rows and columns are
    then permuted into the graded-lex order every other matrix uses.
    """
    require_prime(p)
    check_capacity(p, n)
    product = reduce(np.kron, [_univariate_factor(p, n, i) for i in range(n)])
    index = list(DiagonalInterval(0, p - 1, n))
    flat = [int(np.ravel_multi_index(alpha, (p,) * n)) for alpha in index]
    return PolyMatrix([[product[i, j] for j in flat] for i in flat], p, n)


def q_matrix_direct(p: int, n: int) -> PolyMatrix:
    """Q entry by entry, as a second path against the Kronecker construction."""
    require_prime(p)
    check_capacity(p, n)
    index = list(DiagonalInterval(0, p - 1, n))
    return PolyMatrix(
        [[Polynomial.monomial(beta, p).derive(alpha) for beta in index] for alpha in index], p, n
    )


# ----------------------------------------------------------------------
# Relations with Delta(F)
# ----------------------------------------------------------------------

def verify_wronskian_delta_relation(F: PolyMap) -> IdentityCheck:
    """
    det W == c_p^n Delta(F) for W = ||d^alpha F^beta||_{alpha,beta in [0,p-1]}.

    Also checks the factorization W == Q U(F)^T and det Q == c_p^n.
    """
    p, n = F.p, F.n
    W = wronskian_matrix(F, p)
    U = u_matrix(F).matrix
    Q = q_matrix(p, n)
    scale = c_p_constant(p) ** n

    lhs = det_fraction_free(W)
    rhs = delta(F).scale(scale)
    factorization = W == Q @ U.transpose()
    det_q = det_fraction_free(Q)
    det_q_ok = det_q == Polynomial.constant(scale, p, n)
    return IdentityCheck(
        "wronskian-delta",
        lhs == rhs and factorization and det_q_ok,
        lhs,
        rhs,
        {"factorization": factorization, "det_q": det_q, "c_p_to_n": scale},
    )


def verify_block_structure(F: PolyMap, r: int) -> IdentityCheck:
    """
    Block triangularization of W: T unitriangular with det T = 1, W' = W T
    block lower triangular, and det W equal to the product of the diagonal
    blocks computed independently from the first partials of F.
    """
    try:
        assembly = reduced_wronskian(F, r)
    except InvariantViolationError as error:
        zero = Polynomial.zero(F.p, F.n)
        return IdentityCheck("block-structure", False, zero, zero, {"violation": str(error)})

    det_w = det_fraction_free(assembly.W)
    det_t = det_fraction_free(assembly.T)
    det_wprime = det_fraction_free(assembly.Wprime)
    blocks_agree = True
    product = Polynomial.one(F.p, F.n)
    for l in range(len(assembly.block_sizes)):
        block = diagonal_block(F, r, l)
        blocks_agree = blocks_agree and block == assembly.block(l)
        product = product * det_fraction_free(block)
    holds = det_t == 1 and det_w == det_wprime and det_w == product and blocks_agree
    return IdentityCheck(
        "block-structure",
        holds,
        det_w,
        product,
        {
            "det_t": det_t,
            "det_wprime": det_wprime,
            "blocks_agree": blocks_agree,
            "block_sizes": list(assembly.block_sizes),
        },
    )


def verify_grand_consistency(F: PolyMap) -> IdentityCheck:
    """det W == c_p^n Delta(F) == c_p^n j(F)^q along three independent paths."""
    p, n = F.p, F.n
    scale = c_p_constant(p) ** n
    det_w = det_fraction_free(wronskian_matrix(F, p))
    via_delta = delta(F).scale(scale)
    via_jacobian = (jacobian(F) ** q_exponent(p, n)).scale(scale)
    return IdentityCheck(
        "wronskian-jacobian-power",
        det_w == via_delta == via_jacobian,
        det_w,
        via_jacobian,
        {"via_delta": via_delta},
    )


def block_determinants(F: PolyMap, r: int) -> List[Polynomial]:
    """det of every diagonal grade block, l = 0 .. n(r-1)."""
    check_order(r, F.p)
    return [det_fraction_free(diagonal_block(F, r, l)) for l in range(F.n * (r - 1) + 1)]
