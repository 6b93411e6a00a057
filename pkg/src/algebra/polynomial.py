"""
Sparse multivariate polynomials over F_p.

Terms are stored as {exponent tuple: residue}, with zero coefficients
stripped eagerly so that two equal polynomials always have equal term
dictionaries. Instances are immutable; every operation returns a new value.
"""
from __future__ import annotations

import math
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from src.algebra.field import FpScalar, require_prime
from src.algebra.multiindex import MultiIndex, graded_lex_key, make_multiindex
from src.utils.errors import (
    DimensionMismatchError,
    DomainError,
    InexactDivisionError,
    ModulusMismatchError,
)

Scalar = Union[int, FpScalar]

# Degree of the zero polynomial.
NEG_INFINITY = -math.inf


class Polynomial:
    """An element of F_p[x_1, ..., x_n]."""

    __slots__ = ("_p", "_n", "_terms", "_hash")

    def __init__(
        self,
        p: int,
        n: int,
        terms: Optional[Mapping[Sequence[int], Scalar]] = None,
    ):
        require_prime(p)
        if n < 1:
            raise DomainError(f"a polynomial ring needs n >= 1 variables, got {n}")
        clean: Dict[MultiIndex, int] = {}
        for exponent, coefficient in (terms or {}).items():
            alpha = make_multiindex(exponent, n)
            if isinstance(coefficient, FpScalar) and coefficient.modulus != p:
                raise ModulusMismatchError(
                    f"coefficient over F_{coefficient.modulus} in a polynomial over F_{p}"
                )
            value = (clean.get(alpha, 0) + int(coefficient)) % p
            if value:
                clean[alpha] = value
            else:
                clean.pop(alpha, None)
        self._p = p
        self._n = n
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, p: int, n: int, terms: Dict[MultiIndex, int]) -> "Polynomial":
        """Wrap an already reduced, zero-free term dict without validation."""
        poly = cls.__new__(cls)
        poly._p = p
        poly._n = n
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def _reduced(cls, p: int, n: int, terms: Dict[MultiIndex, int]) -> "Polynomial":
        return cls._raw(p, n, {e: c % p for e, c in terms.items() if c % p})

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, p: int, n: int) -> "Polynomial":
        return cls(p, n)

    @classmethod
    def one(cls, p: int, n: int) -> "Polynomial":
        return cls.constant(1, p, n)

    @classmethod
    def constant(cls, value: Scalar, p: int, n: int) -> "Polynomial":
        return cls(p, n, {(0,) * n: value})

    @classmethod
    def variable(cls, i: int, p: int, n: int) -> "Polynomial":
        """x_{i+1}; i is 0-based."""
        if not 0 <= i < n:
            raise DomainError(f"variable index {i} outside [0, {n - 1}]")
        return cls(p, n, {tuple(1 if j == i else 0 for j in range(n)): 1})

    @classmethod
    def monomial(cls, exponent: Sequence[int], p: int, coefficient: Scalar = 1) -> "Polynomial":
        """coefficient * X^exponent; n is the exponent length."""
        return cls(p, len(exponent), {tuple(exponent): coefficient})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def p(self) -> int:
        return self._p

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[MultiIndex, int]:
        return MappingProxyType(self._terms)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    def sorted_terms(self, descending: bool = True) -> list[Tuple[MultiIndex, int]]:
        """Terms ordered by graded-lex order of their exponents."""
        return sorted(
            self._terms.items(), key=lambda item: graded_lex_key(item[0]), reverse=descending
        )

    def coefficient(self, exponent: Sequence[int]) -> FpScalar:
        return FpScalar(self._terms.get(tuple(exponent), 0), self._p)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self._n in self._terms)

    def is_unit(self) -> bool:
        """Nonzero constant, i.e. an element of k^x."""
        return bool(self._terms) and self.is_constant()

    def constant_value(self) -> FpScalar:
        """The constant term."""
        return self.coefficient((0,) * self._n)

    def degree(self) -> Union[int, float]:
        """Total degree; minus infinity for the zero polynomial."""
        if not self._terms:
            return NEG_INFINITY
        return max(sum(e) for e in self._terms)

    def leading_term(self) -> Tuple[MultiIndex, int]:
        """Greatest (exponent, coefficient) in graded-lex order."""
        if not self._terms:
            raise DomainError("the zero polynomial has no leading term")
        exponent = max(self._terms, key=graded_lex_key)
        return exponent, self._terms[exponent]

    def in_frobenius_subring(self) -> bool:
        """True when every exponent is componentwise divisible by p (f in k[X^p])."""
        p = self._p
        return all(a % p == 0 for e in self._terms for a in e)

    # ------------------------------------------------------------------
    # Ring structure
    # ------------------------------------------------------------------

    def _check_compatible(self, other: "Polynomial") -> None:
        if other._p != self._p:
            raise ModulusMismatchError(f"F_{self._p} vs F_{other._p} polynomials")
        if other._n != self._n:
            raise DimensionMismatchError(
                f"polynomials in {self._n} and {other._n} variables"
            )

    def _lift(self, other: object) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            self._check_compatible(other)
            return other
        if isinstance(other, FpScalar):
            if other.modulus != self._p:
                raise ModulusMismatchError(f"F_{other.modulus} scalar with F_{self._p} polynomial")
            return Polynomial.constant(other.residue, self._p, self._n)
        if isinstance(other, int) and not isinstance(other, bool):
            return Polynomial.constant(other, self._p, self._n)
        return None

    def __add__(self, other: object) -> "Polynomial":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        p = self._p
        out = dict(self._terms)
        for e, c in rhs._terms.items():
            value = (out.get(e, 0) + c) % p
            if value:
                out[e] = value
            else:
                out.pop(e, None)
        return Polynomial._raw(p, self._n, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        p = self._p
        return Polynomial._raw(p, self._n, {e: (-c) % p for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "Polynomial":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "Polynomial":
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def scale(self, factor: Scalar) -> "Polynomial":
        if isinstance(factor, FpScalar) and factor.modulus != self._p:
            raise ModulusMismatchError(f"F_{factor.modulus} scalar with F_{self._p} polynomial")
        value = int(factor) % self._p
        if value == 0:
            return Polynomial.zero(self._p, self._n)
        if value == 1:
            return self
        p = self._p
        return Polynomial._raw(p, self._n, {e: c * value % p for e, c in self._terms.items()})

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, FpScalar)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        if not self._terms or not other._terms:
            return Polynomial.zero(self._p, self._n)
        out: Dict[MultiIndex, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._reduced(self._p, self._n, out)

    __rmul__ = __mul__

    def frobenius_power(self) -> "Polynomial":
        """f^p, computed as sum c * X^(p e) since c^p = c in F_p."""
        p = self._p
        return Polynomial._raw(
            p, self._n, {tuple(p * a for a in e): c for e, c in self._terms.items()}
        )

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError(f"polynomial exponents must be non-negative ints, got {exponent!r}")
        if exponent == 0:
            return Polynomial.one(self._p, self._n)
        if exponent >= self._p:
            high, low = divmod(exponent, self._p)
            return (self ** high).frobenius_power() * (self ** low)
        result = Polynomial.one(self._p, self._n)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def exact_divide(self, divisor: "Polynomial") -> "Polynomial":
        """
        The quotient q with self = q * divisor.

        Leading-term division in graded-lex order; since that order is a
        monomial order, a leading monomial that is not divisible proves the
        division is not exact.
        """
        self._check_compatible(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p, n = self._p, self._n
        if divisor.is_unit():
            return self.scale(pow(divisor.constant_value().residue, -1, p))
        lead_e, lead_c = divisor.leading_term()
        lead_inv = pow(lead_c, -1, p)
        remainder = dict(self._terms)
        quotient: Dict[MultiIndex, int] = {}
        while remainder:
            e = max(remainder, key=graded_lex_key)
            if any(a < b for a, b in zip(e, lead_e)):
                raise InexactDivisionError(
                    f"leading monomial {e} is not divisible by {lead_e}"
                )
            q_e = tuple(a - b for a, b in zip(e, lead_e))
            q_c = remainder[e] * lead_inv % p
            quotient[q_e] = q_c
            for d_e, d_c in divisor._terms.items():
                t = tuple(a + b for a, b in zip(q_e, d_e))
                value = (remainder.get(t, 0) - q_c * d_c) % p
                if value:
                    remainder[t] = value
                else:
                    remainder.pop(t, None)
        return Polynomial._raw(p, n, quotient)

    # ------------------------------------------------------------------
    # Calculus
    # ------------------------------------------------------------------

    def derive(self, alpha: Sequence[int]) -> "Polynomial":
        """d^alpha, with falling-factorial coefficients reduced mod p."""
        alpha = make_multiindex(alpha)
        if len(alpha) != self._n:
            raise DimensionMismatchError(
                f"derivative order {alpha} does not match {self._n} variables"
            )
        if not any(alpha):
            return self
        p = self._p
        out: Dict[MultiIndex, int] = {}
        for e, c in self._terms.items():
            if any(a < b for a, b in zip(e, alpha)):
                continue
            value = c * math.prod(math.perm(a, b) for a, b in zip(e, alpha)) % p
            if value:
                out[tuple(a - b for a, b in zip(e, alpha))] = value
        return Polynomial._raw(p, self._n, out)

    def partial(self, i: int) -> "Polynomial":
        """d/dx_{i+1}; i is 0-based."""
        if not 0 <= i < self._n:
            raise DomainError(f"variable index {i} outside [0, {self._n - 1}]")
        return self.derive(tuple(1 if j == i else 0 for j in range(self._n)))

    # ------------------------------------------------------------------
    # Comparison and display
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return (self._p, self._n, self._terms) == (other._p, other._n, other._terms)
        if isinstance(other, (int, FpScalar)) and not isinstance(other, bool):
            try:
                lifted = self._lift(other)
            except ModulusMismatchError:
                return False
            return lifted is not None and self._terms == lifted._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._p, self._n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial(p={self._p}, n={self._n}, terms={dict(self.sorted_terms())})"

    def __str__(self) -> str:
        return format_canonical(self)


def format_canonical(f: Polynomial, names: Optional[Sequence[str]] = None) -> str:
    """
    Render f with terms in descending graded-lex order.

    Coefficients are printed in 1..p-1, a coefficient of 1 is omitted in front
    of a variable part, and the zero polynomial is "0".
    """
    if f.is_zero():
        return "0"
    if names is None:
        names = [f"x{i + 1}" for i in range(f.n)]
    rendered = []
    for exponent, coefficient in f.sorted_terms(descending=True):
        factors = []
        for name, power in zip(names, exponent):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        if not factors:
            rendered.append(str(coefficient))
        elif coefficient == 1:
            rendered.append("*".join(factors))
        else:
            rendered.append("*".join([str(coefficient)] + factors))
    return " + ".join(rendered)


def derive(f: Polynomial, alpha: Sequence[int]) -> Polynomial:
    return f.derive(alpha)


def sum_polynomials(items: Iterable[Polynomial], p: int, n: int) -> Polynomial:
    """Sum with an explicit zero for empty input."""
    total = Polynomial.zero(p, n)
    for item in items:
        total = total + item
    return total
