"""
Polynomial maps F = (f_1, ..., f_n) and the substitution endomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from src.algebra.multiindex import MultiIndex, make_multiindex
from src.algebra.polynomial import Polynomial, format_canonical
from src.utils.errors import DimensionMismatchError, DomainError, ModulusMismatchError


@dataclass(frozen=True)
class PolyMap:
    """A square polynomial map; component i is the image of x_{i+1} under phi_F."""

    components: Tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        components = tuple(self.components)
        object.__setattr__(self, "components", components)
        if not components:
            raise DomainError("a polynomial map needs at least one component")
        p, n = components[0].p, components[0].n
        for f in components:
            if f.p != p:
                raise ModulusMismatchError(f"components over F_{p} and F_{f.p}")
            if f.n != n:
                raise DimensionMismatchError(f"components in {n} and {f.n} variables")
        if len(components) != n:
            raise DimensionMismatchError(
                f"a map of k[x_1..x_{n}] needs {n} components, got {len(components)}"
            )

    @classmethod
    def of(cls, components: Iterable[Polynomial]) -> "PolyMap":
        return cls(tuple(components))

    @classmethod
    def identity(cls, p: int, n: int) -> "PolyMap":
        return cls(tuple(Polynomial.variable(i, p, n) for i in range(n)))

    @property
    def p(self) -> int:
        return self.components[0].p

    @property
    def n(self) -> int:
        return self.components[0].n

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def negated(self) -> "PolyMap":
        return PolyMap(tuple(-f for f in self.components))

    def scaled(self, factor: int) -> "PolyMap":
        return PolyMap(tuple(f.scale(factor) for f in self.components))

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """phi_self applied to every component of inner: (g_1(F), ..., g_n(F))."""
        return PolyMap(tuple(substitute(g, self) for g in inner.components))

    def __str__(self) -> str:
        return "; ".join(format_canonical(f) for f in self.components)


class PowerCache:
    """
    Memoised F^alpha for one map.

    F^alpha is built from F^(alpha - e_i) * f_i, so enumerating a whole
    interval costs one multiplication per member.
    """

    def __init__(self, F: PolyMap):
        self.F = F
        self._powers: Dict[MultiIndex, Polynomial] = {
            (0,) * F.n: Polynomial.one(F.p, F.n)
        }

    def __call__(self, alpha: Sequence[int]) -> Polynomial:
        alpha = make_multiindex(alpha)
        if len(alpha) != self.F.n:
            raise DimensionMismatchError(
                f"multiindex {alpha} does not match a map with {self.F.n} components"
            )
        cached = self._powers.get(alpha)
        if cached is not None:
            return cached
        i = max(j for j, a in enumerate(alpha) if a > 0)
        previous = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
        value = self(previous) * self.F[i]
        self._powers[alpha] = value
        return value


def monomial_power(F: PolyMap, alpha: Sequence[int]) -> Polynomial:
    """F^alpha = prod_i f_i^alpha_i."""
    alpha = make_multiindex(alpha)
    if len(alpha) != F.n:
        raise DimensionMismatchError(
            f"multiindex {alpha} does not match a map with {F.n} components"
        )
    result = Polynomial.one(F.p, F.n)
    for f, a in zip(F.components, alpha):
        if a:
            result = result * (f ** a)
    return result


def substitute(g: Polynomial, F: PolyMap) -> Polynomial:
    """Image of g under the algebra endomorphism x_i -> f_i."""
    if g.p != F.p:
        raise ModulusMismatchError(f"F_{g.p} polynomial substituted with an F_{F.p} map")
    if g.n != len(F):
        raise DimensionMismatchError(
            f"polynomial in {g.n} variables substituted with {len(F)} components"
        )
    # Per-variable power tables keep repeated exponents cheap.
    tables: list[Dict[int, Polynomial]] = [{0: Polynomial.one(F.p, F.n)} for _ in F]

    def power(i: int, e: int) -> Polynomial:
        table = tables[i]
        if e not in table:
            table[e] = F[i] ** e
        return table[e]

    result = Polynomial.zero(F.p, F.n)
    for exponent, coefficient in g.terms.items():
        term = Polynomial.constant(coefficient, F.p, F.n)
        for i, e in enumerate(exponent):
            if e:
                term = term * power(i, e)
        result = result + term
    return result
