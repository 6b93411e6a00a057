"""
Multiindex arithmetic over N^n.

A multiindex is a plain tuple of non-negative ints. It indexes monomials
(X^a), higher derivatives (d^a), powers of a map (F^a) and the rows and
columns of every p^n x p^n matrix in the toolkit. All matrices use the
graded-lex enumeration of a diagonal interval [k, m] for their layout, so
that rows of equal total degree form contiguous blocks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence, Tuple

from config import get_config
from src.algebra.field import FpScalar, require_prime
from src.utils.errors import CapacityError, DimensionMismatchError, DomainError

MultiIndex = Tuple[int, ...]


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def make_multiindex(components: Sequence[int], n: int | None = None) -> MultiIndex:
    """Validate and freeze a component sequence."""
    alpha = tuple(int(c) for c in components)
    if not alpha:
        raise DomainError("a multiindex needs at least one component")
    if n is not None and len(alpha) != n:
        raise DimensionMismatchError(f"expected {n} components, got {len(alpha)}")
    if any(c < 0 for c in alpha):
        raise DomainError(f"multiindex components must be >= 0, got {alpha}")
    return alpha


def zero_index(n: int) -> MultiIndex:
    return (0,) * n


def unit_index(i: int, n: int) -> MultiIndex:
    """e_i with 0-based i."""
    if not 0 <= i < n:
        raise DomainError(f"variable index {i} outside [0, {n - 1}]")
    return tuple(1 if j == i else 0 for j in range(n))


def degree(alpha: MultiIndex) -> int:
    """|a|, the total degree."""
    return sum(alpha)


def factorial(alpha: MultiIndex) -> int:
    """a! as an exact integer."""
    return math.prod(math.factorial(a) for a in alpha)


def _check_same_length(a: MultiIndex, b: MultiIndex) -> None:
    if len(a) != len(b):
        raise DimensionMismatchError(
            f"multiindices of different dimension: {len(a)} vs {len(b)}"
        )


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    _check_same_length(a, b)
    return tuple(x + y for x, y in zip(a, b))


def subtract(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    """a - b; requires b <= a."""
    _check_same_length(a, b)
    if not leq(b, a):
        raise DomainError(f"{b} is not componentwise <= {a}")
    return tuple(x - y for x, y in zip(a, b))


def leq(a: MultiIndex, b: MultiIndex) -> bool:
    """Componentwise partial order a <= b."""
    _check_same_length(a, b)
    return all(x <= y for x, y in zip(a, b))


def graded_lex_key(alpha: MultiIndex) -> Tuple[int, MultiIndex]:
    """Sort key realising the graded-lex total order."""
    return (sum(alpha), alpha)


def graded_lex_compare(a: MultiIndex, b: MultiIndex) -> Ordering:
    """
    Compare by total degree, ties broken lexicographically left to right.

    Refines the componentwise partial order: a <= b, a != b implies LESS.
    """
    _check_same_length(a, b)
    ka, kb = graded_lex_key(a), graded_lex_key(b)
    if ka < kb:
        return Ordering.LESS
    if ka > kb:
        return Ordering.GREATER
    return Ordering.EQUAL


@dataclass(frozen=True)
class DiagonalInterval:
    """[k, m] = {a in N^n : k <= a_i <= m for every i}."""

    lower: int
    upper: int
    dimension: int

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DomainError(f"dimension must be >= 1, got {self.dimension}")
        if not 0 <= self.lower <= self.upper:
            raise DomainError(
                f"interval bounds must satisfy 0 <= k <= m, got [{self.lower}, {self.upper}]"
            )

    @property
    def side(self) -> int:
        return self.upper - self.lower + 1

    @property
    def size(self) -> int:
        return self.side ** self.dimension

    def __contains__(self, alpha: object) -> bool:
        if not isinstance(alpha, tuple) or len(alpha) != self.dimension:
            return False
        return all(self.lower <= a <= self.upper for a in alpha)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(_enumerate_interval(self.lower, self.upper, self.dimension))

    def rank(self, alpha: MultiIndex) -> int:
        """Position of alpha in the graded-lex enumeration."""
        if alpha not in self:
            raise DomainError(
                f"{alpha} lies outside [{self.lower}, {self.upper}]^{self.dimension}"
            )
        return _interval_ranks(self.lower, self.upper, self.dimension)[alpha]

    def grade_blocks(self) -> dict[int, list[MultiIndex]]:
        """Members grouped by total degree, each group in graded-lex order."""
        blocks: dict[int, list[MultiIndex]] = {}
        for alpha in self:
            blocks.setdefault(sum(alpha), []).append(alpha)
        return blocks


def check_capacity(side: int, n: int) -> int:
    """Return side**n, raising CapacityError above the configured cap."""
    cap = get_config().limits.max_matrix_dim
    # Compare without building a huge integer when n is large.
    if side > 1 and n * math.log2(side) > math.log2(cap) + 1e-9:
        raise CapacityError(f"{side}^{n} exceeds the size cap {cap}")
    size = side ** n
    if size > cap:
        raise CapacityError(f"{side}^{n} = {size} exceeds the size cap {cap}")
    return size


@lru_cache(maxsize=64)
def _enumerate_interval(k: int, m: int, n: int) -> Tuple[MultiIndex, ...]:
    check_capacity(m - k + 1, n)
    members = product(range(k, m + 1), repeat=n)
    return tuple(sorted(members, key=graded_lex_key))


@lru_cache(maxsize=64)
def _interval_ranks(k: int, m: int, n: int) -> dict[MultiIndex, int]:
    return {alpha: i for i, alpha in enumerate(_enumerate_interval(k, m, n))}


def interval_enumerate(k: int, m: int, n: int) -> list[MultiIndex]:
    """All of [k, m] in ascending graded-lex order."""
    return list(DiagonalInterval(k, m, n))


def rank_in_interval(alpha: MultiIndex, p: int) -> int:
    """Flat matrix index of alpha within the graded-lex enumeration of [0, p-1]."""
    return DiagonalInterval(0, p - 1, len(alpha)).rank(alpha)


def bounded_compositions(total: int, bound: MultiIndex) -> Iterator[MultiIndex]:
    """
    Multiindices t with |t| = total and t <= bound, in lexicographic order.

    These are the splittings the Leibniz expansion of a higher derivative
    runs over.
    """
    n = len(bound)
    if total < 0 or total > sum(bound):
        return

    def _walk(i: int, remaining: int, prefix: list[int]) -> Iterator[MultiIndex]:
        if i == n - 1:
            if remaining <= bound[i]:
                yield tuple(prefix + [remaining])
            return
        tail_capacity = sum(bound[i + 1:])
        low = max(0, remaining - tail_capacity)
        for value in range(low, min(bound[i], remaining) + 1):
            yield from _walk(i + 1, remaining - value, prefix + [value])

    yield from _walk(0, total, [])


def binomial(a: MultiIndex, b: MultiIndex, p: int) -> FpScalar:
    """
    Multiindex binomial prod_i C(a_i, b_i) reduced mod p.

    Defined as 0 when b is not <= a. Exact integer factorials are used
    (math.comb), reduction happens once at the end.
    """
    _check_same_length(a, b)
    require_prime(p)
    if not leq(b, a):
        return FpScalar(0, p)
    return FpScalar(math.prod(math.comb(x, y) for x, y in zip(a, b)), p)


def multinomial(a: MultiIndex, parts: Sequence[MultiIndex], p: int) -> FpScalar:
    """prod_i a_i! / (b1_i! ... bk_i!) reduced mod p; the parts must sum to a."""
    require_prime(p)
    if not parts:
        raise DomainError("multinomial needs at least one part")
    total = zero_index(len(a))
    for part in parts:
        total = add(total, part)
    if total != a:
        raise DomainError(f"parts sum to {total}, expected {a}")
    value = 1
    for i, a_i in enumerate(a):
        denominator = math.prod(math.factorial(part[i]) for part in parts)
        value *= math.factorial(a_i) // denominator
    return FpScalar(value, p)
