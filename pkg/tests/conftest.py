"""
Pytest configuration and shared fixtures.

Provides worked fixture maps, session configs, hypothesis strategies for
random polynomials and a sympy bridge used as an independent oracle.
"""
import os
from typing import Dict, Sequence

import pytest
import sympy
from hypothesis import strategies as st

from config import get_config
from src.algebra.polymap import PolyMap
from src.algebra.polynomial import Polynomial
from src.cli.session import SessionConfig


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long verification grids (deselect with -m 'not slow')")


CONFIG_ENV = (
    "FJT_MAX_MATRIX_DIM", "FJT_COFACTOR_CAP", "FJT_MAX_EXPONENT", "FJT_MAX_PRIME",
    "FJT_P", "FJT_N", "FJT_SEED", "FJT_TRIALS", "FJT_MAX_DEGREE", "FJT_MAX_TERMS", "FJT_OUTPUT",
    "FJT_FAILURE_LOG_DIR", "FJT_LOG_TO_FILE",
)


@pytest.fixture(scope="session", autouse=True)
def default_limits():
    """Run against the built-in limits, not a developer's .env."""
    for name in CONFIG_ENV:
        os.environ.pop(name, None)
    get_config(reload=True)


@pytest.fixture
def reload_config(monkeypatch):
    """Set environment overrides with monkeypatch, then call the returned reload."""
    yield lambda: get_config(reload=True)
    monkeypatch.undo()
    get_config(reload=True)


# ----------------------------------------------------------------------
# Builders
# ----------------------------------------------------------------------

def poly(p: int, n: int, terms: Dict[Sequence[int], int]) -> Polynomial:
    return Polynomial(p, n, terms)


def polymap(p: int, n: int, *components: Dict[Sequence[int], int]) -> PolyMap:
    return PolyMap(tuple(Polynomial(p, n, terms) for terms in components))


def to_sympy(f: Polynomial, symbols: Sequence[sympy.Symbol]) -> sympy.Poly:
    """f as a sympy Poly over GF(p)."""
    return sympy.Poly.from_dict(dict(f.terms) or {(0,) * f.n: 0}, *symbols, modulus=f.p)


def sympy_terms(poly_: sympy.Poly, p: int) -> Dict[tuple, int]:
    """Term dict of a sympy Poly with residues in [0, p-1] and zeros dropped."""
    terms = {tuple(e): int(c) % p for e, c in poly_.as_dict().items()}
    return {e: c for e, c in terms.items() if c}


# ----------------------------------------------------------------------
# Hypothesis strategies
# ----------------------------------------------------------------------

def polynomials(p: int, n: int, max_degree: int = 3, max_terms: int = 4) -> st.SearchStrategy:
    """Random polynomials over F_p with bounded per-variable degree and term count."""
    exponents = st.tuples(*[st.integers(0, max_degree)] * n)
    return st.dictionaries(exponents, st.integers(0, p - 1), max_size=max_terms).map(
        lambda terms: Polynomial(p, n, terms)
    )


def polymaps(p: int, n: int, max_degree: int = 2, max_terms: int = 3) -> st.SearchStrategy:
    """Random maps (f_1, ..., f_n) with components drawn from polynomials()."""
    component = polynomials(p, n, max_degree=max_degree, max_terms=max_terms)
    return st.tuples(*[component] * n).map(PolyMap)


def multiindices(n: int, bound: int = 4) -> st.SearchStrategy:
    return st.tuples(*[st.integers(0, bound)] * n)


# ----------------------------------------------------------------------
# Fixtures
# ----------------------------------------------------------------------

@pytest.fixture
def session_p2n2() -> SessionConfig:
    return SessionConfig(p=2, n=2, seed=0, trials=10, max_degree=3, max_terms=4)


@pytest.fixture
def session_p3n1() -> SessionConfig:
    return SessionConfig(p=3, n=1, seed=0, trials=10, max_degree=3, max_terms=4)


@pytest.fixture
def session_p5n2() -> SessionConfig:
    return SessionConfig(p=5, n=2, seed=0, trials=5, max_degree=2, max_terms=3)


@pytest.fixture
def sum_product_map() -> PolyMap:
    """(x1 + x2, x1*x2) over F_2; Delta = x1^2 + x2^2."""
    return polymap(2, 2, {(1, 0): 1, (0, 1): 1}, {(1, 1): 1})


@pytest.fixture
def unit_jacobian_map() -> PolyMap:
    """x + x^2 over F_2; U = [[1, 0], [x^2, 1]]."""
    return polymap(2, 1, {(1,): 1, (2,): 1})


@pytest.fixture
def frobenius_square_map() -> PolyMap:
    """(x1^2, x2) over F_2; j = 0."""
    return polymap(2, 2, {(2, 0): 1}, {(0, 1): 1})


@pytest.fixture
def cubic_map_p3() -> PolyMap:
    """(x1 + x2^2, x2 + x1^3) over F_3; j = 1 - 2*3*x1^2*x2 = 1."""
    return polymap(3, 2, {(1, 0): 1, (0, 2): 1}, {(0, 1): 1, (3, 0): 1})


@pytest.fixture
def tmp_failure_dir(tmp_path):
    return tmp_path / "failures"
