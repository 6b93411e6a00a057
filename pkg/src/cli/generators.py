"""
Deterministic random instances for verification trials.

Seed mixing: the seed of trial t under master seed s is the first 64-bit word
of numpy.random.SeedSequence([s, t]); the trial's generator is
numpy.random.default_rng(trial seed). A single trial can therefore be
re-run from (s, t) alone, or from the recorded trial seed.

Every tenth trial uses a fixed template so both Jacobian regimes appear:

    trial % 10 == 0   identity-like:    f_i = x_i + c_i + (terms in k[X^p]), j(F) = 1
    trial % 10 == 1   p-th-power-like:  every f_i in k[X^p],                 j(F) = 0

With max_degree = 0 every template degenerates to constant components.
"""
from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.algebra.multiindex import MultiIndex, bounded_compositions
from src.algebra.polymap import PolyMap
from src.algebra.polynomial import Polynomial
from src.cli.session import SessionConfig
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


class Template(str, Enum):
    GENERIC = "generic"
    IDENTITY_LIKE = "identity-like"
    POWER_LIKE = "pth-power-like"


def trial_seed(seed: int, trial: int) -> int:
    """The documented seed-mixing function."""
    state = np.random.SeedSequence([seed, trial]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def template_for(trial: int) -> Template:
    if trial % 10 == 0:
        return Template.IDENTITY_LIKE
    if trial % 10 == 1:
        return Template.POWER_LIKE
    return Template.GENERIC


@lru_cache(maxsize=None)
def monomials_up_to(max_degree: int, n: int, step: int = 1) -> Tuple[MultiIndex, ...]:
    """Exponents of total degree <= max_degree whose entries are all multiples of step."""
    exponents = []
    for total in range(0, max_degree // step + 1):
        for alpha in bounded_compositions(total, (total,) * n):
            exponents.append(tuple(step * a for a in alpha))
    return tuple(exponents)


class InstanceGenerator:
    """
    Draws the random inputs of one trial.

    Draws happen in call order from a single generator, so a law that asks
    for (F, G) always gets the same pair. Every drawn input is recorded in
    canonical form under a label for counterexample reports.
    """

    def __init__(self, config: SessionConfig, trial: int):
        self.config = config
        self.trial = trial
        self.seed = trial_seed(config.seed, trial)
        self.rng = np.random.default_rng(self.seed)
        self.inputs: Dict[str, str] = {}

    # ------------------------------------------------------------------
    # Polynomials
    # ------------------------------------------------------------------

    def _draw_terms(self, exponents: Tuple[MultiIndex, ...], count: int) -> Dict[MultiIndex, int]:
        p = self.config.p
        terms: Dict[MultiIndex, int] = {}
        if count <= 0 or not exponents:
            return terms
        picks = self.rng.choice(len(exponents), size=min(count, len(exponents)), replace=False)
        for pick in sorted(int(i) for i in picks):
            terms[exponents[pick]] = int(self.rng.integers(0, p))
        return terms

    def polynomial(self, label: Optional[str] = None, n: Optional[int] = None) -> Polynomial:
        """At most max_terms terms of total degree <= max_degree, coefficients uniform in [0, p-1]."""
        p, config = self.config.p, self.config
        n = n or config.n
        count = int(self.rng.integers(1, config.max_terms + 1))
        f = Polynomial(p, n, self._draw_terms(monomials_up_to(config.max_degree, n), count))
        if label:
            self.inputs[label] = str(f)
        return f

    def _identity_like(self, i: int) -> Polynomial:
        p, n, config = self.config.p, self.config.n, self.config
        if config.max_degree == 0:
            return Polynomial.constant(int(self.rng.integers(0, p)), p, n)
        terms: Dict[MultiIndex, int] = {tuple(1 if j == i else 0 for j in range(n)): 1}
        if config.max_terms >= 2:
            terms[(0,) * n] = int(self.rng.integers(0, p))
        frobenius = tuple(e for e in monomials_up_to(config.max_degree, n, p) if any(e))
        extra = int(self.rng.integers(0, max(config.max_terms - 2, 0) + 1))
        terms.update(self._draw_terms(frobenius, extra))
        return Polynomial(p, n, terms)

    def _power_like(self) -> Polynomial:
        p, n, config = self.config.p, self.config.n, self.config
        count = int(self.rng.integers(1, config.max_terms + 1))
        return Polynomial(p, n, self._draw_terms(monomials_up_to(config.max_degree, n, p), count))

    def poly_map(self, label: str = "F", use_template: bool = True) -> PolyMap:
        """n components; the trial template applies unless use_template is False."""
        template = template_for(self.trial) if use_template else Template.GENERIC
        n = self.config.n
        if template is Template.IDENTITY_LIKE:
            components = [self._identity_like(i) for i in range(n)]
        elif template is Template.POWER_LIKE:
            components = [self._power_like() for _ in range(n)]
        else:
            components = [self.polynomial() for _ in range(n)]
        F = PolyMap(tuple(components))
        self.inputs[label] = str(F)
        logger.debug(f"trial {self.trial} ({template.value}): {label} = ({F})")
        return F

    # ------------------------------------------------------------------
    # Scalars
    # ------------------------------------------------------------------

    def scalar_matrix(self, label: str = "A", singular: Optional[bool] = None) -> List[List[int]]:
        """
        Uniform n x n matrix over F_p. Singular ones are forced on the
        p-th-power-like trials by copying a multiple of the first row last.
        """
        p, n = self.config.p, self.config.n
        if singular is None:
            singular = template_for(self.trial) is Template.POWER_LIKE
        A = self.rng.integers(0, p, size=(n, n)).tolist()
        if singular:
            factor = int(self.rng.integers(0, p))
            A[-1] = [(factor * a) % p for a in A[0]] if n > 1 else [0]
        self.inputs[label] = str(A)
        return [[int(a) for a in row] for row in A]

    def choice(self, options: int, size: int) -> List[int]:
        """size indices drawn uniformly with replacement from range(options)."""
        return [int(i) for i in self.rng.integers(0, options, size=size)]


def random_poly_map(config: SessionConfig, trial: int) -> PolyMap:
    """The map of a trial: a pure function of (seed, trial) and the session bounds."""
    return InstanceGenerator(config, trial).poly_map()
