"""
Seeded randomized verification of the toolkit's exact identities.

Each law draws its inputs for trial t from InstanceGenerator(config, t),
runs one exact check and counts a failure when the check does not hold or
raises a toolkit error. Trials run in index order, so a report is a pure
function of (law, SessionConfig).
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from tqdm import tqdm

from src.algebra.jacobian import jacobian
from src.algebra.polynomial import Polynomial
from src.cli.generators import InstanceGenerator
from src.cli.session import SessionConfig
from src.frobenius.identities import (
    IdentityCheck,
    RepresentationStatus,
    express_in_power_basis,
    is_frobenius_basis,
    linear_map_delta,
    verify_delta_jacobian_power,
    verify_delta_multiplicativity,
    verify_delta_representation,
    verify_principal_jacobian_membership,
)
from src.frobenius.umatrix import delta, linear_map, q_exponent
from src.utils.error_handler import record_failed_trial
from src.utils.errors import AlgebraError, DomainError
from src.utils.logger import setup_logger
from src.wronskian.identities import (
    univariate_power_wronskian_check,
    verify_alternating_derivative_sum,
    verify_block_structure,
    verify_wronskian_delta_relation,
)

logger = setup_logger(__name__)

LawCheck = Callable[[InstanceGenerator], IdentityCheck]


@dataclass(frozen=True)
class Law:
    name: str
    description: str
    check: LawCheck
    # formula5 lives in the univariate ring whatever the session's n is
    dimension: Optional[int] = None


def _combine(name: str, checks: List[IdentityCheck]) -> IdentityCheck:
    """One witness for a batch of sub-checks: the first failure, else the last check."""
    failing = [c for c in checks if not c.holds]
    witness = failing[0] if failing else checks[-1]
    details = dict(witness.details)
    details.update({"subchecks": len(checks), "failed_subchecks": len(failing)})
    return IdentityCheck(name, not failing, witness.lhs, witness.rhs, details)


# ----------------------------------------------------------------------
# Law checks
# ----------------------------------------------------------------------

def _check_alternating_sum(gen: InstanceGenerator) -> IdentityCheck:
    f = gen.polynomial("f")
    n = f.n
    top = min(4, f.p - 1)
    checks = []
    for m in range(top + 1):
        for l in range(m + 1):
            indices = [i + 1 for i in gen.choice(n, l)]
            checks.append(verify_alternating_derivative_sum(f, indices, m))
    return _combine("alternating-derivative-sum", checks)


def _check_blocks(gen: InstanceGenerator) -> IdentityCheck:
    F = gen.poly_map()
    return verify_block_structure(F, F.p)


def _check_univariate_wronskian(gen: InstanceGenerator) -> IdentityCheck:
    f = gen.polynomial("f", n=1)
    checks = [univariate_power_wronskian_check(f, r) for r in range(1, min(f.p, 4) + 1)]
    return _combine("univariate-power-wronskian", checks)


def _check_multiplicativity(gen: InstanceGenerator) -> IdentityCheck:
    F = gen.poly_map("F")
    G = gen.poly_map("G", use_template=False)
    return verify_delta_multiplicativity(F, G)


def _check_linear_map(gen: InstanceGenerator) -> IdentityCheck:
    A = gen.scalar_matrix("A")
    p, n = gen.config.p, gen.config.n
    result = linear_map_delta(A, p)
    expected = Polynomial.constant(result.det_a ** q_exponent(p, n), p, n)
    return IdentityCheck(
        "linear-map-delta",
        result.holds,
        result.delta,
        expected,
        {"det_a": result.det_a, "F": str(linear_map(A, p))},
    )


def _check_wronskian_delta(gen: InstanceGenerator) -> IdentityCheck:
    return verify_wronskian_delta_relation(gen.poly_map())


def _check_delta_jacobian(gen: InstanceGenerator) -> IdentityCheck:
    return verify_delta_jacobian_power(gen.poly_map())


def _check_basis_criterion(gen: InstanceGenerator) -> IdentityCheck:
    """
    is_frobenius_basis(F) agrees with "Delta(F) is a nonzero constant"; for a
    basis every x_i is reproduced over the powers of F.
    """
    F = gen.poly_map()
    value = delta(F)
    basis = is_frobenius_basis(F)
    agrees = basis == value.is_unit()
    reproduced = True
    if basis:
        for i in range(F.n):
            x_i = Polynomial.variable(i, F.p, F.n)
            represented = verify_delta_representation(x_i, F)
            expressed = express_in_power_basis(x_i, F)
            reproduced = reproduced and represented.holds
            reproduced = reproduced and expressed.status is RepresentationStatus.REPRESENTED
    return IdentityCheck(
        "basis-criterion",
        agrees and reproduced,
        jacobian(F),
        value,
        {"is_basis": basis, "delta_is_unit": value.is_unit(), "variables_reproduced": reproduced},
    )


def _check_representation(gen: InstanceGenerator) -> IdentityCheck:
    F = gen.poly_map("F")
    g = gen.polynomial("g")
    return verify_delta_representation(g, F)


def _check_principal_membership(gen: InstanceGenerator) -> IdentityCheck:
    return verify_principal_jacobian_membership(gen.poly_map())


LAWS: Dict[str, Law] = {
    law.name: law
    for law in (
        Law("lemma1", "alternating derivative sum vanishes above l and is l! prod D_k f at m = l",
            _check_alternating_sum),
        Law("prop1-blocks", "W T is block lower triangular and det W is the product of its diagonal blocks",
            _check_blocks),
        Law("formula5", "det ||D^k f^l|| = (f')^(r(r-1)/2) prod k!", _check_univariate_wronskian, dimension=1),
        Law("lemma2", "Delta(phi_F G) = phi_F(Delta(G)) Delta(F)", _check_multiplicativity),
        Law("lemma3", "Delta(AX) = (det A)^q", _check_linear_map),
        Law("lemma4", "det W = c_p^n Delta(F) and W = Q U(F)^T", _check_wronskian_delta),
        Law("prop2", "Delta(F) = j(F)^q", _check_delta_jacobian),
        Law("nousiainen", "powers of F form a k[X^p]-basis iff j(F) is a nonzero constant",
            _check_basis_criterion),
        Law("prop3", "Delta(F) g = sum c_beta F^beta with c_beta in k[X^p]", _check_representation),
        Law("theorem-kf", "j(F)^q lies in k[X^p][F]", _check_principal_membership),
    )
}


def get_law(name: str) -> Law:
    if name not in LAWS:
        raise DomainError(f"unknown law {name!r}; known laws: {', '.join(LAWS)}")
    return LAWS[name]


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------

@dataclass
class Counterexample:
    trial: int
    seed: int
    inputs: Dict[str, str]
    check: Optional[IdentityCheck] = None
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "inputs": dict(self.inputs),
            "check": self.check.to_dict() if self.check is not None else None,
            "error": self.error,
        }

    def describe(self) -> str:
        inputs = ", ".join(f"{k} = ({v})" for k, v in self.inputs.items())
        if self.error is not None:
            return f"trial {self.trial}: {inputs}: {self.error}"
        return f"trial {self.trial}: {inputs}: {self.check.lhs} != {self.check.rhs}"


@dataclass
class VerificationReport:
    law: str
    session: SessionConfig
    trials: int = 0
    failures: int = 0
    first_counterexample: Optional[Counterexample] = None
    trial_seeds: List[int] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        return {
            "law": self.law,
            "p": self.session.p,
            "n": self.session.n,
            "seed": self.session.seed,
            "trials": self.trials,
            "failures": self.failures,
            "passed": self.passed,
            "first_counterexample": (
                self.first_counterexample.to_dict() if self.first_counterexample else None
            ),
            "trial_seeds": list(self.trial_seeds),
            "wall_time": round(self.wall_time, 6) if include_timing else None,
        }


def run_verification(
    law_name: str,
    config: SessionConfig,
    failure_log_dir: Optional[Path] = None,
    progress: Optional[bool] = None,
) -> VerificationReport:
    """Run config.trials seeded trials of one law and aggregate them in trial order."""
    law = get_law(law_name)
    session = config.with_dimension(law.dimension) if law.dimension else config
    if progress is None:
        progress = config.output == "text" and sys.stderr.isatty()

    report = VerificationReport(law=law.name, session=session)
    logger.info(f"Verifying {law.name} ({law.description}): p={session.p}, n={session.n}, "
                f"seed={session.seed}, trials={session.trials}")
    start = time.perf_counter()

    for trial in tqdm(range(session.trials), desc=law.name, file=sys.stderr, disable=not progress):
        gen = InstanceGenerator(session, trial)
        report.trial_seeds.append(gen.seed)
        report.trials += 1
        logger.debug(f"{law.name} trial {trial}: seed {gen.seed}")

        counterexample = None
        try:
            check = law.check(gen)
            if not check.holds:
                counterexample = Counterexample(trial, gen.seed, dict(gen.inputs), check=check)
        except AlgebraError as error:
            counterexample = Counterexample(
                trial, gen.seed, dict(gen.inputs), error=f"{type(error).__name__}: {error}"
            )

        if counterexample is None:
            continue
        report.failures += 1
        logger.error(f"{law.name} failed on {counterexample.describe()}")
        if report.first_counterexample is None:
            report.first_counterexample = counterexample
        if failure_log_dir is not None:
            record_failed_trial(failure_log_dir, law.name, trial, gen.seed, counterexample.describe())

    report.wall_time = time.perf_counter() - start
    logger.info(f"{law.name}: {report.trials - report.failures}/{report.trials} trials passed "
                f"in {report.wall_time:.2f}s")
    return report
