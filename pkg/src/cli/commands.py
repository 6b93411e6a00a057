"""
Single computations behind the CLI subcommands.

Every command returns a CommandResult holding what goes to stdout, what goes
to stderr and the exit code:

    0  success, or every verification trial passed
    1  a verification failed, or an internal invariant broke
    2  usage or parse error
"""
from __future__ import annotations

import io
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from rich.console import Console
from rich.table import Table

from src.algebra.jacobian import jacobian, jacobian_ideal_generators, jacobian_matrix
from src.algebra.matrix import PolyMatrix, det_fraction_free
from src.algebra.polymap import PolyMap
from src.algebra.polynomial import Polynomial
from src.cli.expressions import parse_poly_map, parse_polynomial, print_canonical, read_poly_map
from src.cli.session import SessionConfig
from src.cli.verification import VerificationReport, run_verification
from src.frobenius.identities import DeltaRepresenter, is_frobenius_basis
from src.frobenius.umatrix import delta, u_matrix
from src.utils.errors import (
    AlgebraError,
    CapacityError,
    DimensionMismatchError,
    DomainError,
    ExpressionParseError,
    ModulusMismatchError,
)
from src.utils.logger import setup_logger
from src.wronskian.assembly import wronskian_matrix
from src.wronskian.identities import block_determinants

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

USAGE_ERRORS = (
    ExpressionParseError,
    DomainError,
    DimensionMismatchError,
    ModulusMismatchError,
    CapacityError,
    OSError,
)

COMMANDS = ("jacobian", "delta", "umatrix", "wronskian", "represent", "basis-check", "ideal-gens", "verify")


@dataclass
class CommandArguments:
    """Positional inputs and per-command options."""

    map_text: Optional[str] = None
    map_file: Optional[Path] = None
    poly: Optional[str] = None
    order: Optional[int] = None
    law: Optional[str] = None
    failure_log_dir: Optional[Path] = None
    timing: bool = False


@dataclass
class CommandResult:
    output: str
    exit_code: int = EXIT_OK
    error: str = ""


@dataclass
class _Outcome:
    """What a command computed: JSON-ready result, text rendering, inputs echo."""

    result: Dict[str, Any]
    text: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_OK


# ----------------------------------------------------------------------
# Rendering helpers
# ----------------------------------------------------------------------

def _render_text(*renderables: Any) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=160, color_system=None, soft_wrap=True)
    for renderable in renderables:
        console.print(renderable)
    return buffer.getvalue().rstrip("\n")


def _matrix_table(title: str, M: PolyMatrix, labels: Optional[List[str]] = None) -> Table:
    table = Table(title=title, show_lines=False)
    table.add_column("")
    for j in range(M.ncols):
        table.add_column(labels[j] if labels else str(j))
    for i, row in enumerate(M.to_strings()):
        table.add_row(labels[i] if labels else str(i), *row)
    return table


def _map_inputs(F: PolyMap) -> Dict[str, Any]:
    return {"F": [print_canonical(f) for f in F]}


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def _load_map(arguments: CommandArguments, config: SessionConfig) -> PolyMap:
    if arguments.map_file is not None:
        return read_poly_map(arguments.map_file, config)
    if arguments.map_text is None:
        raise DomainError("a polynomial map is required (argument or --file)")
    return parse_poly_map(arguments.map_text, config)


def _jacobian(arguments: CommandArguments, config: SessionConfig) -> _Outcome:
    F = _load_map(arguments, config)
    j = jacobian(F)
    JF = jacobian_matrix(F)
    return _Outcome(
        {"jacobian": print_canonical(j), "matrix": JF.to_strings()},
        print_canonical(j),
        _map_inputs(F),
    )


def _delta(arguments: CommandArguments, config: SessionConfig) -> _Outcome:
    F = _load_map(arguments, config)
    value = delta(F)
    return _Outcome({"delta": print_canonical(value)}, print_canonical(value), _map_inputs(F))


def _umatrix(arguments: CommandArguments, config: SessionConfig) -> _Outcome:
    F = _load_map(arguments, config)
    U = u_matrix(F, validate=True)
    labels = [str(alpha) for alpha in U.basis]
    value = det_fraction_free(U.matrix)
    return _Outcome(
        {"basis": [list(alpha) for alpha in U.basis], "matrix": U.matrix.to_strings(),
         "delta": print_canonical(value)},
        _render_text(_matrix_table("U(F)", U.matrix, labels), f"Delta(F) = {print_canonical(value)}"),
        _map_inputs(F),
    )


def _wronskian(arguments: CommandArguments, config: SessionConfig) -> _Outcome:
    F = _load_map(arguments, config)
    r = arguments.order if arguments.order is not None else config.p
    W = wronskian_matrix(F, r)
    det_w = det_fraction_free(W)
    blocks = block_determinants(F, r)
    inputs = _map_inputs(F)
    inputs["order"] = r
    text = _render_text(
        f"det W = {print_canonical(det_w)}",
        _matrix_table(f"W (order {r})", W),
        *[f"det block {l} = {print_canonical(b)}" for l, b in enumerate(blocks)],
    )
    return _Outcome(
        {"det": print_canonical(det_w), "matrix": W.to_strings(),
         "block_determinants": [print_canonical(b) for b in blocks]},
        text,
        inputs,
    )


def _represent(arguments: CommandArguments, config: SessionConfig) -> _Outcome:
    F = _load_map(arguments, config)
    g = parse_polynomial(arguments.poly if arguments.poly is not None else "1", config)
    representer = DeltaRepresenter(F)
    coefficients = representer.represent(g)
    value = representer.delta
    rendered = {str(list(beta)): print_canonical(c) for beta, c in coefficients.items()}
    inputs = _map_inputs(F)
    inputs["g"] = print_canonical(g)

    table = Table(title=f"Delta(F) * g = sum c_beta F^beta, Delta(F) = {print_canonical(value)}")
    table.add_column("beta")
    table.add_column("c_beta")
    for beta, c in rendered.items():
        table.add_row(beta, c)
    return _Outcome(
        {"delta": print_canonical(value), "coefficients": rendered},
        _render_text(table),
        inputs,
    )


def _basis_check(arguments: CommandArguments, config: SessionConfig) -> _Outcome:
    F = _load_map(arguments, config)
    basis = is_frobenius_basis(F)
    return _Outcome(
        {"is_basis": basis, "jacobian": print_canonical(jacobian(F))},
        "true" if basis else "false",
        _map_inputs(F),
    )


def _ideal_gens(arguments: CommandArguments, config: SessionConfig) -> _Outcome:
    if arguments.map_text is None:
        raise DomainError("ideal-gens needs a ';'-separated list of polynomials")
    G: List[Polynomial] = [parse_polynomial(text, config) for text in arguments.map_text.split(";")]
    generators = [print_canonical(j) for j in jacobian_ideal_generators(G)]
    return _Outcome(
        {"generators": generators},
        "\n".join(generators),
        {"G": [print_canonical(g) for g in G]},
    )


def _verify(arguments: CommandArguments, config: SessionConfig) -> _Outcome:
    if not arguments.law:
        raise DomainError("verify needs a law name")
    report = run_verification(arguments.law, config, failure_log_dir=arguments.failure_log_dir)
    return _Outcome(
        report.to_dict(include_timing=arguments.timing),
        _report_text(report),
        {"law": arguments.law, "p": report.session.p, "n": report.session.n,
         "seed": config.seed, "trials": config.trials, "max_degree": config.max_degree,
         "max_terms": config.max_terms},
        EXIT_OK if report.passed else EXIT_FAILURE,
    )


def _report_text(report: VerificationReport) -> str:
    table = Table(title=f"verify {report.law}")
    table.add_column("p")
    table.add_column("n")
    table.add_column("seed")
    table.add_column("trials")
    table.add_column("failures")
    table.add_column("result")
    table.add_row(
        str(report.session.p), str(report.session.n), str(report.session.seed),
        str(report.trials), str(report.failures), "PASS" if report.passed else "FAIL",
    )
    lines: List[Any] = [table]
    if report.first_counterexample is not None:
        lines.append(f"first counterexample: {report.first_counterexample.describe()}")
    return _render_text(*lines)


_DISPATCH: Dict[str, Callable[[CommandArguments, SessionConfig], _Outcome]] = {
    "jacobian": _jacobian,
    "delta": _delta,
    "umatrix": _umatrix,
    "wronskian": _wronskian,
    "represent": _represent,
    "basis-check": _basis_check,
    "ideal-gens": _ideal_gens,
    "verify": _verify,
}


def run_command(
    name: str,
    arguments: CommandArguments,
    config: SessionConfig,
) -> CommandResult:
    """Execute one subcommand and render it in the session's output mode."""
    if name not in _DISPATCH:
        return CommandResult("", EXIT_USAGE, f"unknown command {name!r}")
    logger.info(f"Running {name}: p={config.p}, n={config.n}")
    start = time.perf_counter()
    try:
        outcome = _DISPATCH[name](arguments, config)
    except USAGE_ERRORS as error:
        logger.debug(f"{name} rejected its input: {error}")
        return CommandResult("", EXIT_USAGE, f"error: {error}")
    except AlgebraError as error:
        logger.error(f"{name} failed internally: {error}")
        return CommandResult("", EXIT_FAILURE, f"internal error: {error}")
    elapsed = time.perf_counter() - start
    logger.info(f"Finished {name} in {elapsed:.3f}s (exit {outcome.exit_code})")

    if config.output == "json":
        document = {
            "command": name,
            "inputs": outcome.inputs,
            "result": outcome.result,
            "timing": round(elapsed, 6) if arguments.timing else None,
        }
        return CommandResult(json.dumps(document, indent=2), outcome.exit_code)
    text = outcome.text
    if arguments.timing:
        text += f"\n({elapsed:.3f}s)"
    return CommandResult(text, outcome.exit_code)
