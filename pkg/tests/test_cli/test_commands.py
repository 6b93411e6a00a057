"""
Unit tests for command dispatch, rendering and exit codes.
"""
import json

import pytest

from src.cli import commands
from src.cli.commands import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    CommandArguments,
    run_command,
)
from src.cli.session import SessionConfig
from src.utils.errors import InvariantViolationError

P2N1 = SessionConfig(p=2, n=1)
P2N2 = SessionConfig(p=2, n=2)
P3N2 = SessionConfig(p=3, n=2)


def as_json(config: SessionConfig) -> SessionConfig:
    return config.model_copy(update={"output": "json"})


class TestTextOutput:
    """Plain results in text mode."""

    def test_delta(self):
        result = run_command("delta", CommandArguments(map_text="x1+x2; x1*x2"), P2N2)
        assert result.exit_code == EXIT_OK
        assert result.output == "x1^2 + x2^2"

    def test_jacobian_of_identity(self):
        result = run_command("jacobian", CommandArguments(map_text="x1; x2"), P3N2)
        assert result.output == "1"

    def test_basis_check_false(self):
        result = run_command("basis-check", CommandArguments(map_text="x1^2"), P2N1)
        assert result.exit_code == EXIT_OK
        assert result.output == "false"

    def test_basis_check_true(self):
        result = run_command("basis-check", CommandArguments(map_text="x + x^2"), P2N1)
        assert result.output == "true"

    def test_ideal_generators(self):
        result = run_command("ideal-gens", CommandArguments(map_text="x1; x2; x1*x2"), P3N2)
        assert result.output.splitlines() == ["1", "x1", "2*x2"]

    def test_wronskian_defaults_to_order_p(self):
        result = run_command("wronskian", CommandArguments(map_text="x + x^2"), P2N1)
        assert result.output.startswith("det W = 1")
        assert "W (order 2)" in result.output

    def test_umatrix_table(self):
        result = run_command("umatrix", CommandArguments(map_text="x + x^2"), P2N1)
        assert "U(F)" in result.output
        assert "Delta(F) = 1" in result.output

    def test_map_file(self, tmp_path):
        path = tmp_path / "map.txt"
        path.write_text("x1 + x2\nx1*x2\n", encoding="utf-8")
        result = run_command("delta", CommandArguments(map_file=path), P2N2)
        assert result.output == "x1^2 + x2^2"

    def test_timing_suffix(self):
        result = run_command("delta", CommandArguments(map_text="x", timing=True), P2N1)
        assert result.output.startswith("1\n(")


class TestJsonOutput:
    """One document with command, inputs, result and timing."""

    def test_umatrix_document(self):
        result = run_command("umatrix", CommandArguments(map_text="x + x^2"), as_json(P2N1))
        document = json.loads(result.output)
        assert set(document) == {"command", "inputs", "result", "timing"}
        assert document["command"] == "umatrix"
        assert document["inputs"] == {"F": ["x1^2 + x1"]}
        assert document["result"]["basis"] == [[0], [1]]
        assert document["result"]["matrix"] == [["1", "0"], ["x1^2", "1"]]
        assert document["timing"] is None

    def test_represent_document(self):
        result = run_command("represent", CommandArguments(map_text="x1+x2; x1*x2", poly="x1"), as_json(P2N2))
        document = json.loads(result.output)
        assert document["inputs"]["g"] == "x1"
        assert document["result"]["delta"] == "x1^2 + x2^2"
        assert set(document["result"]["coefficients"]) == {"[0, 0]", "[0, 1]", "[1, 0]", "[1, 1]"}

    def test_wronskian_document(self):
        result = run_command("wronskian", CommandArguments(map_text="x + x^2", order=2), as_json(P2N1))
        document = json.loads(result.output)
        assert document["inputs"]["order"] == 2
        assert document["result"]["block_determinants"] == ["1", "1"]

    def test_timing_on_request(self):
        result = run_command("delta", CommandArguments(map_text="x", timing=True), as_json(P2N1))
        assert json.loads(result.output)["timing"] >= 0

    def test_verify_is_byte_identical(self):
        config = SessionConfig(p=2, n=2, seed=42, trials=20, output="json")
        first = run_command("verify", CommandArguments(law="prop2"), config)
        second = run_command("verify", CommandArguments(law="prop2"), config)
        assert first.output == second.output
        assert json.loads(first.output)["result"]["passed"] is True


class TestExitCodes:
    """0 success, 1 failure, 2 usage or parse error."""

    @pytest.mark.parametrize("name,arguments,config", [
        ("delta", CommandArguments(map_text="x1 +; x2"), P2N2),
        ("delta", CommandArguments(map_text="x1"), P2N2),
        ("delta", CommandArguments(), P2N2),
        ("wronskian", CommandArguments(map_text="x", order=3), P2N1),
        ("ideal-gens", CommandArguments(map_text="x1"), P2N2),
        ("verify", CommandArguments(law="lemma9"), P2N2),
        ("frobnicate", CommandArguments(), P2N2),
    ])
    def test_usage_errors(self, name, arguments, config):
        result = run_command(name, arguments, config)
        assert result.exit_code == EXIT_USAGE
        assert result.output == ""
        assert result.error

    def test_parse_error_message_has_position(self):
        result = run_command("delta", CommandArguments(map_text="x1 +; x2"), P2N2)
        assert "position 4" in result.error

    def test_missing_map_file(self, tmp_path):
        result = run_command("delta", CommandArguments(map_file=tmp_path / "absent.txt"), P2N2)
        assert result.exit_code == EXIT_USAGE

    def test_internal_error(self, monkeypatch):
        def broken(F):
            raise InvariantViolationError("Delta", [])

        monkeypatch.setattr(commands, "delta", broken)
        result = run_command("delta", CommandArguments(map_text="x"), P2N1)
        assert result.exit_code == EXIT_FAILURE
        assert result.error.startswith("internal error")

    def test_failed_verification(self, monkeypatch):
        from src.frobenius import identities

        original = identities.delta
        monkeypatch.setattr(identities, "delta", lambda F: original(F) + 1)
        result = run_command("verify", CommandArguments(law="prop2"), SessionConfig(p=2, n=1, trials=3))
        assert result.exit_code == EXIT_FAILURE
        assert "FAIL" in result.output
        assert "first counterexample: trial 0" in result.output
