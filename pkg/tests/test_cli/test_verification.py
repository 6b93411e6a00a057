"""
Unit tests for seeded law verification.
"""
import pytest

from src.cli.session import SessionConfig
from src.cli.verification import LAWS, get_law, run_verification
from src.frobenius import identities
from src.utils.error_handler import read_failed_trials
from src.utils.errors import DomainError


def session(p: int, n: int, trials: int, max_degree: int = 3, max_terms: int = 4, seed: int = 0) -> SessionConfig:
    return SessionConfig(p=p, n=n, seed=seed, trials=trials, max_degree=max_degree, max_terms=max_terms)


class TestLawRegistry:
    """Law identifiers are the external interface."""

    def test_known_laws(self):
        assert set(LAWS) == {
            "lemma1", "prop1-blocks", "formula5", "lemma2", "lemma3",
            "lemma4", "prop2", "nousiainen", "prop3", "theorem-kf",
        }

    def test_unknown_law(self):
        with pytest.raises(DomainError, match="unknown law"):
            get_law("lemma9")


class TestLawsHold:
    """Every law passes on small seeded runs."""

    @pytest.mark.parametrize("law,config", [
        ("prop2", session(2, 2, 20)),
        ("prop2", session(3, 1, 10)),
        ("lemma1", session(5, 2, 5)),
        ("formula5", session(5, 2, 5, max_degree=4)),
        ("lemma2", session(2, 1, 10)),
        ("lemma3", session(3, 2, 50)),
        ("lemma4", session(2, 2, 10)),
        ("prop1-blocks", session(2, 2, 10)),
        ("nousiainen", session(2, 2, 20)),
        ("prop3", session(2, 2, 10)),
        ("theorem-kf", session(2, 1, 10)),
    ])
    def test_passes(self, law, config):
        report = run_verification(law, config, progress=False)
        assert report.passed, report.first_counterexample and report.first_counterexample.describe()
        assert report.trials == config.trials
        assert report.first_counterexample is None

    @pytest.mark.slow
    @pytest.mark.parametrize("law,config", [
        ("prop2", session(2, 2, 100)),
        ("lemma4", session(3, 2, 10)),
        ("prop1-blocks", session(3, 2, 10)),
        ("lemma2", session(2, 2, 50)),
    ])
    def test_passes_on_larger_grids(self, law, config):
        assert run_verification(law, config, progress=False).passed

    def test_formula5_forces_one_variable(self):
        report = run_verification("formula5", session(3, 2, 2), progress=False)
        assert report.session.n == 1


class TestReports:
    """Determinism and failure reporting."""

    def test_deterministic(self):
        config = session(2, 2, 15, seed=42)
        first = run_verification("prop2", config, progress=False).to_dict()
        second = run_verification("prop2", config, progress=False).to_dict()
        assert first == second
        assert first["wall_time"] is None

    def test_timing_only_on_request(self):
        report = run_verification("prop2", session(2, 1, 3), progress=False)
        assert report.to_dict(include_timing=True)["wall_time"] >= 0

    def test_trial_seeds_recorded(self):
        report = run_verification("prop2", session(2, 1, 7, seed=9), progress=False)
        assert len(report.trial_seeds) == 7
        assert len(set(report.trial_seeds)) == 7

    def test_corrupted_delta_is_caught(self, monkeypatch, tmp_failure_dir):
        """A wrong Delta makes prop2 fail, with the first counterexample and a failure log."""
        original = identities.delta
        monkeypatch.setattr(identities, "delta", lambda F: original(F) + 1)

        report = run_verification("prop2", session(2, 2, 5), failure_log_dir=tmp_failure_dir, progress=False)

        assert not report.passed
        assert report.failures == 5
        counterexample = report.first_counterexample
        assert counterexample.trial == 0
        assert counterexample.seed == report.trial_seeds[0]
        assert "F" in counterexample.inputs
        assert counterexample.check.lhs == counterexample.check.rhs + 1
        assert counterexample.to_dict()["check"]["holds"] is False

        logged = read_failed_trials(tmp_failure_dir, "prop2")
        assert [f.trial for f in logged] == [0, 1, 2, 3, 4]
        assert logged[0].seed == report.trial_seeds[0]
        assert logged[0].error_type == "CounterExample"

    def test_toolkit_errors_count_as_failures(self, monkeypatch):
        """A check that raises is reported with the error text."""
        def broken(F):
            raise DomainError("boom")

        monkeypatch.setattr(identities, "delta", broken)
        report = run_verification("prop2", session(2, 1, 2), progress=False)
        assert report.failures == 2
        assert report.first_counterexample.error == "DomainError: boom"
        assert "boom" in report.first_counterexample.describe()
