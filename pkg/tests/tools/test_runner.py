"""Tests for run(): artifacts, provenance, exit codes and reproducibility."""

import json

import numpy as np
import pytest

from warpscatter import __version__
from warpscatter.core.errors import EXIT_CONFIG, EXIT_EXCEPTIONAL, EXIT_NUMERIC, ConvergenceError, ResonanceError
from warpscatter.tools import CommandResult, RunConfig, run
from warpscatter.tools import runner as runner_module


def _names(outcome):
    return sorted(p.name for p in outcome.artifacts)


class TestRun:
    def test_spectrum_artifacts(self, funnel_config, tmp_path):
        outcome = run(RunConfig(command="spectrum", config=funnel_config, out=tmp_path / "out"))
        assert outcome.exit_code == 0
        assert outcome.error is None
        assert _names(outcome) == ["manifest.json", "spectrum.json", "spectrum_modes.csv"]
        body = json.loads((tmp_path / "out" / "spectrum.json").read_text())
        assert body["provenance"]["tool"] == "warpscatter"
        assert body["provenance"]["version"] == __version__
        assert body["result"]["essential_spectrum_bottom"] == pytest.approx(0.25)
        assert any("essential spectrum bottom" in line for line in outcome.summary)

    def test_csv_provenance_header(self, funnel_config, tmp_path):
        run(RunConfig(command="spectrum", config=funnel_config, out=tmp_path))
        lines = (tmp_path / "spectrum_modes.csv").read_text().splitlines()
        body = json.loads((tmp_path / "spectrum.json").read_text())
        assert lines[0] == "# tool: warpscatter"
        assert lines[1] == f"# version: {__version__}"
        assert lines[2] == f"# config_hash: {body['provenance']['config_hash']}"
        assert lines[4] == "l,eigenvalue,multiplicity"

    def test_manifest_lists_artifacts(self, funnel_config, tmp_path):
        outcome = run(RunConfig(command="spectrum", config=funnel_config, out=tmp_path))
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["exit_code"] == 0
        assert "created" in manifest
        listed = {entry["file"] for entry in manifest["artifacts"]}
        assert listed == {"spectrum.json", "spectrum_modes.csv"}
        assert len(outcome.artifacts) == len(listed) + 1

    def test_byte_identical_reruns(self, funnel_config, tmp_path):
        config = dict(command="smatrix", config=funnel_config, lambdas=(1.0, 1.5, 2.0), lambda_max=0.0)
        first = run(RunConfig(out=tmp_path / "a", **config))
        second = run(RunConfig(out=tmp_path / "b", **config))
        assert _names(first) == _names(second)
        for a, b in zip(sorted(first.artifacts), sorted(second.artifacts)):
            if a.name != "manifest.json":
                assert a.read_bytes() == b.read_bytes(), a.name

    def test_seed_changes_hash(self, funnel_config, tmp_path):
        run(RunConfig(command="spectrum", config=funnel_config, out=tmp_path / "a"))
        run(RunConfig(command="spectrum", config=funnel_config, out=tmp_path / "b", seed=7))
        a = json.loads((tmp_path / "a" / "spectrum.json").read_text())["provenance"]["config_hash"]
        b = json.loads((tmp_path / "b" / "spectrum.json").read_text())["provenance"]["config_hash"]
        assert a != b


class TestRunErrors:
    def test_missing_config_file(self, tmp_path):
        outcome = run(RunConfig(command="spectrum", config=tmp_path / "absent.json", out=tmp_path / "out"))
        assert outcome.exit_code == EXIT_CONFIG
        assert _names(outcome) == ["manifest.json", "spectrum_error.json"]
        error = json.loads((tmp_path / "out" / "spectrum_error.json").read_text())
        assert error["exit_code"] == EXIT_CONFIG
        assert "provenance" in error

    def test_no_config(self, tmp_path):
        outcome = run(RunConfig(command="jost", out=tmp_path))
        assert outcome.exit_code == EXIT_CONFIG
        assert "--config" in outcome.error["message"]

    def test_out_not_writable(self, funnel_config, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        outcome = run(RunConfig(command="spectrum", config=funnel_config, out=blocker / "sub"))
        assert outcome.exit_code == EXIT_CONFIG
        assert outcome.artifacts == ()
        assert "not writable" in outcome.error["message"]

    def test_end_out_of_range(self, exponential_config, tmp_path):
        outcome = run(RunConfig(command="jost", config=exponential_config, end=1, out=tmp_path))
        assert outcome.exit_code == EXIT_CONFIG

    def test_numeric_failure(self, funnel_config, tmp_path, monkeypatch):
        def failing(config):
            raise ConvergenceError("tail did not converge", suggested=400.0)

        monkeypatch.setitem(runner_module.RUNNERS, "spectrum", failing)
        outcome = run(RunConfig(command="spectrum", config=funnel_config, out=tmp_path))
        assert outcome.exit_code == EXIT_NUMERIC
        error = json.loads((tmp_path / "spectrum_error.json").read_text())
        assert error["error"] == "ConvergenceError"
        assert error["suggested"] == 400.0

    def test_exceptional_point(self, funnel_config, tmp_path, monkeypatch):
        def refusing(config):
            raise ResonanceError("matching determinant vanishes", lam=1.0)

        monkeypatch.setitem(runner_module.RUNNERS, "smatrix", refusing)
        outcome = run(RunConfig(command="smatrix", config=funnel_config, out=tmp_path))
        assert outcome.exit_code == EXIT_EXCEPTIONAL
        assert outcome.error["lam"] == 1.0

    def test_failed_check_still_exits_zero(self, funnel_config, tmp_path, monkeypatch):
        def unconverged(config):
            return CommandResult(command="wave", payload={}, series={"energy": {"t": np.zeros(2)}}, passed=False)

        monkeypatch.setitem(runner_module.RUNNERS, "wave", unconverged)
        outcome = run(RunConfig(command="wave", config=funnel_config, out=tmp_path))
        assert outcome.exit_code == 0
        assert json.loads((tmp_path / "wave.json").read_text())["passed"] is False
