"""End-to-end smoke suite: every subcommand through the command line."""

import json

import pytest
from typer.testing import CliRunner

from warpscatter.cli import app
from warpscatter.tools import COMMANDS

runner = CliRunner()

SMOKE = [
    ("spectrum", "funnel_config", []),
    ("jost", "funnel_config", ["--lambda", "1.25", "--rmax", "40"]),
    ("smatrix", "funnel_config", ["--lambda", "1:2:3", "--lmax", "0"]),
    ("oracle-geodesic", "funnel_config", ["--q", "1", "--psi", "0.7", "--length", "2"]),
    ("wave", "exponential_config", ["--T", "1"]),
    pytest.param(
        "resolvent",
        "funnel_config",
        ["--lambda", "1.25", "--lmax", "0", "--rmax", "5"],
        marks=pytest.mark.slow,
    ),
    pytest.param("normalize-metric", "metric_config", [], marks=pytest.mark.slow),
    pytest.param(
        "blago-check",
        "exponential_config",
        ["--region", "2:3.3", "--T", "1", "--dr", "0.04"],
        marks=pytest.mark.slow,
    ),
    pytest.param(
        "invert-volume",
        "flat_config",
        ["--region", "2:4", "--band", "2.5:3.5", "--T", "1", "--dr", "0.04"],
        marks=pytest.mark.slow,
    ),
    pytest.param(
        "invert-distance",
        "flat_config",
        ["--region", "2:4.4", "--T", "1.5", "--dr", "0.04", "--q", "2.6"]
        + ["--r-tilde", "0.6", "--z", "2.6", "--eps", "0.3"],
        marks=pytest.mark.slow,
    ),
]


def _invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


class TestSmokeSuite:
    def test_every_command_is_covered(self):
        covered = {case.values[0] if hasattr(case, "values") else case[0] for case in SMOKE}
        assert covered == set(COMMANDS)

    @pytest.mark.parametrize("command, fixture, options", SMOKE)
    def test_command(self, command, fixture, options, request, tmp_path):
        config = request.getfixturevalue(fixture)
        out = tmp_path / "out"
        result = _invoke(command, "--config", config, "--out", out, *options)
        assert result.exit_code == 0, result.output
        assert (out / f"{command}.json").is_file()
        assert (out / "manifest.json").is_file()
        assert list(out.glob(f"{command}_*.csv"))
        body = json.loads((out / f"{command}.json").read_text())
        assert body["command"] == command
        assert body["provenance"]["command"] == command


class TestCli:
    def test_summary_output(self, funnel_config, tmp_path):
        result = _invoke("spectrum", "--config", funnel_config, "--out", tmp_path)
        assert result.exit_code == 0
        assert "essential spectrum bottom: 0.25" in result.output
        assert "artifact(s) in" in result.output

    def test_json_output(self, funnel_config, tmp_path):
        result = _invoke("spectrum", "--config", funnel_config, "--out", tmp_path, "--json", "--log-level", "ERROR")
        assert result.exit_code == 0
        outcome = json.loads(result.output)
        assert outcome["exit_code"] == 0
        assert len(outcome["artifacts"]) == 3

    def test_missing_config_file(self, tmp_path):
        result = _invoke("spectrum", "--config", tmp_path / "absent.json", "--out", tmp_path)
        assert result.exit_code == 2
        assert "Error" in result.output
        assert (tmp_path / "spectrum_error.json").is_file()

    def test_config_required(self, tmp_path):
        result = _invoke("smatrix", "--out", tmp_path)
        assert result.exit_code == 2
        assert "--config" in result.output

    @pytest.mark.parametrize(
        "options",
        [
            ["--lambda", "1:2"],
            ["--band", "3:1"],
            ["--eps", "0.3,x"],
            ["--tol", "0"],
            ["--log-level", "LOUD"],
        ],
    )
    def test_invalid_options(self, funnel_config, tmp_path, options):
        result = _invoke("wave", "--config", funnel_config, "--out", tmp_path, *options)
        assert result.exit_code == 2
        assert not (tmp_path / "manifest.json").exists()

    def test_invalid_environment(self, funnel_config, tmp_path, monkeypatch):
        from warpscatter.core.config import set_config

        set_config(None)
        monkeypatch.setenv("WARPSCATTER_THREADS", "many")
        result = _invoke("spectrum", "--config", funnel_config, "--out", tmp_path)
        assert result.exit_code == 2
        assert "WARPSCATTER_THREADS" in result.output

    def test_reruns_are_byte_identical(self, funnel_config, tmp_path):
        for name in ("a", "b"):
            options = ["--lambda", "1:2:3", "--lmax", "0"]
            result = _invoke("smatrix", "--config", funnel_config, "--out", tmp_path / name, *options)
            assert result.exit_code == 0
        first = sorted(p.name for p in (tmp_path / "a").iterdir())
        assert first == sorted(p.name for p in (tmp_path / "b").iterdir())
        for name in first:
            if name != "manifest.json":
                assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name
