"""Tests for plot data files and the manifest."""

import csv
import hashlib
import json

import numpy as np

from warpscatter.tools import CommandResult, emit_plot_data, write_manifest


def _rows(path):
    with path.open() as fh:
        return list(csv.reader(line for line in fh if not line.startswith("#")))


class TestEmitPlotData:
    def test_one_file_per_series(self, tmp_path):
        t = np.linspace(0.0, 1.0, 5)
        result = CommandResult(
            command="wave",
            payload={},
            series={
                "energy": {"t": t, "energy": t**2, "work": t**2},
                "snapshot": {"r": t, "u": np.sin(t)},
            },
        )
        paths = emit_plot_data(result, tmp_path, {"tool": "warpscatter"})
        assert [p.name for p in paths] == ["wave_energy.csv", "wave_snapshot.csv"]
        rows = _rows(paths[0])
        assert rows[0] == ["t", "energy", "work"]
        assert len(rows) == 6
        assert float(rows[-1][1]) == 1.0
        assert paths[1].read_text().startswith("# tool: warpscatter\n")

    def test_two_columns(self, tmp_path):
        lam = np.array([1.0, 2.0])
        result = CommandResult(command="smatrix", payload={}, series={"unitarity": {"lambda": lam, "residual": lam}})
        (path,) = emit_plot_data(result, tmp_path)
        assert _rows(path) == [["lambda", "residual"], ["1.0", "1.0"], ["2.0", "2.0"]]

    def test_no_series(self, tmp_path):
        assert emit_plot_data(CommandResult(command="spectrum", payload={}), tmp_path) == []


class TestWriteManifest:
    def test_digests(self, tmp_path):
        artifact = tmp_path / "a.csv"
        artifact.write_text("x\n1.0\n")
        path = write_manifest(tmp_path, "wave", 0, [artifact], {"config_hash": "abc"})
        manifest = json.loads(path.read_text())
        assert path.name == "manifest.json"
        assert manifest["command"] == "wave"
        assert manifest["provenance"] == {"config_hash": "abc"}
        (entry,) = manifest["artifacts"]
        assert entry["file"] == "a.csv"
        assert entry["bytes"] == 6
        assert entry["sha256"] == hashlib.sha256(b"x\n1.0\n").hexdigest()
