"""Tests for the JSON metric loader."""

import json

import numpy as np
import pytest

from warpscatter.core.errors import SpecError
from warpscatter.normalize import grid_from_dict, load_metric, metric_from_dict

EXPONENTS = {"kappa": 1.0, "lambda": 2.0, "mu": 1.0, "nu": 1.0}


class TestMetricFromDict:
    def test_scalar_blocks(self):
        gm = metric_from_dict({"w": "t", "a": "1 + t^-2", "b": "0.1/t", "c": "1", "h": 1, "exponents": EXPONENTS})
        assert gm.dim == 1
        assert gm.c == (("1",),)
        assert gm.h == (("1",),)
        assert gm.b == ("0.1/t",)
        assert gm.lam == 2.0
        assert gm.epsilon0 == pytest.approx(1.0)

    def test_matrix_blocks(self):
        gm = metric_from_dict(
            {
                "c": [["1", "0"], ["0", "1 + z1^2"]],
                "h": [["1", "0"], ["0", "1 + z1^2"]],
                "b": ["0", "0.1/t"],
                "exponents": EXPONENTS,
            }
        )
        assert gm.dim == 2
        assert gm.strip_violations() == []

    def test_strip_violations_are_reported(self):
        gm = metric_from_dict({"c": "1", "h": "1", "exponents": {**EXPONENTS, "kappa": 0.4}})
        assert gm.strip_violations() == ["kappa > 1/2"]

    @pytest.mark.parametrize(
        "data",
        [
            {"c": "1", "h": "1"},
            {"c": "1", "exponents": EXPONENTS},
            {"c": [["1", "0"]], "h": "1", "exponents": EXPONENTS},
            {"c": "1", "h": "1", "b": ["0", "0"], "exponents": EXPONENTS},
            {"a": "1 + y", "c": "1", "h": "1", "exponents": EXPONENTS},
            {"a": "gamma(t)", "c": "1", "h": "1", "exponents": EXPONENTS},
            {"c": "1", "h": "t", "exponents": EXPONENTS},
        ],
    )
    def test_invalid_configs(self, data):
        with pytest.raises(SpecError):
            metric_from_dict(data)


class TestGridFromDict:
    def test_ranges(self):
        grid = grid_from_dict({"x_range": [[-1, 1, 5]], "r_min": 4, "r_max": 400, "points_per_decade": 40})
        assert grid.shape == (5,)
        np.testing.assert_allclose(grid.x[0], np.linspace(-1, 1, 5))
        r = grid.radii()
        assert r[0] == pytest.approx(4.0)
        assert r[-1] == pytest.approx(400.0)
        assert r.size == 81

    def test_explicit_nodes(self):
        grid = grid_from_dict({"x": [[0, 1, 2, 3, 4], [0, 1, 2, 3, 4, 5]]})
        assert grid.shape == (5, 6)
        assert grid.points().shape == (30, 2)

    @pytest.mark.parametrize("data", [{}, {"x_range": [[0, 1]]}, {"x": [[0, 1, 2, 3, 4]], "points_per_decade": 5}])
    def test_invalid(self, data):
        with pytest.raises(SpecError):
            grid_from_dict(data)


class TestLoadMetric:
    def test_file_with_grid(self, tmp_path):
        path = tmp_path / "metric.json"
        path.write_text(
            json.dumps({"a": "1 + t^-2", "c": "1", "h": "1", "exponents": EXPONENTS, "grid": {"x_range": [[-1, 1, 7]]}})
        )
        gm, grid = load_metric(path)
        assert gm.a == "1 + t^-2"
        assert grid.shape == (7,)

    def test_missing_file(self, tmp_path):
        with pytest.raises(SpecError):
            load_metric(tmp_path / "absent.json")

    def test_broken_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(SpecError):
            load_metric(path)
