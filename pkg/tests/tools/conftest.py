"""Config files on disk for the runner and CLI tests."""

import json

import pytest


def _write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


@pytest.fixture
def funnel_config(tmp_path):
    """ρ = cosh r on the full line, n = 2."""
    return _write(
        tmp_path / "funnel.json",
        {"dimension": 2, "topology": "full_line", "profile": {"kind": "cosh", "params": {"c0": 1.0}}},
    )


@pytest.fixture
def exponential_config(tmp_path):
    """ρ = e^r on [0, ∞), n = 2."""
    return _write(
        tmp_path / "exponential.json",
        {"dimension": 2, "topology": "half_line", "profile": {"kind": "exponential", "params": {"c0": 1.0}}},
    )


@pytest.fixture
def flat_config(tmp_path):
    """ρ ≡ 1 on [0, ∞), n = 2."""
    return _write(
        tmp_path / "flat.json",
        {
            "dimension": 2,
            "topology": "half_line",
            "profile": {"kind": "polynomial", "params": {"beta": 0.0, "shift": 1.0}},
        },
    )


@pytest.fixture
def metric_config(tmp_path):
    """a = 1 + t⁻² with a flat cross-section block, on a coarse grid."""
    return _write(
        tmp_path / "metric.json",
        {
            "w": "t",
            "a": "1 + t^-2",
            "c": "1",
            "h": "1",
            "exponents": {"kappa": 1.0, "lambda": 2.0, "mu": 1.0, "nu": 1.0},
            "grid": {"x_range": [[-1, 1, 5]], "r_min": 5, "r_max": 500, "points_per_decade": 40},
        },
    )
