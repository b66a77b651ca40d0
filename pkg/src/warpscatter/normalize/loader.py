"""JSON metric configuration loader."""

import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
from pydantic import ValidationError

from warpscatter.core.errors import SpecError

from .constants import ERROR_CONFIG_INVALID, ERROR_CONFIG_READ
from .field import metric_field
from .models import FlowGrid, GeneralMetric

logger = logging.getLogger(__name__)


def _matrix(block: Any) -> Optional[tuple[tuple[str, ...], ...]]:
    if block is None:
        return None
    if isinstance(block, (str, int, float)):
        return ((str(block),),)
    return tuple(tuple(str(v) for v in row) for row in block)


def metric_from_dict(data: dict[str, Any]) -> GeneralMetric:
    """
    Build a GeneralMetric from the configuration mapping.

    Recognised keys: `w`, `a`, `b` (list), `c` and `h` (matrices, or a single
    expression for a one-dimensional chart), `exponents` ({kappa, lambda, mu,
    nu}) and `table` (sampled coefficients, see MetricTable).

    Raises:
        SpecError: If the mapping does not describe a valid metric.
    """
    try:
        payload: dict[str, Any] = {**data.get("exponents", {})}
        for key in ("w", "a"):
            if key in data:
                payload[key] = str(data[key])
        if data.get("b") is not None:
            b = data["b"]
            payload["b"] = (str(b),) if isinstance(b, (str, int, float)) else tuple(str(v) for v in b)
        payload["c"] = _matrix(data.get("c"))
        payload["h"] = _matrix(data.get("h"))
        if data.get("table") is not None:
            payload["table"] = data["table"]
        gm = GeneralMetric.model_validate(payload)
    except (KeyError, TypeError, ValidationError) as e:
        raise SpecError(ERROR_CONFIG_INVALID.format(error=e)) from e
    metric_field(gm)
    return gm


def grid_from_dict(data: dict[str, Any]) -> FlowGrid:
    """
    Build a FlowGrid; chart axes come as explicit `x` node lists or as
    `x_range` triples [lo, hi, count].
    """
    try:
        payload = {k: v for k, v in data.items() if k not in ("x", "x_range")}
        if "x" in data:
            payload["x"] = tuple(tuple(float(v) for v in axis) for axis in data["x"])
        else:
            payload["x"] = tuple(
                tuple(np.linspace(float(lo), float(hi), int(n)).tolist()) for lo, hi, n in data["x_range"]
            )
        return FlowGrid.model_validate(payload)
    except (KeyError, TypeError, ValueError, ValidationError) as e:
        raise SpecError(ERROR_CONFIG_INVALID.format(error=e)) from e


def load_metric(path: Union[str, Path]) -> tuple[GeneralMetric, Optional[FlowGrid]]:
    """Read a JSON metric configuration; the optional `grid` block becomes a FlowGrid."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise SpecError(ERROR_CONFIG_READ.format(path=path, error=e)) from e
    gm = metric_from_dict(data)
    grid = grid_from_dict(data["grid"]) if data.get("grid") is not None else None
    logger.info("loaded metric, chart dimension %d, epsilon0 %.3g", gm.dim, gm.epsilon0)
    return gm, grid
