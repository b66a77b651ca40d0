"""Runner for the asymptotic normalization of a general metric."""

import numpy as np

from warpscatter.core.config import get_config
from warpscatter.core.errors import SpecError
from warpscatter.normalize import load_metric, solve_fixed_point, transform_metric, verify_flow

from .constants import ERROR_CONFIG_REQUIRED, ERROR_METRIC_GRID
from .models import CommandResult, RunConfig


def run_normalize_metric(config: RunConfig) -> CommandResult:
    """
    Solve the Hamilton fixed point for the metric in --config and transform the metric.

    --rmax replaces the truncation radius of the file's grid block.
    """
    if config.config is None:
        raise SpecError(ERROR_CONFIG_REQUIRED.format(command=config.command))
    gm, grid = load_metric(config.config)
    if grid is None:
        raise SpecError(ERROR_METRIC_GRID.format(path=config.config))
    if config.r_max is not None:
        grid = grid.model_copy(update={"r_max": config.r_max})

    hs = solve_fixed_point(gm, grid, config=get_config())
    diagnostics = verify_flow(hs)
    tm = transform_metric(gm, hs)

    state = hs.model_dump(
        include={"iterations", "contraction", "residual", "tail", "shooting_difference", "energy_drift"}
    )
    transformed = tm.model_dump(include={"min_rcond", "tail_condition", "target", "within_tolerance", "decay"})
    payload = {
        "dimension": gm.dim,
        "epsilon0": hs.epsilon0,
        "grid": grid.model_dump(),
        "flow": {**state, "decay": hs.decay, "tau_decay": hs.tau_decay},
        "diagnostics": diagnostics.model_dump(),
        "transformed": transformed,
    }
    series = {
        "flow_decay": {"r": hs.r, "sup_X": np.max(np.abs(hs.X), axis=(0, 2))},
        "metric_decay": {"r": tm.r, "sup_error": np.max(np.abs(tm.hbar - tm.h[:, None]), axis=(0, 2, 3))},
    }
    agreement = hs.shooting_difference
    summary = [f"Picard iterations {hs.iterations}, contraction {hs.contraction:.3g}, residual {hs.residual:.2e}"]
    if agreement is not None:
        summary.append(f"Picard vs shooting {agreement:.2e} (tolerance {config.tol:g})")
    summary.append(f"max |H - 1/4| = {diagnostics.energy:.2e}")
    return CommandResult(
        command="normalize-metric",
        payload=payload,
        series=series,
        summary=tuple(summary),
        passed=None if agreement is None else agreement <= config.tol,
    )
