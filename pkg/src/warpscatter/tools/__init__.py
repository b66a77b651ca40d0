"""
Command runners for the warpscatter CLI.
"""

from .artifacts import emit_plot_data, write_manifest
from .evolution import run_blago_check, run_wave
from .forward import run_jost, run_resolvent, run_smatrix, run_spectrum
from .models import COMMANDS, CommandResult, RunConfig, RunOutcome, parse_lambda_grid, parse_pair
from .normal_form import run_normalize_metric
from .recovery import run_invert_distance, run_invert_volume, run_oracle_geodesic
from .runner import RUNNERS, run

__all__ = [
    # Data models
    "COMMANDS",
    "CommandResult",
    "RunConfig",
    "RunOutcome",
    "parse_lambda_grid",
    "parse_pair",
    # Runners
    "RUNNERS",
    "run",
    "run_spectrum",
    "run_jost",
    "run_smatrix",
    "run_resolvent",
    "run_normalize_metric",
    "run_wave",
    "run_blago_check",
    "run_invert_volume",
    "run_invert_distance",
    "run_oracle_geodesic",
    # Artifacts
    "emit_plot_data",
    "write_manifest",
]
