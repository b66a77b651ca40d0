"""Shared infrastructure: configuration, errors, numerics and result I/O."""

from .config import SolverConfig, get_config, set_config
from .errors import (
    EXIT_CONFIG,
    EXIT_EXCEPTIONAL,
    EXIT_NUMERIC,
    EXIT_OK,
    AliasingError,
    ChartError,
    ClosedChannelError,
    ConditioningError,
    ConvergenceError,
    DomainError,
    ExceptionalPointError,
    GridExtensionError,
    InconsistentSpecError,
    NonAdmissibleError,
    NumericError,
    ResonanceError,
    SpecError,
    StepError,
    WarpScatterError,
)

__all__ = [
    # Config
    "SolverConfig",
    "get_config",
    "set_config",
    # Exit codes
    "EXIT_OK",
    "EXIT_CONFIG",
    "EXIT_NUMERIC",
    "EXIT_EXCEPTIONAL",
    # Errors
    "WarpScatterError",
    "SpecError",
    "DomainError",
    "InconsistentSpecError",
    "AliasingError",
    "ClosedChannelError",
    "StepError",
    "NonAdmissibleError",
    "NumericError",
    "ConvergenceError",
    "GridExtensionError",
    "ChartError",
    "ConditioningError",
    "ExceptionalPointError",
    "ResonanceError",
]
