"""
Normalize module

Transforms a general asymptotic metric a dt² + 2 w b dt dz + w² c dz dz into
dr² + w(r)² h̄(r, x, dx) by solving the Hamilton flow with conditions at
infinity, and checks the result.
"""

from .expressions import compile_coefficient, parse_coefficient, variables
from .field import MetricSample, metric_field
from .fixed_point import apply_u, integral_to_infinity, solve_fixed_point
from .hamiltonian import HamiltonianValue, hamiltonian
from .loader import grid_from_dict, load_metric, metric_from_dict
from .models import (
    FlowDiagnostics,
    FlowGrid,
    GeneralMetric,
    HamiltonState,
    MetricTable,
    TransformedMetric,
)
from .transform import jacobian, lower_metric, transform_metric
from .verify import bracket, phase_residual, verify_flow

__all__ = [
    # Data models
    "GeneralMetric",
    "MetricTable",
    "FlowGrid",
    "HamiltonState",
    "FlowDiagnostics",
    "TransformedMetric",
    "HamiltonianValue",
    "MetricSample",
    # Expressions and loading
    "variables",
    "parse_coefficient",
    "compile_coefficient",
    "metric_field",
    "metric_from_dict",
    "grid_from_dict",
    "load_metric",
    # Hamilton flow
    "hamiltonian",
    "apply_u",
    "integral_to_infinity",
    "solve_fixed_point",
    # Checks and transformation
    "verify_flow",
    "phase_residual",
    "bracket",
    "jacobian",
    "lower_metric",
    "transform_metric",
]
