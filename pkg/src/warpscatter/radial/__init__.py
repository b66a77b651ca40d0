"""
Radial module

Per-mode radial equation on regular ends and half-lines: WKB data, Jost and
regular solutions, the Green operator, phase recursion and radiation diagnostics.
"""

from .green import far_field_coeff, green_apply, green_kernel, kernel_entry, resolvent_pairing
from .jost import jost_solve
from .liouville import Coefficients, coefficients, ode_residual, weighted_wronskian
from .models import (
    GreenKernel,
    JostSolution,
    ModeProblem,
    PhaseFamily,
    RadiationDefect,
    RegularSolution,
    SampledSolution,
    WKBData,
)
from .phase import phase_recursion, recurse
from .radiation import apply_d, radiation_defect
from .regular import continue_down, propagate, regular_solve
from .wkb import decay_order, onset_constant, onset_radius, wkb_data

__all__ = [
    # Data models
    "ModeProblem",
    "SampledSolution",
    "WKBData",
    "JostSolution",
    "RegularSolution",
    "GreenKernel",
    "PhaseFamily",
    "RadiationDefect",
    "Coefficients",
    # Solutions
    "wkb_data",
    "decay_order",
    "onset_constant",
    "onset_radius",
    "jost_solve",
    "regular_solve",
    "propagate",
    "continue_down",
    # Green operator
    "green_kernel",
    "green_apply",
    "far_field_coeff",
    "kernel_entry",
    "resolvent_pairing",
    # Phase and radiation
    "phase_recursion",
    "recurse",
    "apply_d",
    "radiation_defect",
    # Diagnostics
    "coefficients",
    "weighted_wronskian",
    "ode_residual",
]
