"""
Wave module

Time-domain evolution of single modes, the finite-speed check, the
time-domain source-to-solution kernel, Blagovestchenskii identities and the
bridge to the stationary resolvent.
"""

from .blago import (
    blago_cross,
    blago_gram,
    blago_identity,
    blago_pairing,
    blago_volume_pairing,
    source_moment,
    time_reversal,
)
from .kernel import time_sts_kernel
from .models import (
    BlagoReport,
    FiniteSpeedReport,
    InitialData,
    LimitingAmplitudeReport,
    StationaryReport,
    TimeSource,
    TimeSourceToSolutionKernel,
    VolumePairingReport,
    WaveField,
    WaveGrid,
)
from .operator import WaveOperator, build_operator, time_step
from .solver import default_grid, finite_speed_check, mode_eigenvalue, wave_solve, wave_solve_modes
from .stationary import damped_transform, limiting_amplitude, resolvent_reference, stationary_from_time

__all__ = [
    # Data models
    "TimeSource",
    "InitialData",
    "WaveGrid",
    "WaveField",
    "FiniteSpeedReport",
    "TimeSourceToSolutionKernel",
    "BlagoReport",
    "VolumePairingReport",
    "StationaryReport",
    "LimitingAmplitudeReport",
    # Discretization
    "WaveOperator",
    "build_operator",
    "time_step",
    "default_grid",
    "mode_eigenvalue",
    # Evolution
    "wave_solve",
    "wave_solve_modes",
    "finite_speed_check",
    # Kernel and identities
    "time_sts_kernel",
    "time_reversal",
    "blago_cross",
    "blago_gram",
    "blago_identity",
    "blago_pairing",
    "blago_volume_pairing",
    "source_moment",
    # Stationary bridge
    "damped_transform",
    "stationary_from_time",
    "resolvent_reference",
    "limiting_amplitude",
]
