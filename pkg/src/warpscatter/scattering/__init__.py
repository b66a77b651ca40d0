"""
Scattering module

Manifold-level channel spaces, Helmholtz solutions with prescribed incoming
data, the (generalized) scattering matrix, resolvent boundary values,
generalized Fourier coefficients and the embedded-eigenvalue probe.
"""

from .channels import (
    channel_space,
    data_vector,
    end_kind,
    matching_determinant,
    mode_basis,
    restrict,
    wronskian_at,
)
from .helmholtz import helmholtz_bvp, match_mode
from .kernel import source_to_solution_stationary
from .models import (
    ChannelLabel,
    ChannelSpace,
    EmbeddedProbeReport,
    FarFieldReadout,
    FourierCoefficients,
    HelmholtzSolution,
    ModeBasis,
    ParsevalReport,
    ProbeMode,
    ResolventField,
    ScatteringMatrix,
    SideBasis,
    SMatrixSweep,
    SourceToSolutionKernel,
)
from .probe import embedded_eigenvalue_probe, l2_determinant
from .resolvent import (
    far_field_readout,
    field_samples,
    fourier_coeff,
    fourier_from_field,
    modal_source,
    mode_bases,
    parseval_check,
    resolvent_apply,
)
from .smatrix import s_matrix, s_matrix_payload, s_matrix_sweep, scattering_phase

__all__ = [
    # Data models
    "ChannelLabel",
    "ChannelSpace",
    "SideBasis",
    "ModeBasis",
    "HelmholtzSolution",
    "ScatteringMatrix",
    "SMatrixSweep",
    "ResolventField",
    "FarFieldReadout",
    "FourierCoefficients",
    "ParsevalReport",
    "SourceToSolutionKernel",
    "ProbeMode",
    "EmbeddedProbeReport",
    # Channels and bases
    "channel_space",
    "end_kind",
    "mode_basis",
    "restrict",
    "wronskian_at",
    "data_vector",
    "matching_determinant",
    # Helmholtz and S-matrix
    "helmholtz_bvp",
    "match_mode",
    "s_matrix",
    "s_matrix_sweep",
    "s_matrix_payload",
    "scattering_phase",
    # Resolvent and Fourier
    "modal_source",
    "field_samples",
    "mode_bases",
    "resolvent_apply",
    "fourier_coeff",
    "fourier_from_field",
    "parseval_check",
    "far_field_readout",
    # Stationary source-to-solution
    "source_to_solution_stationary",
    # Probe
    "embedded_eigenvalue_probe",
    "l2_determinant",
]
