"""
Modes module

Cross-section eigenvalues and eigenfunction projections.
"""

from .models import Channel, CrossSection, CustomEigenvalue, ModeSpectrum
from .spectrum import (
    basis_matrix,
    circle_points,
    eigen_list,
    expand,
    sphere_multiplicity,
    synthesize,
)

__all__ = [
    # Data models
    "CrossSection",
    "CustomEigenvalue",
    "Channel",
    "ModeSpectrum",
    # Public API
    "eigen_list",
    "expand",
    "synthesize",
    "basis_matrix",
    "circle_points",
    "sphere_multiplicity",
]
