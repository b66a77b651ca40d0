"""
Manifold module

Warp profiles, end classification, asymptotic constants and thresholds.
"""

from .fitting import (
    classify_ends,
    end_threshold,
    essential_spectrum_bottom,
    fit_tail,
    symbol_decay_fit,
)
from .loader import load_manifold, spec_from_dict
from .models import (
    DecayFit,
    EndConstants,
    EndFit,
    EndSpec,
    ManifoldSpec,
    RadialProfile,
)
from .profiles import LogProfile, asymptotic_constants, eval_profile, log_profile

__all__ = [
    # Data models
    "RadialProfile",
    "EndConstants",
    "EndSpec",
    "ManifoldSpec",
    "DecayFit",
    "EndFit",
    "LogProfile",
    # Profiles
    "eval_profile",
    "log_profile",
    "asymptotic_constants",
    # Fitting
    "symbol_decay_fit",
    "classify_ends",
    "fit_tail",
    "end_threshold",
    "essential_spectrum_bottom",
    # Configuration
    "load_manifold",
    "spec_from_dict",
]
