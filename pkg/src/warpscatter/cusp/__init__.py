"""
Cusp module

Change of variable, transformed potential and the growing/decaying solution
pair on ends where ρ → 0.
"""

from .change import cusp_change, cusp_potential, potential_samples
from .models import CuspChange, CuspPotential, CuspSolutionPair
from .solve import cusp_solve, psi_eval

__all__ = [
    # Data models
    "CuspChange",
    "CuspPotential",
    "CuspSolutionPair",
    # Public API
    "cusp_change",
    "cusp_potential",
    "potential_samples",
    "cusp_solve",
    "psi_eval",
]
