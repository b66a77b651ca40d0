"""Constants for the cusp module."""

# Error messages
ERROR_B_NONPOSITIVE = "cusp change of variable needs B > 0, got {B}"
ERROR_NOT_CUSP = "profile tail is {classification}, the cusp construction needs ρ → 0"
ERROR_NO_ORIGIN = "cusp change of variable integrates from r = 0, outside the {kind} profile domain"
ERROR_T0_NOT_FOUND = "|V| > 1/2 up to the end of the grid (r = {r_end}); extend R_max"
ERROR_RICCATI = "cusp Riccati integration failed on [{t_lo:.4g}, {t_hi:.4g}]: {message}"
ERROR_OUTSIDE_CHANGE = "r = {r} outside the sampled change of variable [{lo}, {hi}]"

# Default end of the cusp grid; t grows like e^r on exponential cusps
DEFAULT_R_MAX = 8.0

# Nodes of the fine r-grid carrying s(r) and ψ(r)
CHANGE_POINTS = 20001

# Extra length in t integrated beyond the last requested node
TAIL_T = 20.0

# Bound on |V| that fixes t0
V_BOUND = 0.5

# Acceptable log-mismatch between the two constructions of the decaying solution
QUADRATURE_TOLERANCE = 1e-6
