"""Constants for the radial module."""

# Error messages
ERROR_CLOSED_CHANNEL = "λ = {lam} is at or below the channel bottom E0 = {E0}"
ERROR_R_MAX = "R_max = {r_max} is too small: the tail construction needs R_max >= {need}"
ERROR_K_ZERO = "phase recursion needs k != 0"
ERROR_NEAR_EXCEPTIONAL = "λ = {lam} is numerically on the exceptional set: |Ψ(0)| = {value:.3e}"
ERROR_COMPLEX_LAMBDA = "Jost solutions are computed for real λ only, got {lam}"
ERROR_SOURCE_SHAPE = "source has {got} samples, the kernel grid has {need}"
ERROR_HALF_LINE = "regular solutions start at the Dirichlet wall r = 0, got r_lo = {r_lo}"
ERROR_NOT_REGULAR = "end has no power decay (eps = {eps}); WKB data needs a regular end"
ERROR_TAIL_CONTRACTION = (
    "tail remainder of the phase recursion beyond R_max = {r_max} has contraction bound {bound:.3g} >= {limit:g}"
)

# Sup over the tail for the onset constant
ONSET_SCAN_MAX = 1.0e6
ONSET_SCAN_POINTS = 4000

# Far end of the tail quadrature, as a multiple of R_max
TAIL_FACTOR = 1.0e3

# Largest accepted (1/|k|)∫_{R_max}^∞ |ψ_m residual| dr
TAIL_CONTRACTION_MAX = 0.5

# Riccati blow-up guard: switch to the linear equation above this |ψ| / (1 + |k|)
RICCATI_GUARD = 1.0e6

# Nodes per rescaling chunk of the linear propagator
CHUNK = 64
