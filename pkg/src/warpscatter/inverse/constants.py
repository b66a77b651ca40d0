"""Constants for the inverse module."""

# Error messages
ERROR_KERNEL_MODE = "Inverse data need the l = 0 kernel, got l = {ell}"
ERROR_OUTSIDE_REGION = "{what} [{lo:g}, {hi:g}] is not inside the observation region [{a:g}, {b:g}]"
ERROR_RADIUS = "Radius {radius:g} must lie in ({eps:g}, T = {T:g}]"
ERROR_WIDTH = "Probe size {eps:g} is too small for the kernel grid (dr = {dr:g}, dt = {dt:g})"
ERROR_BAND = "Band [{lo:g}, {hi:g}] is empty or reversed"
ERROR_VOLUME_T = "Volume time {T:g} lies outside the data horizon [0, {T_max:g}]"
ERROR_CONDITIONING = (
    "Gram matrix of {count} sources cannot be regularized at σ = {sigma:.3g} "
    "(largest eigenvalue {top:.3g}); enrich the source basis or raise σ"
)
ERROR_CONSISTENCY = (
    "Self-consistency error {defect:.3g} of the data leaves no room between "
    "the inclusion thresholds {lo:.3g} and {hi:.3g}"
)
ERROR_DIRECTION = (
    "Direction ψ = {psi:g} is not normal to the orbits; band data resolve only ψ = 0 (outward) "
    "and ψ = π (inward)"
)
ERROR_SEGMENT = "Geodesic segment length r̃ = {r_tilde:g} must exceed s = {s:g} and stay below T = {T:g}"
ERROR_NO_INCLUSION = "No inclusion detected for t up to {t_max:g}; the distance exceeds the data horizon"
ERROR_BEYOND_CUT = "r̃ = {r_tilde:g} is not below the cut-distance bound {bound:g}"
ERROR_CHART = "Geodesic leaves the observation region [{a:g}, {b:g}] at s = {s:g}"
ERROR_TURNING = "Geodesic integration stalled at a turning point near s = {s:g}"
ERROR_ORACLE_DOMAIN = "Geodesic reaches the edge of the manifold at s = {s:g}"

# Default Tikhonov parameter, relative to the mean diagonal of the Gram matrix
DEFAULT_SIGMA = 1e-4

# Number of σ halvings in the continuation report
CONTINUATION_STEPS = 8

# Continuation stops once a halving changes the volume by less than this (relative)
CONTINUATION_TOL = 1e-6

# σ below this multiple of machine epsilon times the largest Gram eigenvalue is refused
CONDITIONING_FLOOR = 1e3

# Default probe size ε
DEFAULT_EPSILON = 0.3

# Residuals are volume gains in units of Vol B(p, ε); a sliver of width ε outside the cover gives 0.5
# Residual at or below which an inclusion is accepted (raised to 10x the self-consistency error)
INCLUSION_TRUE = 0.15

# Residual at or above which an inclusion is rejected
INCLUSION_FALSE = 0.35

# Multiplier between the self-consistency error and the acceptance threshold
CONSISTENCY_FACTOR = 10.0

# Time lattices have spacing divisible by this many steps (probe densities 1, 2, 4)
LATTICE_DIVISOR = 4

# Minimal half-width of a bump in grid cells
MIN_BUMP_CELLS = 1.5

# Half-width of volume-basis bumps in grid cells (radial) and steps (temporal)
VOLUME_BUMP_CELLS = 3.0

# Geodesic segment s = SEGMENT_FACTOR · ε
SEGMENT_FACTOR = 1.5

# Bisection stops below this many time steps
BISECTION_STEPS = 1.0

# Clairaut integration: search step for turning radii, the gap 1 - c²/ρ² below
# which r = r_t ± u² takes over, the |u| below which the gap/u² series is used,
# and the difference step for (ρ'/ρ)' at r_t
TURNING_STEP = 1e-4
TURNING_GAP = 1e-3
TURNING_SERIES = 1e-3
TURNING_DIFF = 1e-5
# Orbit of an extremum of ρ when the start gap is below this
ORBIT_GAP = 1e-10

# Tolerances of the geodesic oracle
ORACLE_RTOL = 1e-12
ORACLE_ATOL = 1e-13
