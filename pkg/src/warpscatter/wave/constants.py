"""Constants for the wave module."""

# Error messages
ERROR_CFL = "Time step {dt:.4g} exceeds the stability bound {dt_max:.4g} (Courant ratio {ratio:.3f})"
ERROR_MODE = "Cross-section has no eigenvalue with index {ell}"
ERROR_GRID = "Wave grid [{lo:g}, {hi:g}] with step {dr:g} has fewer than {need} nodes"
ERROR_GRID_DOMAIN = "Wave grid [{lo:g}, {hi:g}] leaves the manifold domain [{d_lo:g}, {d_hi:g}]"
ERROR_WEIGHT_RANGE = "log ρ^(n-1) reaches {log_g:.4g} on the wave grid; shorten T_final or the grid"
ERROR_SUPPORT = "Time source samples are non-zero outside the declared support {support}"
ERROR_SOURCE = "Time source of kind '{kind}' needs {fields}"
ERROR_TIME_GRID = "T = {T:g} is not a whole number of steps dt = {dt:g}"
ERROR_WINDOW = "Observation window [{lo:g}, {hi:g}] holds no node of the wave grid"
ERROR_KERNEL_REGION = "Kernel region [{lo:g}, {hi:g}] holds fewer than {need} interior grid nodes"
ERROR_KERNEL_SOURCE = "Source samples have shape {got}, the kernel expects {need}"
ERROR_KERNEL_LATE = "Sources of the identity route must vanish after T = {T:g}"
ERROR_VOLUME_MODE = "Pairing with the constant function needs the l = 0 mode, got l = {ell}"
ERROR_TRUNCATION = "Damped transform truncated at T_final = {T:g}: e^(-eps T) = {tail:.3g} exceeds {tol:.3g}"
ERROR_EPSILONS = "Damping values must be positive and distinct, got {eps}"
ERROR_SEPARABLE = "Source of kind '{kind}' is not a product of a radial and a temporal profile"
ERROR_HISTORY = "Wave field keeps every {stride}th step; the transform needs the full history"
ERROR_AMPLITUDE_WINDOW = "Averaging window [{lo:g}, {hi:g}] is not inside the run [0, {T:g}]"

# Nodes of free margin beyond the domain of influence on default grids
HALO_CELLS = 10

# Default space step
DEFAULT_DR = 0.02

# A Gaussian is treated as supported within this many widths of its center
GAUSSIAN_WIDTHS = 8.0

# Bound on |log ρ^(n-1)| over a wave grid
MAX_LOG_WEIGHT = 650.0

# Finite-speed leakage, relative to the field maximum, that still passes
LEAKAGE_TOL = 1e-6

# e^(-eps T_final) allowed in a damped transform
TRUNCATION_TOL = 1e-6

# Fine quadrature nodes for continuum reference integrals
REFERENCE_NODES = 4001
