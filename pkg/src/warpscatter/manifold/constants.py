"""Constants for the manifold module."""

# Error messages
ERROR_OUT_OF_DOMAIN = "r = {r} outside the domain of the {kind} profile ({domain})"
ERROR_NONPOSITIVE_RHO = "{kind} profile is not positive at r = {r}"
ERROR_FIT_SAMPLES = "decay fit needs >= {need} samples spanning a decade, got {got} over ratio {ratio:.3g}"
ERROR_INCONSISTENT = "end {end}: declared {name} = {declared} but tail fit gives {fitted}"
ERROR_HALF_LINE_ORIGIN = "half_line profile must be finite and positive at r = 0"
ERROR_END_COUNT = "{topology} manifold needs {need} end(s), got {got}"
ERROR_CONFIG_READ = "Failed to read manifold config {path}: {error}"
ERROR_CONFIG_INVALID = "Invalid manifold config: {error}"

# Tail sampling used by classify_ends for analytic profiles
TAIL_R_MIN = 1.0
TAIL_R_MAX = 1.0e4
TAIL_SAMPLES = 200

# Slope-ratio test for decay faster than any power
FASTER_RATIO = 1.5
FASTER_MIN_SLOPE = -1.0

TINY = 1e-300
