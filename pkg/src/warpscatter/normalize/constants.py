"""Constants for the normalize module."""

# Error messages
ERROR_EXPRESSION = "Cannot parse coefficient expression {expr!r}: {error}"
ERROR_EXPRESSION_SYMBOLS = "Expression {expr!r} uses {names}; allowed variables are {allowed}"
ERROR_EXPRESSION_FUNCTION = "Expression {expr!r} calls {name}, which is not in the whitelist"
ERROR_EXPRESSION_CHARS = "Expression {expr!r} contains characters outside the grammar"
ERROR_SHAPE = "{name} must be {shape} for a {dim}-dimensional cross-section"
ERROR_NOT_POSITIVE = "metric matrix is not positive definite at t = {t:.6g} (smallest eigenvalue {eig:.3g})"
ERROR_STRIP = "decay exponents outside the admissibility strip: {failed}"
ERROR_NO_CONTRACTION = (
    "fixed-point map does not contract (ratios {ratios}); increase r_min beyond {r_min:g}"
)
ERROR_NOT_CONVERGED = "fixed point not reached after {iterations} iterations (residual {residual:.3g})"
ERROR_CHART = "Jacobian of (r, x) -> (t, z) has reciprocal condition {rcond:.3g} at r = {r:.6g}"
ERROR_GAUGE = "pulled-back inverse metric fails g^00 = 1, g^0k = 0 by {residual:.3g}"
ERROR_TABLE = "metric table {problem}"
ERROR_TABLE_RANGE = "metric table covers t <= {t_max:g}, flow grid needs up to {needed:g}"
ERROR_GRID = "flow grid needs 0 < r_min < r_max and at least {need} x nodes per axis"
ERROR_CONFIG_READ = "Failed to read metric config {path}: {error}"
ERROR_CONFIG_INVALID = "Invalid metric config: {error}"

# Functions allowed in coefficient expressions
ALLOWED_FUNCTIONS = ("exp", "log", "sqrt", "sin", "cos", "sinh", "cosh", "tanh")

# Flow grid defaults
R_MIN = 5.0
R_MAX = 5.0e4
POINTS_PER_DECADE = 200
MIN_X_NODES = 5

# Picard iteration
PICARD_RESIDUAL_TOL = 1e-8
# Steps below this are quadrature roundoff; contraction is judged only above it
PICARD_STEP_TOL = 1e-2 * PICARD_RESIDUAL_TOL
PICARD_MAX_ITER = 200

# transform_metric checks
MIN_RCOND = 1e-8
GAUGE_TOL = 1e-3
DECAY_TOLERANCE = 0.2

# Points fitted in the tail decay regressions
FIT_MIN_POINTS = 20
