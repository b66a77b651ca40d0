"""Constants for the command runners."""

# Error messages
ERROR_CONFIG_REQUIRED = "Command '{command}' needs --config PATH"
ERROR_OUT_NOT_WRITABLE = "Output directory {path} is not writable: {error}"
ERROR_LAMBDA_GRID = "Invalid --lambda '{text}': expected A:B:N with N >= 1, or a single value"
ERROR_PAIR = "Invalid {name} '{text}': expected A:B with A < B"
ERROR_METRIC_GRID = "Metric config {path} has no `grid` block"
ERROR_END = "Manifold has {count} end(s); --end {end} is out of range"
ERROR_MISSING = "Command '{command}' needs {flag}"

# Success messages
MSG_DONE = "{command}: {count} artifact(s) written to {out}"

# Defaults of RunConfig
DEFAULT_LAMBDAS = (1.25,)
DEFAULT_LAMBDA_MAX = 1.0
DEFAULT_T = 1.0
DEFAULT_TOL = 1e-6
DEFAULT_OUT = "results"

# Source band of wave runs on a half-line when none is given
DEFAULT_BAND = (1.0, 2.0)

# Resolvent fields: radial samples per unit length, and the half-width of the sampled range
SAMPLES_PER_UNIT = 100
FIELD_RADIUS = 10.0

# Random sources: bumps per channel; centers keep this fraction of the range clear at each side,
# half-widths are drawn from this fraction range
SOURCE_BUMPS = 3
SOURCE_MARGIN = 0.2
SOURCE_WIDTH = (0.05, 0.1)

# Blagovestchenskii check: source pairs drawn per run
BLAGO_PAIRS = 2

MANIFEST = "manifest.json"
