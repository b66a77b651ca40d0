"""Constants for the scattering module."""

# Error messages
ERROR_NO_OPEN_END = "mode {index} (λ_ℓ = {E}) is closed on every end at λ = {lam}"
ERROR_MATCHING = (
    "matching determinant {value:.3e} at λ = {lam}, mode {index}: "
    "λ is numerically on the exceptional set"
)
ERROR_END_ID = "end {end} does not exist on a {topology} manifold"
ERROR_INCOMING_CLOSED = "end {end} carries no incoming channel for mode {index} at λ = {lam}"
ERROR_FIELD_SHAPE = "source has shape {got}, expected (channels, radii) = {need}"
ERROR_REGION = "region [{lo}, {hi}] must lie inside the solution grid [{g_lo}, {g_hi}]"
ERROR_PROBE_RANGE = "probe λ = {lam} is not above every open threshold E0 = {E0}"
ERROR_PROBE_END = "embedded-eigenvalue probe needs a regular end with β0 > 1/3"
ERROR_COMPLEX_LAMBDA = "scattering quantities are computed for real λ only, got {lam}"
ERROR_SWEEP_EMPTY = "sweep needs at least one λ"

# Extent of a cusp side in t beyond the |V| <= 1/2 threshold
CUSP_T_MARGIN = 30.0

# Jost matching radius must exceed this multiple of the onset radius
ONSET_MARGIN = 2.05

# Unitarity residual above which a warning is logged
UNITARITY_TOL = 1e-6

# Relative variation of a weighted Wronskian above which a warning is logged
WRONSKIAN_TOL = 1e-6

# Smallest β0 for which the embedded-eigenvalue probe is meaningful
PROBE_BETA_MIN = 1.0 / 3.0

CONVENTION = {
    "expansion": "u ~ (π/√(λ-E0))^{1/2} ρ^{-(n-1)/2} (e^{-iφ} a_in - e^{+iφ} a_out)",
    "phase": "φ(λ, λ_ℓ, r) = ∫_{r0(λ, λ_ℓ)}^r α, per mode",
    "cusp_physical": "scalar amplitude of the constant function; weight vol(M)",
    "cusp_generalized": "u = a u0^(+) - b u0^(-) per channel; outside the unitarity check",
}

# Probe determinant below which a λ counts as a candidate embedded eigenvalue
PROBE_ZERO = 1e-6
