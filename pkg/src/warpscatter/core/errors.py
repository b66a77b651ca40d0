"""Exception hierarchy shared by all modules.

Each family maps to one CLI exit code: invalid input exits 2,
numerical failures exit 3 and refusals near the exceptional set exit 4.
"""

from typing import Any, Optional

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_EXCEPTIONAL = 4


class WarpScatterError(Exception):
    """Base class; carries an exit code and a JSON-ready diagnostic dict."""

    exit_code: int = EXIT_NUMERIC

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "exit_code": self.exit_code,
            **self.details,
        }


class SpecError(WarpScatterError, ValueError):
    """Invalid input: malformed configuration, out-of-range parameters."""

    exit_code = EXIT_CONFIG


class DomainError(SpecError):
    """Evaluation point outside a profile's or solver's domain."""


class InconsistentSpecError(SpecError):
    """Declared asymptotic constants disagree with the fitted ones."""


class AliasingError(SpecError):
    """Too few cross-section samples for the requested mode range."""


class ClosedChannelError(SpecError):
    """Spectral parameter at or below the channel bottom."""


class StepError(SpecError):
    """Time step violates the stability (CFL) bound."""


class NonAdmissibleError(SpecError):
    """Decay exponents outside the admissibility strip, or no contraction."""


class NumericError(WarpScatterError):
    """A computation ran but could not meet its accuracy contract."""

    exit_code = EXIT_NUMERIC


class ConvergenceError(NumericError):
    """Iteration or tail construction failed; `suggested` holds a better parameter."""

    def __init__(self, message: str, suggested: Optional[float] = None, **details: Any):
        super().__init__(message, suggested=suggested, **details)
        self.suggested = suggested


class GridExtensionError(NumericError):
    """The sampled grid is too short for the requested construction."""


class ChartError(NumericError):
    """Coordinate change is too badly conditioned to trust."""


class ConditioningError(NumericError):
    """Linear system too ill-conditioned; usually the basis needs enriching."""


class ExceptionalPointError(WarpScatterError):
    """Refusal: the spectral parameter is numerically on the exceptional set."""

    exit_code = EXIT_EXCEPTIONAL


class ResonanceError(ExceptionalPointError):
    """Vanishing Wronskian / matching determinant."""
