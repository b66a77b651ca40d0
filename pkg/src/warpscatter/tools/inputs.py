"""Loading and sampling helpers shared by the runners."""

from typing import Optional

import numpy as np

from warpscatter.core.errors import SpecError
from warpscatter.core.numerics import bump
from warpscatter.manifold import ManifoldSpec, load_manifold

from .constants import (
    ERROR_CONFIG_REQUIRED,
    ERROR_END,
    FIELD_RADIUS,
    SAMPLES_PER_UNIT,
    SOURCE_BUMPS,
    SOURCE_MARGIN,
    SOURCE_WIDTH,
)
from .models import RunConfig


def load_spec(config: RunConfig) -> ManifoldSpec:
    if config.config is None:
        raise SpecError(ERROR_CONFIG_REQUIRED.format(command=config.command))
    spec = load_manifold(config.config)
    if config.end >= spec.end_count:
        raise SpecError(ERROR_END.format(count=spec.end_count, end=config.end))
    return spec


def radial_samples(spec: ManifoldSpec, radius: Optional[float] = None) -> np.ndarray:
    """Uniform radii over [0, R] on a half-line, [-R, R] on a full line."""
    radius = radius or FIELD_RADIUS
    lo = 0.0 if spec.topology == "half_line" else -radius
    count = int(round((radius - lo) * SAMPLES_PER_UNIT)) + 1
    return np.linspace(lo, radius, count)


def random_source(rng: np.random.Generator, r: np.ndarray, rows: int) -> np.ndarray:
    """Mode coefficients (rows, len(r)): sums of C^∞ bumps with complex normal weights."""
    lo, hi = float(r[0]), float(r[-1])
    span = hi - lo
    f = np.zeros((rows, r.size), dtype=complex)
    for j in range(rows):
        for _ in range(SOURCE_BUMPS):
            center = rng.uniform(lo + SOURCE_MARGIN * span, hi - SOURCE_MARGIN * span)
            width = rng.uniform(*SOURCE_WIDTH) * span
            f[j] += complex(rng.normal(), rng.normal()) * bump((r - center) / width)
    return f
