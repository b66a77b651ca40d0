"""
Inverse module

Recovery of volumes of domains of influence and of distances from the
source-to-solution kernel on an observation region, in the
rotation-invariant sector, together with the geometric oracles that check
them against a known manifold.
"""

from .crossing import crossing_ball_test, crossing_ball_tests, decide, inclusion_residual, reference_volume, thresholds
from .data import build_inverse_data, inverse_data_from_kernel
from .distance import cut_locus_bound, distance_recover
from .geodesic import focal_distance, geodesic_oracle, local_geodesic, manifold_bounds, normal_sign
from .influence import ball_inclusion, band_ball, domain_of_influence, volume_oracle
from .models import (
    CrossingResult,
    CutLocusReport,
    DistanceReport,
    DomainOfInfluence,
    GeodesicSamples,
    InverseProblemData,
    VolumeReport,
)
from .sources import SourceBank, SourceFamily
from .volume import Minimization, band_volume, minimize_functional, recover_volumes, volume_recover

__all__ = [
    # Data models
    "InverseProblemData",
    "DomainOfInfluence",
    "VolumeReport",
    "CrossingResult",
    "DistanceReport",
    "CutLocusReport",
    "GeodesicSamples",
    # Data assembly
    "build_inverse_data",
    "inverse_data_from_kernel",
    "SourceBank",
    "SourceFamily",
    # Volumes
    "Minimization",
    "minimize_functional",
    "band_volume",
    "volume_recover",
    "recover_volumes",
    # Crossing balls and distances
    "reference_volume",
    "inclusion_residual",
    "thresholds",
    "decide",
    "crossing_ball_test",
    "crossing_ball_tests",
    "distance_recover",
    "cut_locus_bound",
    # Geometry
    "normal_sign",
    "local_geodesic",
    "manifold_bounds",
    "geodesic_oracle",
    "focal_distance",
    "band_ball",
    "domain_of_influence",
    "volume_oracle",
    "ball_inclusion",
]
