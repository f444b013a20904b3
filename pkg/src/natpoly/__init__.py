"""Lattice polytopes built from the prime exponent vectors of natural numbers."""

__version__ = "0.1.0"

from .hull import Polytope, build_hull, extend_dimension_with_apex, grow, insert_point, locate
from .metrics import (MetricsRecord, diameter, ehrhart_count, euclidean_volume, f_vector,
                      facet_width, h_star, interior_lattice_count, metrics_record,
                      normalized_volume, skeleton)
from .numsys import SubsetSpec, exponent_vector, member_points, prime_count, primes_up_to
from .constants import VolumeSum, ratio_to_e, rho_digits, volume_sum

__all__ = [
    "Polytope", "build_hull", "extend_dimension_with_apex", "grow", "insert_point", "locate",
    "MetricsRecord", "diameter", "ehrhart_count", "euclidean_volume", "f_vector",
    "facet_width", "h_star", "interior_lattice_count", "metrics_record", "normalized_volume",
    "skeleton", "SubsetSpec", "exponent_vector", "member_points", "prime_count",
    "primes_up_to", "VolumeSum", "ratio_to_e", "rho_digits", "volume_sum",
]
