"""Distinguishability quantifiers and information-backflow bounds for open quantum systems."""

__version__ = "0.1.0"

from .divergences import (  # noqa: E402
    binary_entropy,
    helstrom,
    helstrom_symmetrized,
    holevo_chi,
    holevo_skew,
    jensen_shannon,
    quantum_skew,
    relative_entropy,
    relative_entropy_general,
    sqrt_jensen_shannon,
    support_orthogonal,
    trace_distance,
    von_neumann_entropy,
)
