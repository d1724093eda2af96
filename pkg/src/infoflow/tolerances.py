"""Numerical tolerances shared by the whole library."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    structural: float = 1e-10
    solver: float = 1e-13
    violation: float = 1e-9
    support: float = 1e-12
    overlap: float = 1e-9
    zero_extension: float = 1e-300
    max_sweeps: int = 100


TOL = Tolerances()
