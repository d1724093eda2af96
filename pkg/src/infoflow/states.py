"""Density-matrix construction, validation and random sampling.

States are plain complex ``numpy`` arrays. Single-qubit arrays use the
ordering ``(|1>, |0>)``: index 0 is the excited state (sigma_z = +1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qla
from .tolerances import TOL

EXCITED, GROUND = 0, 1


class InvalidStateError(ValueError):
    pass


@dataclass(frozen=True)
class ThermalSpec:
    beta_omega: float
    cutoff: int = 40

    def __post_init__(self):
        if not self.beta_omega > 0:
            raise ValueError(f"beta_omega must be positive, got {self.beta_omega}")
        if int(self.cutoff) < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")


def validate(m, atol: float = TOL.structural) -> np.ndarray:
    """Return ``m`` as a complex array if it is a density matrix, else raise.

    Eigenvalues in ``[-atol, 0)`` are tolerated and left untouched.
    """
    m = qla.as_matrix(m)
    herm = qla.hermiticity_defect(m)
    if herm > atol:
        raise InvalidStateError(f"not Hermitian: max |M - M^dagger| = {herm:.3e}")
    tr = np.trace(m)
    if abs(tr - 1.0) > atol:
        raise InvalidStateError(f"trace is {tr.real:.12g}, defect {abs(tr - 1.0):.3e}")
    lo = float(qla.eigvalsh(m)[0])
    if lo < -atol:
        raise InvalidStateError(f"not positive semidefinite: min eigenvalue {lo:.3e}")
    return m


def is_state(m, atol: float = TOL.structural) -> bool:
    try:
        validate(m, atol)
    except (InvalidStateError, ValueError):
        return False
    return True


def pure(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).ravel()
    norm2 = float(np.vdot(v, v).real)
    if norm2 == 0.0:
        raise InvalidStateError("cannot build a pure state from the zero vector")
    return np.outer(v, v.conj()) / norm2


def maximally_mixed(d: int) -> np.ndarray:
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return np.eye(d, dtype=complex) / d


def thermal_probabilities(spec: ThermalSpec) -> np.ndarray:
    n = np.arange(int(spec.cutoff) + 1)
    w = np.exp(-spec.beta_omega * n)
    return w / w.sum()


def thermal_tail_mass(spec: ThermalSpec) -> float:
    """Untruncated Bose-Einstein weight above the cutoff, exp(-beta_omega (cutoff + 1))."""
    return float(np.exp(-spec.beta_omega * (int(spec.cutoff) + 1)))


def truncated_thermal(spec: ThermalSpec) -> np.ndarray:
    return np.diag(thermal_probabilities(spec)).astype(complex)


def plus_minus_pair() -> tuple[np.ndarray, np.ndarray]:
    """The orthogonal pair (|1> + |0>)/sqrt2 and (|1> - |0>)/sqrt2."""
    return pure([1.0, 1.0]), pure([1.0, -1.0])


# random sampling ------------------------------------------------------------

def random_state(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-induced random state of the given rank (full rank by default)."""
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_kraus(d: int, n_ops: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Kraus operators of a random CPTP map on a d-level system.

    The stacked Kraus operators form an isometry obtained by orthonormalizing
    a Gaussian ``(n_ops d) x d`` matrix.
    """
    g = rng.normal(size=(n_ops * d, d)) + 1j * rng.normal(size=(n_ops * d, d))
    v, _ = np.linalg.qr(g)
    return [v[k * d:(k + 1) * d, :] for k in range(n_ops)]


def apply_kraus(kraus, rho) -> np.ndarray:
    return sum(k @ rho @ k.conj().T for k in kraus)


def random_orthogonal_pair(d: int, rng: np.random.Generator, mixed: bool = False):
    """Two states with orthogonal supports, randomly rotated."""
    u = random_unitary(d, rng)
    if not mixed or d < 4:
        return pure(u[:, 0]), pure(u[:, 1])
    cut = d // 2
    a = rng.random(cut) + 0.1
    b = rng.random(d - cut) + 0.1
    rho = (u[:, :cut] * (a / a.sum())) @ u[:, :cut].conj().T
    sigma = (u[:, cut:] * (b / b.sum())) @ u[:, cut:].conj().T
    return rho, sigma
