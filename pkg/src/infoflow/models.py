"""Exactly solvable system-environment models.

Both models evolve a qubit (ordering ``(|1>, |0>)``) jointly with its
environment and return a :class:`JointTrajectory` of global snapshots.

* spin star: central qubit dephasing through ``sigma_z x sigma_z^k`` couplings
  to ``N`` environment qubits that start maximally mixed;
* Jaynes-Cummings: qubit exchanging excitations with one bosonic mode that
  starts in a (truncated) thermal state. The propagator is the
  interaction-picture one, built exactly on excitation sectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import qla
from . import states as st
from .bounds import SnapshotPair
from .tolerances import TOL

MAX_DIM = 256


@dataclass
class JointTrajectory:
    times: np.ndarray
    snapshots: list[SnapshotPair]
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.times)

    def series(self, quantity) -> np.ndarray:
        """``quantity(rho_S(t), sigma_S(t))`` along the grid."""
        return np.array([quantity(s.rho_s, s.sigma_s) for s in self.snapshots])


def time_grid(horizon: float, points: int = 400) -> np.ndarray:
    if not horizon > 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    return np.linspace(0.0, float(horizon), int(points))


# spin star ---------------------------------------------------------------------

@dataclass
class SpinStarParams:
    n_env: int = 5
    couplings: Sequence[float] | None = None
    omega_s: float = 0.0
    omega_e: Sequence[float] | None = None
    mean_coupling: float = 1.0
    seed: int = 0

    def __post_init__(self):
        n = int(self.n_env)
        if n < 1:
            raise ValueError(f"n_env must be >= 1, got {self.n_env}")
        if 2 ** (n + 1) > MAX_DIM:
            raise ValueError(f"n_env = {n} exceeds the dimension cap {MAX_DIM}")
        self.n_env = n
        if self.couplings is None:
            rng = np.random.default_rng(self.seed)
            # uniform on (0, 2 * mean]
            self.couplings = 2.0 * self.mean_coupling * (1.0 - rng.random(n))
        self.couplings = np.asarray(self.couplings, dtype=float)
        self.omega_e = np.zeros(n) if self.omega_e is None else np.asarray(self.omega_e, dtype=float)
        if self.couplings.shape != (n,) or self.omega_e.shape != (n,):
            raise ValueError(f"couplings and omega_e must have length n_env = {n}")
        if np.any(self.couplings == 0):
            raise ValueError("couplings must be nonzero")


def _spin_star_energies(params: SpinStarParams) -> np.ndarray:
    """Diagonal of the Hamiltonian in the product sigma_z basis, system first."""
    z = np.array([1.0, -1.0])
    env_z = np.array(np.meshgrid(*([z] * params.n_env), indexing="ij")).reshape(params.n_env, -1)
    coupled = params.couplings @ env_z
    local = params.omega_e @ env_z
    return np.concatenate([params.omega_s + coupled + local, -params.omega_s - coupled + local])


def spin_star_hamiltonian(params: SpinStarParams) -> np.ndarray:
    return np.diag(_spin_star_energies(params)).astype(complex)


def spin_star_evolve(params: SpinStarParams, pair=None, times=None) -> JointTrajectory:
    rho0, sigma0 = st.plus_minus_pair() if pair is None else pair
    if np.shape(rho0) != (2, 2) or np.shape(sigma0) != (2, 2):
        raise ValueError("spin-star system states must be 2x2")
    times = time_grid(5.0) if times is None else np.asarray(times, dtype=float)
    d_e = 2 ** params.n_env
    env = st.maximally_mixed(d_e)
    r0, s0 = qla.tensor(rho0, env), qla.tensor(sigma0, env)
    e = _spin_star_energies(params)
    gaps = e[:, None] - e[None, :]
    snaps = []
    for t in times:
        phase = np.exp(-1j * gaps * t)
        snaps.append(SnapshotPair(r0 * phase, s0 * phase, (2, d_e)))
    return JointTrajectory(times, snaps, {"model": "spin-star", "couplings": params.couplings.tolist()})


def spin_star_coherence(params: SpinStarParams, t: float) -> complex:
    return np.exp(-2j * params.omega_s * t) * np.prod(np.cos(2.0 * params.couplings * t))


def spin_star_reduced_analytic(params: SpinStarParams, sign: int, t: float) -> np.ndarray:
    """Reduced state at ``t`` of the central qubit started in ``(|1> +- |0>)/sqrt2``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c = sign * 0.5 * spin_star_coherence(params, t)
    return np.array([[0.5, c], [np.conj(c), 0.5]], dtype=complex)


# Jaynes-Cummings ------------------------------------------------------------------

@dataclass
class JCParams:
    g: float = 1.0
    delta: float = 0.5
    beta_omega: float = 1.0
    cutoff: int = 40

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError(f"coupling g must be positive, got {self.g}")
        if int(self.cutoff) < 2:
            raise ValueError(f"cutoff must be >= 2, got {self.cutoff}")
        self.cutoff = int(self.cutoff)
        if 2 * (self.cutoff + 1) > MAX_DIM:
            raise ValueError(f"cutoff {self.cutoff} exceeds the dimension cap {MAX_DIM}")

    @property
    def thermal(self) -> st.ThermalSpec:
        return st.ThermalSpec(self.beta_omega, self.cutoff)


def _rabi_frequency(params: JCParams, n) -> np.ndarray:
    return np.sqrt(params.delta**2 + 4.0 * params.g**2 * np.asarray(n, dtype=float))


def _sin_over_f(f, t: float):
    # sin(f t / 2) / f, finite at f = 0
    return 0.5 * t * np.sinc(np.asarray(f) * t / (2.0 * np.pi))


def jc_c(params: JCParams, n, t: float):
    f = _rabi_frequency(params, n)
    return np.exp(0.5j * params.delta * t) * (
        np.cos(0.5 * f * t) - 1j * params.delta * _sin_over_f(f, t)
    )


def jc_d(params: JCParams, n, t: float):
    f = _rabi_frequency(params, n)
    return -2j * np.exp(0.5j * params.delta * t) * params.g * _sin_over_f(f, t)


def jc_index(params: JCParams, qubit: int, n: int) -> int:
    return qubit * (params.cutoff + 1) + n


def jc_propagator(params: JCParams, t: float) -> np.ndarray:
    """Interaction-picture propagator on the truncated ``2 x (cutoff + 1)`` space.

    Sector ``{|1,n>, |0,n+1>}`` carries ``[[c, sqrt(n+1) d], [-sqrt(n+1) d*, c*]]``
    evaluated at ``n + 1``; ``|0,0>`` carries ``c*(0)``. ``|1,cutoff>`` has no
    partner inside the truncated space and keeps phase 1.
    """
    m = params.cutoff + 1
    u = np.zeros((2 * m, 2 * m), dtype=complex)
    n = np.arange(params.cutoff)
    c = jc_c(params, n + 1, t)
    d = jc_d(params, n + 1, t)
    root = np.sqrt(n + 1.0)
    a = jc_index(params, st.EXCITED, n)
    b = jc_index(params, st.GROUND, n + 1)
    u[a, a] = c
    u[a, b] = root * d
    u[b, a] = -root * np.conj(d)
    u[b, b] = np.conj(c)
    u[jc_index(params, st.GROUND, 0), jc_index(params, st.GROUND, 0)] = np.conj(jc_c(params, 0, t))
    top = jc_index(params, st.EXCITED, params.cutoff)
    u[top, top] = 1.0
    return u


def jc_operators(params: JCParams) -> dict[str, np.ndarray]:
    """Truncated joint operators: sigma_plus_minus, number, annihilation, coupling."""
    m = params.cutoff + 1
    b = np.diag(np.sqrt(np.arange(1, m)), 1).astype(complex)
    sp = np.array([[0, 1], [0, 0]], dtype=complex)  # |1><0| in (|1>, |0>) ordering
    eye_s, eye_e = np.eye(2), np.eye(m)
    return {
        "excitation_s": qla.tensor(sp @ sp.conj().T, eye_e),
        "number": qla.tensor(eye_s, b.conj().T @ b),
        "b": b,
        "coupling": qla.tensor(sp, b) + qla.tensor(sp.conj().T, b.conj().T),
    }


def jc_hamiltonian(params: JCParams, omega_e: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Truncated ``(H, H0)`` with ``omega_s = omega_e + delta``; ``H0`` is the free part."""
    ops = jc_operators(params)
    h0 = (omega_e + params.delta) * ops["excitation_s"] + omega_e * ops["number"]
    return h0 + params.g * ops["coupling"], h0


def total_excitation(params: JCParams) -> np.ndarray:
    ops = jc_operators(params)
    return ops["excitation_s"] + ops["number"]


def jc_coefficients(params: JCParams, t: float) -> tuple[float, float, complex]:
    """Thermal averages alpha, beta, gamma of products of ``c`` at time ``t``."""
    p = st.thermal_probabilities(params.thermal)
    n = np.arange(params.cutoff + 1)
    c_n = jc_c(params, n, t)
    c_n1 = jc_c(params, n + 1, t)
    alpha = float(np.sum(p * np.abs(c_n) ** 2))
    beta = float(np.sum(p * np.abs(c_n1) ** 2))
    gamma = complex(np.sum(p * c_n * c_n1))
    return alpha, beta, gamma


def jc_reduced_analytic(params: JCParams, rho0, t: float) -> np.ndarray:
    rho0 = np.asarray(rho0, dtype=complex)
    alpha, beta, gamma = jc_coefficients(params, t)
    p1 = rho0[st.EXCITED, st.EXCITED]
    p0 = rho0[st.GROUND, st.GROUND]
    coh = rho0[st.EXCITED, st.GROUND]
    return np.array([
        [p0 * (1 - alpha) + p1 * beta, coh * gamma],
        [np.conj(coh * gamma), p0 * alpha + p1 * (1 - beta)],
    ], dtype=complex)


def jc_default_pair() -> tuple[np.ndarray, np.ndarray]:
    """Excited state and the balanced superposition ``(|1> + |0>)/sqrt2``."""
    return st.pure([1.0, 0.0]), st.pure([1.0, 1.0])


def jc_evolve(params: JCParams, pair=None, times=None) -> JointTrajectory:
    tail = st.thermal_tail_mass(params.thermal)
    if tail > 1e-12:
        raise ValueError(
            f"thermal tail mass {tail:.2e} above cutoff {params.cutoff} exceeds 1e-12; "
            "increase the cutoff"
        )
    rho0, sigma0 = jc_default_pair() if pair is None else pair
    times = time_grid(8.9 / params.g) if times is None else np.asarray(times, dtype=float)
    env = st.truncated_thermal(params.thermal)
    r0, s0 = qla.tensor(rho0, env), qla.tensor(sigma0, env)
    dims = (2, params.cutoff + 1)
    snaps = []
    for t in times:
        u = jc_propagator(params, t)
        ud = u.conj().T
        snaps.append(SnapshotPair(u @ r0 @ ud, u @ s0 @ ud, dims))
    return JointTrajectory(times, snaps, {"model": "jc"})
