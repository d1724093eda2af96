"""Dense linear algebra for small Hermitian operators.

Everything here works on plain complex ``numpy`` arrays. Eigendecompositions
go through :func:`eigh`, which either calls LAPACK or runs a cyclic complex
Jacobi sweep (slower, but deterministic and dependency free).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .tolerances import TOL


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class HermitianSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def check_hermitian(h, atol: float = TOL.structural) -> np.ndarray:
    h = as_matrix(h)
    defect = hermiticity_defect(h)
    if defect > atol:
        raise NotHermitianError(
            f"matrix is not Hermitian: max |H - H^dagger| = {defect:.3e} > {atol:.1e}"
        )
    return h


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi(h: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    a = h.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    off = 0.0
    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= tol * scale:
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(1.0, theta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # rotation restricted to the (p, q) plane; phase makes a_pq real first
                j = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ j
                a[idx, :] = j.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ j
    off = _off_norm(a)
    if off <= tol * scale:
        return np.real(np.diag(a)).copy(), v
    raise ConvergenceError(
        f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
    )


def eigh(h, method: str = "lapack", atol: float = TOL.structural) -> HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``method`` is ``"lapack"`` (numpy) or ``"jacobi"`` (cyclic Jacobi rotations,
    capped at ``TOL.max_sweeps`` sweeps).
    """
    h = check_hermitian(h, atol)
    h = 0.5 * (h + h.conj().T)
    if method == "lapack":
        w, v = np.linalg.eigh(h)
        return HermitianSpectrum(w, v)
    if method == "jacobi":
        w, v = _jacobi(h, TOL.solver, TOL.max_sweeps)
        order = np.argsort(w, kind="stable")
        return HermitianSpectrum(w[order], v[:, order])
    raise ValueError(f"unknown eigensolver {method!r}")


def eigvalsh(h) -> np.ndarray:
    """Ascending eigenvalues only; skips the Hermiticity check (internal hot path)."""
    h = np.asarray(h, dtype=complex)
    return np.linalg.eigvalsh(0.5 * (h + h.conj().T))


def tensor(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _check_dims(m: np.ndarray, dims: Sequence[int]) -> tuple[int, int]:
    if len(dims) != 2:
        raise ValueError(f"expected two subsystem dimensions, got {list(dims)}")
    d_s, d_e = (int(d) for d in dims)
    if d_s < 1 or d_e < 1 or d_s * d_e != m.shape[0]:
        raise ValueError(
            f"subsystem dimensions {d_s}x{d_e} inconsistent with matrix dimension {m.shape[0]}"
        )
    return d_s, d_e


def partial_trace(m, dims: Sequence[int], keep: int | str = 0) -> np.ndarray:
    """Reduce a bipartite operator on ``dims = (d_S, d_E)``.

    ``keep`` selects the surviving factor: ``0``/``"S"`` or ``1``/``"E"``.
    """
    m = as_matrix(m)
    d_s, d_e = _check_dims(m, dims)
    keep = {"S": 0, "E": 1}.get(keep, keep)
    t = m.reshape(d_s, d_e, d_s, d_e)
    if keep == 0:
        return np.einsum("ikjk->ij", t)
    if keep == 1:
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 0/'S' or 1/'E', got {keep!r}")


def trace_norm(t) -> float:
    return float(np.sum(np.abs(eigvalsh(check_hermitian(t)))))


def jordan_parts(t) -> tuple[np.ndarray, np.ndarray]:
    """Split ``T = T_plus - T_minus`` into orthogonal positive parts."""
    spec = eigh(t)
    v, w = spec.eigenvectors, spec.eigenvalues
    plus = (v * np.clip(w, 0.0, None)) @ v.conj().T
    minus = (v * np.clip(-w, 0.0, None)) @ v.conj().T
    return plus, minus


def apply_function_on_spectrum(h, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    spec = eigh(h)
    w = spec.eigenvalues
    with np.errstate(all="ignore"):
        fw = np.asarray(f(w), dtype=complex)
    bad = ~np.isfinite(fw)
    if np.any(bad):
        raise ValueError(f"function undefined at eigenvalue {w[bad][0]!r}")
    v = spec.eigenvectors
    return (v * fw) @ v.conj().T
