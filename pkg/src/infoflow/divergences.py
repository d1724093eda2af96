"""Distinguishability quantifiers for pairs of density matrices.

All entropic quantities are in nats unless a ``base`` is passed. The
normalized quantifiers (``holevo_skew``, ``quantum_skew``,
``jensen_shannon``) do not depend on the base.
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import qla
from .tolerances import TOL

#: When true, ``holevo_skew`` evaluates both of its formulas and compares them.
CROSS_CHECK = os.environ.get("INFOFLOW_CROSS_CHECK", "") not in ("", "0")


class CrossCheckError(AssertionError):
    pass


def check_mu(mu: float) -> float:
    mu = float(mu)
    if not 0.0 < mu < 1.0:
        raise ValueError(f"skewing parameter must lie in (0, 1), got {mu}")
    return mu


def _xlogx(w: np.ndarray, base: float) -> float:
    w = w[w > 0.0]
    return float(np.sum(w * np.log(w))) / math.log(base)


def von_neumann_entropy(rho, base: float = math.e) -> float:
    return max(0.0, -_xlogx(qla.eigvalsh(rho), base))


def binary_entropy(mu: float, base: float = math.e) -> float:
    mu = check_mu(mu)
    h = -mu * math.log(mu) - (1.0 - mu) * math.log1p(-mu)
    return h / math.log(base)


def _relative_entropy_spectral(a, b, base: float, check_support: bool) -> float:
    """Sum of ``|<a_i|b_j>|^2 (a_i log(a_i/b_j) - a_i + b_j)`` over both spectra.

    Every term is nonnegative and evaluated as ``b phi(a/b)`` with
    ``phi(1 + x) = (1 + x) log1p(x) - x``, so nearly equal operators keep full
    relative accuracy instead of cancelling two O(1) traces.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    wa, va = np.linalg.eigh(0.5 * (a + a.conj().T))
    wb, vb = np.linalg.eigh(0.5 * (b + b.conj().T))
    lo = min(wa[0], wb[0])
    if lo < -TOL.structural:
        raise ValueError(f"relative entropy needs positive operators, min eigenvalue {lo:.3e}")
    in_a = wa > TOL.support
    in_b = wb > TOL.support
    if check_support and np.any(~in_b) and np.any(in_a):
        # weight of A outside supp B; eigenvectors of tiny eigenvalues are only
        # determined to ~sqrt(eps / w), so compare masses, not projectors
        outside = np.abs(va[:, in_a].conj().T @ vb[:, ~in_b]) ** 2
        if float(wa[in_a] @ outside.sum(axis=1)) > TOL.support:
            return math.inf
    overlap = np.abs(va.conj().T @ vb[:, in_b]) ** 2
    wb_in = wb[in_b][None, :]
    ratio = np.where(in_a, wa, 0.0)[:, None] / wb_in
    x = ratio - 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        phi = np.where(ratio > 0.0, ratio * np.log1p(x) - x, 1.0)
    # terms with a_i above threshold but b_j below it are dropped: support already checked
    value = float(np.sum(overlap * wb_in * phi))
    return value / math.log(base)


def relative_entropy_general(a, b, base: float = math.e) -> float:
    """tr A log A - tr A log B + tr(B - A) for positive operators A, B.

    Returns ``math.inf`` when the support of A is not contained in that of B.
    """
    return _relative_entropy_spectral(a, b, base, check_support=True)


def relative_entropy(rho, sigma, base: float = math.e) -> float:
    return relative_entropy_general(rho, sigma, base)


def _relative_entropy_to_mixture(rho, mixture, base: float) -> float:
    # the mixture contains rho with positive weight, so its support always covers rho's
    return _relative_entropy_spectral(rho, mixture, base, check_support=False)


def trace_distance(rho, sigma) -> float:
    return 0.5 * float(np.sum(np.abs(qla.eigvalsh(np.asarray(rho) - np.asarray(sigma)))))


def helstrom(rho, sigma, mu: float) -> float:
    mu = check_mu(mu)
    diff = mu * np.asarray(rho) - (1.0 - mu) * np.asarray(sigma)
    return float(np.sum(np.abs(qla.eigvalsh(diff))))


def helstrom_symmetrized(rho, sigma, mu: float) -> float:
    return 0.5 * (helstrom(rho, sigma, mu) + helstrom(sigma, rho, mu))


def holevo_chi(rho, sigma, mu: float, base: float = math.e) -> float:
    mu = check_mu(mu)
    rho, sigma = np.asarray(rho), np.asarray(sigma)
    mix = mu * rho + (1.0 - mu) * sigma
    chi = (
        von_neumann_entropy(mix, base)
        - mu * von_neumann_entropy(rho, base)
        - (1.0 - mu) * von_neumann_entropy(sigma, base)
    )
    return max(0.0, chi)


def holevo_skew_relative(rho, sigma, mu: float, base: float = math.e) -> float:
    """Holevo skew divergence as weighted relative entropies to the mixture."""
    mu = check_mu(mu)
    rho, sigma = np.asarray(rho), np.asarray(sigma)
    mix = mu * rho + (1.0 - mu) * sigma
    h_mu = binary_entropy(mu, base)
    h_nu = binary_entropy(1.0 - mu, base)
    return (
        mu / h_mu * _relative_entropy_to_mixture(rho, mix, base)
        + (1.0 - mu) / h_nu * _relative_entropy_to_mixture(sigma, mix, base)
    )


def holevo_skew_entropic(rho, sigma, mu: float, base: float = math.e) -> float:
    """Holevo skew divergence as ``chi_mu / h(mu)`` from von Neumann entropies."""
    return holevo_chi(rho, sigma, mu, base) / binary_entropy(mu, base)


def holevo_skew(rho, sigma, mu: float, base: float = math.e, cross_check: bool | None = None) -> float:
    """Holevo quantity of the ensemble {mu: rho, 1 - mu: sigma} divided by h(mu).

    Evaluated through relative entropies to the mixture, which stay accurate
    for nearly identical states where the entropy differences round to zero.
    With ``cross_check`` (default: the module flag ``CROSS_CHECK``) the
    entropic formula is evaluated as well and must agree.
    """
    k = holevo_skew_relative(rho, sigma, mu, base)
    if CROSS_CHECK if cross_check is None else cross_check:
        other = holevo_skew_entropic(rho, sigma, mu, base)
        if abs(k - other) > TOL.structural:
            raise CrossCheckError(f"holevo_skew paths disagree: {k!r} vs {other!r}")
    return min(1.0, k)


def quantum_skew(rho, sigma, mu: float, base: float = math.e) -> float:
    mu = check_mu(mu)
    rho, sigma = np.asarray(rho), np.asarray(sigma)
    mix = mu * rho + (1.0 - mu) * sigma
    # the normalizing logarithms carry the same base as the relative entropies
    lb = math.log(base)
    first = mu / (-math.log(mu) / lb) * _relative_entropy_to_mixture(rho, mix, base)
    second = (1.0 - mu) / (-math.log1p(-mu) / lb) * _relative_entropy_to_mixture(sigma, mix, base)
    return min(1.0, first + second)


def jensen_shannon(rho, sigma, base: float = math.e) -> float:
    """Relative entropies of both states to their midpoint, over ``2 log 2``."""
    rho, sigma = np.asarray(rho), np.asarray(sigma)
    mid = 0.5 * (rho + sigma)
    total = _relative_entropy_to_mixture(rho, mid, base) + _relative_entropy_to_mixture(sigma, mid, base)
    return min(1.0, total / (2.0 * math.log(2.0) / math.log(base)))


def sqrt_jensen_shannon(rho, sigma) -> float:
    return math.sqrt(jensen_shannon(rho, sigma))


def support_projector(rho) -> np.ndarray:
    w, v = np.linalg.eigh(np.asarray(rho, dtype=complex))
    keep = v[:, w > TOL.support]
    return keep @ keep.conj().T


def support_orthogonal(rho, sigma) -> bool:
    overlap = support_projector(rho) @ support_projector(sigma)
    return bool(np.linalg.norm(overlap, 2) < TOL.overlap)


#: Quantifiers addressable by name; skewed ones take ``mu`` as a keyword.
QUANTIFIERS = {
    "trace_distance": trace_distance,
    "helstrom": helstrom,
    "helstrom_symmetrized": helstrom_symmetrized,
    "holevo_skew": holevo_skew,
    "quantum_skew": quantum_skew,
    "jensen_shannon": jensen_shannon,
    "sqrt_jensen_shannon": sqrt_jensen_shannon,
}
SKEWED = frozenset({"helstrom", "helstrom_symmetrized", "holevo_skew", "quantum_skew"})


def quantifier(name: str, mu: float = 0.5):
    """Return ``(rho, sigma) -> value`` for a named quantifier at skewing ``mu``."""
    try:
        fn = QUANTIFIERS[name]
    except KeyError:
        raise ValueError(f"unknown quantifier {name!r}; choose from {sorted(QUANTIFIERS)}") from None
    if name in SKEWED:
        mu = check_mu(mu)
        return lambda r, s: fn(r, s, mu)
    return fn
