"""Information-backflow inequalities and their numerical certificates.

Each check returns :class:`BoundCertificate` objects holding the left side,
the labelled right-side terms and the slack, so a failing inequality can be
inspected term by term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import divergences as dv
from . import qla
from .tolerances import TOL


class Inequality(str, Enum):
    # backflow bounds on a pair of global snapshots
    GENERAL_BACKFLOW = "general_backflow"
    HOLEVO_BACKFLOW = "holevo_backflow"
    SKEW_BACKFLOW = "skew_backflow"
    HELSTROM_BACKFLOW = "helstrom_backflow"
    SQRT_JS_BACKFLOW = "sqrt_js_backflow"
    # triangle-like inequalities on state triples
    HOLEVO_TRIANGLE_TD = "holevo_triangle_td"
    HOLEVO_TRIANGLE_TD_SWAPPED = "holevo_triangle_td_swapped"
    HOLEVO_TRIANGLE_FIRST = "holevo_triangle_first"
    HOLEVO_TRIANGLE_SECOND = "holevo_triangle_second"
    SKEW_TRIANGLE_TD = "skew_triangle_td"
    SKEW_TRIANGLE_TD_SWAPPED = "skew_triangle_td_swapped"
    SKEW_TRIANGLE_FIRST = "skew_triangle_first"
    SKEW_TRIANGLE_SECOND = "skew_triangle_second"
    HELSTROM_SHIFT_SECOND = "helstrom_shift_second"
    HELSTROM_SHIFT_FIRST = "helstrom_shift_first"
    HELSTROM_TRIANGLE = "helstrom_triangle"
    SQRT_JS_TRIANGLE = "sqrt_js_triangle"
    # relative-entropy inequalities on positive operators
    MIXTURE_SHIFT_SECOND = "mixture_shift_second"
    MIXTURE_SHIFT_FIRST = "mixture_shift_first"
    TELESCOPIC_FIRST_LOWER = "telescopic_first_lower"
    TELESCOPIC_FIRST_UPPER = "telescopic_first_upper"
    TELESCOPIC_SECOND_LOWER = "telescopic_second_lower"
    TELESCOPIC_SECOND_UPPER = "telescopic_second_upper"


@dataclass(frozen=True)
class BoundCertificate:
    """One inequality instance ``lhs <= sum(rhs_terms)``."""

    inequality: str
    lhs: float
    rhs_terms: dict[str, float] = field(default_factory=dict)
    tolerance: float = TOL.violation

    @property
    def rhs_total(self) -> float:
        return float(sum(self.rhs_terms.values()))

    @property
    def slack(self) -> float:
        rhs = self.rhs_total
        if math.isinf(rhs) and rhs == self.lhs:
            return 0.0
        return rhs - self.lhs

    @property
    def satisfied(self) -> bool:
        return self.slack >= -self.tolerance

    def as_dict(self) -> dict:
        return {
            "inequality": str(getattr(self.inequality, "value", self.inequality)),
            "lhs": self.lhs,
            "rhs_terms": dict(self.rhs_terms),
            "rhs_total": self.rhs_total,
            "slack": self.slack,
            "satisfied": self.satisfied,
        }


# scalar functions and constants ---------------------------------------------

def kappa_mu(mu: float) -> float:
    mu = dv.check_mu(mu)
    h = dv.binary_entropy(mu)
    return (8.0 * mu * (1.0 - mu) / h**3) ** 0.25


def varsigma_mu(mu: float) -> float:
    mu = dv.check_mu(mu)
    h = dv.binary_entropy(mu)
    lm, ln = math.log(mu), math.log1p(-mu)
    # lm**3 * ln**3 > 0: both logarithms are negative
    return -math.log(mu * (1.0 - mu)) * (mu * (1.0 - mu) / (2.0 * h * lm**3 * ln**3)) ** 0.25


def xlog1p_inv(x: float, c: float) -> float:
    """``x * log(1 + c / x)`` continuously extended by 0 at ``x = 0``."""
    if x < TOL.zero_extension:
        return 0.0
    return x * math.log1p(c / x)


def _check_unit(x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"argument must lie in [0, 1], got {x}")
    return x


def g_mu(x: float, mu: float) -> float:
    x, mu = _check_unit(x), dv.check_mu(mu)
    nu = 1.0 - mu
    return (mu * math.log1p(nu / mu * x) + nu * xlog1p_inv(x, mu / nu)) / dv.binary_entropy(mu)


def f_mu(x: float, mu: float) -> float:
    x, mu = _check_unit(x), dv.check_mu(mu)
    nu = 1.0 - mu
    return (
        mu / -math.log(mu) * math.log1p(nu / mu * x)
        + nu / -math.log(nu) * xlog1p_inv(x, mu / nu)
    )


def g_mu_sqrt_bound(x: float, mu: float) -> float:
    mu = dv.check_mu(mu)
    return math.sqrt(4.0 * mu * (1.0 - mu)) / dv.binary_entropy(mu) * math.sqrt(_check_unit(x))


def fourth_root_phi(scale: float) -> Callable[[float], float]:
    return lambda x: scale * max(x, 0.0) ** 0.25


def identity_phi(x: float) -> float:
    return x


def summed_revivals(series: Sequence[float]) -> float:
    x = np.asarray(series, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two points to sum revivals")
    return float(np.sum(np.clip(np.diff(x), 0.0, None)))


# triangle-like inequalities ---------------------------------------------------

_FAMILY_ALIASES = {
    "K": "K", "holevo_skew": "K",
    "S": "S", "quantum_skew": "S",
    "H": "H", "helstrom_symmetrized": "H", "helstrom": "H",
    "sqrtJ": "sqrtJ", "sqrt_jensen_shannon": "sqrtJ",
}


def _family(name: str) -> str:
    try:
        return _FAMILY_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown inequality family {name!r}") from None


def check_triangle_like(rho, sigma, tau, mu: float, family: str,
                        tol: float = TOL.violation) -> list[BoundCertificate]:
    shapes = {np.shape(rho), np.shape(sigma), np.shape(tau)}
    if len(shapes) != 1:
        raise ValueError(f"states have mismatched shapes {sorted(shapes)}")
    fam = _family(family)
    mu = dv.check_mu(mu)
    d = dv.trace_distance(sigma, tau)
    cert = lambda ineq, lhs, **terms: BoundCertificate(ineq, lhs, terms, tol)

    if fam in ("K", "S"):
        if fam == "K":
            q, by_td, const = dv.holevo_skew, g_mu, kappa_mu(mu)
            ids = (Inequality.HOLEVO_TRIANGLE_TD, Inequality.HOLEVO_TRIANGLE_TD_SWAPPED,
                   Inequality.HOLEVO_TRIANGLE_FIRST, Inequality.HOLEVO_TRIANGLE_SECOND)
        else:
            q, by_td, const = dv.quantum_skew, f_mu, varsigma_mu(mu)
            ids = (Inequality.SKEW_TRIANGLE_TD, Inequality.SKEW_TRIANGLE_TD_SWAPPED,
                   Inequality.SKEW_TRIANGLE_FIRST, Inequality.SKEW_TRIANGLE_SECOND)
        first = q(rho, sigma, mu) - q(rho, tau, mu)
        second = q(sigma, rho, mu) - q(tau, rho, mu)
        phi = const * q(sigma, tau, mu) ** 0.25
        return [
            cert(ids[0], first, td_term=by_td(d, mu)),
            # swapping the arguments swaps mu and 1 - mu
            cert(ids[1], second, td_term=by_td(d, 1.0 - mu)),
            cert(ids[2], first, phi=phi),
            cert(ids[3], second, phi=phi),
        ]
    if fam == "H":
        return [
            cert(Inequality.HELSTROM_SHIFT_SECOND,
                 dv.helstrom(rho, sigma, mu) - dv.helstrom(rho, tau, mu), td_term=2 * (1 - mu) * d),
            cert(Inequality.HELSTROM_SHIFT_FIRST,
                 dv.helstrom(sigma, rho, mu) - dv.helstrom(tau, rho, mu), td_term=2 * mu * d),
            cert(Inequality.HELSTROM_TRIANGLE,
                 dv.helstrom_symmetrized(rho, sigma, mu) - dv.helstrom_symmetrized(rho, tau, mu),
                 phi=dv.helstrom_symmetrized(sigma, tau, mu)),
        ]
    return [
        cert(Inequality.SQRT_JS_TRIANGLE,
             dv.sqrt_jensen_shannon(rho, sigma) - dv.sqrt_jensen_shannon(rho, tau),
             phi=dv.sqrt_jensen_shannon(sigma, tau)),
    ]


# relative-entropy inequalities --------------------------------------------------

def check_mixture_shift(rho1, rho2, sigma, mu: float,
                        tol: float = TOL.violation) -> tuple[BoundCertificate, BoundCertificate]:
    """Mixture-shift bounds on differences of relative entropies to mixtures.

    First certificate: the mixed-in state changes (second argument shift),
    bounded by ``log(1 + (1-mu)/mu * D)``. Second: the compared state changes,
    bounded by ``D log(1 + (1-mu)/(mu D))``.
    """
    mu = dv.check_mu(mu)
    nu = 1.0 - mu
    rho1, rho2, sigma = (np.asarray(x, dtype=complex) for x in (rho1, rho2, sigma))
    d = dv.trace_distance(rho1, rho2)
    s = dv.relative_entropy_general
    lhs1 = s(sigma, mu * sigma + nu * rho1) - s(sigma, mu * sigma + nu * rho2)
    lhs2 = s(rho1, mu * rho1 + nu * sigma) - s(rho2, mu * rho2 + nu * sigma)
    return (
        BoundCertificate(Inequality.MIXTURE_SHIFT_SECOND, lhs1, {"log_term": math.log1p(nu / mu * d)}, tol),
        BoundCertificate(Inequality.MIXTURE_SHIFT_FIRST, lhs2, {"log_term": xlog1p_inv(d, nu / mu)}, tol),
    )


def check_telescopic(w, x, y, tol: float = TOL.violation) -> list[BoundCertificate]:
    """Telescopic relative-entropy inequalities for positive W, X, Y.

    Returns the lower (``0 <= difference``) and upper certificates for both
    inequalities. ``Y = 0`` is allowed via the continuous extension.

    The first difference is taken without the ``tr(B - A)`` correction, i.e.
    ``tr W [log(W + X + Y) - log(W + X)]``; with the correction it would pick
    up ``-tr Y`` and its lower bound fails (scalar case w=1, x=0, y=1). In the
    second difference the corrections cancel.
    """
    w, x, y = (np.asarray(a, dtype=complex) for a in (w, x, y))
    for name, a in (("W", w), ("X", x), ("Y", y)):
        lo = float(qla.eigvalsh(a)[0])
        if lo < -TOL.structural:
            raise ValueError(f"{name} is not positive semidefinite (min eigenvalue {lo:.3e})")
    tw, ty = float(np.trace(w).real), float(np.trace(y).real)
    if tw <= 0.0:
        raise ValueError("tr W must be positive")
    s = dv.relative_entropy_general
    diff1 = s(w, w + x) - s(w, w + x + y) + ty
    diff2 = s(x, x + w) - s(x + y, x + y + w)
    return [
        BoundCertificate(Inequality.TELESCOPIC_FIRST_LOWER, -diff1, {}, tol),
        BoundCertificate(Inequality.TELESCOPIC_FIRST_UPPER, diff1, {"log_term": xlog1p_inv(tw, ty)}, tol),
        BoundCertificate(Inequality.TELESCOPIC_SECOND_LOWER, -diff2, {}, tol),
        BoundCertificate(Inequality.TELESCOPIC_SECOND_UPPER, diff2, {"log_term": xlog1p_inv(ty, tw)}, tol),
    ]


# backflow bounds -----------------------------------------------------------------

@dataclass
class SnapshotPair:
    """Global states of the two preparations at one instant, on ``S x E``."""

    rho_se: np.ndarray
    sigma_se: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        if np.shape(self.rho_se) != np.shape(self.sigma_se):
            raise ValueError("snapshot states have different shapes")
        qla._check_dims(np.asarray(self.rho_se), self.dims)

    @cached_property
    def rho_s(self):
        return qla.partial_trace(self.rho_se, self.dims, 0)

    @cached_property
    def rho_e(self):
        return qla.partial_trace(self.rho_se, self.dims, 1)

    @cached_property
    def sigma_s(self):
        return qla.partial_trace(self.sigma_se, self.dims, 0)

    @cached_property
    def sigma_e(self):
        return qla.partial_trace(self.sigma_se, self.dims, 1)

    @cached_property
    def rho_product(self):
        return qla.tensor(self.rho_s, self.rho_e)

    @cached_property
    def sigma_product(self):
        return qla.tensor(self.sigma_s, self.sigma_e)


RHS_LABELS = ("env", "corr_rho", "corr_sigma")


@dataclass(frozen=True)
class BackflowRule:
    """How to bound the revival of one quantifier from one snapshot.

    ``quantity`` measures open-system distinguishability; ``term_quantity``
    evaluates the three outside-information terms, which ``transforms`` then
    map to their contributions to the right side.
    """

    inequality: Inequality
    quantity: Callable
    term_quantity: Callable
    transforms: tuple[Callable, Callable, Callable]

    def terms(self, snap: SnapshotPair) -> dict[str, float]:
        raw = (
            self.term_quantity(snap.rho_e, snap.sigma_e),
            self.term_quantity(snap.rho_se, snap.rho_product),
            self.term_quantity(snap.sigma_se, snap.sigma_product),
        )
        return {k: float(f(v)) for k, f, v in zip(RHS_LABELS, self.transforms, raw)}

    def certify(self, snap_s: SnapshotPair, snap_t: SnapshotPair,
                tol: float = TOL.violation) -> BoundCertificate:
        if snap_s.dims != snap_t.dims:
            raise ValueError(f"snapshot structures differ: {snap_s.dims} vs {snap_t.dims}")
        lhs = self.quantity(snap_t.rho_s, snap_t.sigma_s) - self.quantity(snap_s.rho_s, snap_s.sigma_s)
        return BoundCertificate(self.inequality, lhs, self.terms(snap_s), tol)


def general_rule(quantity: Callable, phi: Callable[[float], float]) -> BackflowRule:
    return BackflowRule(Inequality.GENERAL_BACKFLOW, quantity, quantity,
                        (lambda x: phi(phi(x)), phi, phi))


def general_backflow_bound(snap_s: SnapshotPair, snap_t: SnapshotPair, quantity: Callable,
                           phi: Callable[[float], float], tol: float = TOL.violation) -> BoundCertificate:
    """Revival bound valid for any divergence with triangle-like function ``phi``."""
    return general_rule(quantity, phi).certify(snap_s, snap_t, tol)


def tight_rule(family: str, mu: float = 0.5) -> BackflowRule:
    mu = dv.check_mu(mu)
    if family in ("K", "holevo_skew", "jensen_shannon"):
        q = lambda r, s: dv.holevo_skew(r, s, mu)
        phi = fourth_root_phi(kappa_mu(mu))
        return BackflowRule(Inequality.HOLEVO_BACKFLOW, q, q, (phi, phi, phi))
    if family in ("S", "quantum_skew"):
        q = lambda r, s: dv.quantum_skew(r, s, mu)
        phi = fourth_root_phi(varsigma_mu(mu))
        return BackflowRule(Inequality.SKEW_BACKFLOW, q, q, (phi, phi, phi))
    if family in ("D", "helstrom", "trace_distance"):
        q = lambda r, s: dv.helstrom(r, s, mu)
        return BackflowRule(
            Inequality.HELSTROM_BACKFLOW, q, dv.trace_distance,
            (lambda x: 2 * min(mu, 1 - mu) * x, lambda x: 2 * mu * x, lambda x: 2 * (1 - mu) * x),
        )
    if family in ("sqrtJ", "sqrt_jensen_shannon"):
        q = dv.sqrt_jensen_shannon
        return BackflowRule(Inequality.SQRT_JS_BACKFLOW, q, q, (identity_phi,) * 3)
    raise ValueError(f"unknown tight-bound family {family!r}")


def tight_bound(snap_s: SnapshotPair, snap_t: SnapshotPair, family: str, mu: float = 0.5,
                tol: float = TOL.violation) -> BoundCertificate:
    return tight_rule(family, mu).certify(snap_s, snap_t, tol)


def figure_rule(name: str, mu: float = 0.5, variant: str = "tight") -> BackflowRule:
    """Backflow rule used for a named quantifier in trajectory tables.

    ``variant="general"`` swaps the entropic tight bounds for the generic
    composed-phi bound; distance quantifiers have a single variant.
    """
    if variant not in ("tight", "general"):
        raise ValueError(f"variant must be 'tight' or 'general', got {variant!r}")
    if name == "trace_distance":
        return tight_rule("D", 0.5)
    if name == "helstrom":
        return tight_rule("D", mu)
    if name == "helstrom_symmetrized":
        mu = dv.check_mu(mu)
        return general_rule(lambda r, s: dv.helstrom_symmetrized(r, s, mu), identity_phi)
    if name == "sqrt_jensen_shannon":
        return tight_rule("sqrtJ")
    if name in ("holevo_skew", "quantum_skew", "jensen_shannon"):
        m = 0.5 if name == "jensen_shannon" else mu
        if variant == "tight":
            return tight_rule(name, m)
        if name == "quantum_skew":
            q, c = (lambda r, s: dv.quantum_skew(r, s, m)), varsigma_mu(m)
        else:
            q, c = (lambda r, s: dv.holevo_skew(r, s, m)), kappa_mu(m)
        return general_rule(q, fourth_root_phi(c))
    raise ValueError(f"unknown quantifier {name!r}")
