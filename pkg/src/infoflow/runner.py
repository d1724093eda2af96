"""Experiment orchestration: trajectory tables and randomized property suites."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import bounds as bd
from . import divergences as dv
from . import models
from . import states as st
from .tolerances import TOL

COLUMN_SUFFIXES = ("value", "lhs", "rhs_env", "rhs_corr_rho", "rhs_corr_sigma", "rhs_total", "slack")
DEFAULT_QUANTIFIERS = ("helstrom", "sqrt_jensen_shannon", "holevo_skew", "quantum_skew")
DEFAULT_HORIZON = {"spin-star": 5.0, "jc": 8.9}
OUTPUT_DIR_ENV = "INFOFLOW_OUTPUT_DIR"


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    model: str = "spin-star"
    mu: float = 0.5
    quantifiers: tuple[str, ...] = DEFAULT_QUANTIFIERS
    horizon: float | None = None
    grid: int = 400
    seed: int = 0
    bound: str = "tight"
    n_env: int = 5
    couplings: list[float] | None = None
    omega_s: float = 0.0
    omega_e: list[float] | None = None
    g: float = 1.0
    delta: float = 0.5
    beta_omega: float = 1.0
    cutoff: int = 40
    workers: int = 1
    output: str | None = None
    format: str = "csv"

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.model not in DEFAULT_HORIZON:
            raise ConfigError(f"model: expected one of {sorted(DEFAULT_HORIZON)}, got {self.model!r}")
        if not 0.0 < float(self.mu) < 1.0:
            raise ConfigError(f"mu: must lie in (0, 1), got {self.mu}")
        self.quantifiers = tuple(self.quantifiers)
        if not self.quantifiers:
            raise ConfigError("quantifiers: must be nonempty")
        for q in self.quantifiers:
            if q not in dv.QUANTIFIERS:
                raise ConfigError(f"quantifiers: unknown quantifier {q!r}")
        if self.horizon is None:
            self.horizon = DEFAULT_HORIZON[self.model] / (self.g if self.model == "jc" else 1.0)
        if not float(self.horizon) > 0:
            raise ConfigError(f"horizon: must be positive, got {self.horizon}")
        if int(self.grid) < 2:
            raise ConfigError(f"grid: need at least 2 points, got {self.grid}")
        if self.bound not in ("tight", "general"):
            raise ConfigError(f"bound: expected 'tight' or 'general', got {self.bound!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format: expected 'csv' or 'json', got {self.format!r}")
        if int(self.workers) < 1:
            raise ConfigError(f"workers: must be >= 1, got {self.workers}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        for key in data:
            if key not in known:
                raise ConfigError(f"{key}: unknown configuration field")
        try:
            return cls(**data)
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid configuration: {exc}") from exc

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"config file {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path}: top level must be an object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["quantifiers"] = list(self.quantifiers)
        return d

    def model_params(self):
        try:
            if self.model == "spin-star":
                return models.SpinStarParams(self.n_env, self.couplings, self.omega_s,
                                             self.omega_e, seed=self.seed)
            return models.JCParams(self.g, self.delta, self.beta_omega, self.cutoff)
        except ValueError as exc:
            raise ConfigError(f"model parameters: {exc}") from exc


@dataclass
class FigureTable:
    config: ExperimentConfig
    rows: list[dict]
    summary: dict = field(default_factory=dict)

    @property
    def columns(self) -> list[str]:
        return table_columns(self.config.quantifiers)

    @property
    def passed(self) -> bool:
        return all(v >= -TOL.violation for v in self.summary.get("min_slack", {}).values())


def table_columns(quantifiers) -> list[str]:
    return ["s"] + [f"{q}_{suffix}" for q in quantifiers for suffix in COLUMN_SUFFIXES]


def build_trajectory(config: ExperimentConfig) -> models.JointTrajectory:
    params = config.model_params()
    times = models.time_grid(config.horizon, config.grid)
    if config.model == "spin-star":
        return models.spin_star_evolve(params, times=times)
    try:
        return models.jc_evolve(params, times=times)
    except ValueError as exc:
        raise ConfigError(f"cutoff: {exc}") from exc


def run_experiment(config: ExperimentConfig, trajectory: models.JointTrajectory | None = None) -> FigureTable:
    """Revival ``Q(T) - Q(s)`` against its bound for every grid time ``s``."""
    traj = build_trajectory(config) if trajectory is None else trajectory
    rules = {q: bd.figure_rule(q, config.mu, config.bound) for q in config.quantifiers}
    final = traj.snapshots[-1]
    q_final = {q: r.quantity(final.rho_s, final.sigma_s) for q, r in rules.items()}

    def row(i: int) -> dict:
        snap = traj.snapshots[i]
        out = {"s": float(traj.times[i])}
        for q, rule in rules.items():
            value = rule.quantity(snap.rho_s, snap.sigma_s)
            terms = rule.terms(snap)
            # the last row compares the final time with itself
            lhs = 0.0 if i == len(traj) - 1 else q_final[q] - value
            total = terms["env"] + terms["corr_rho"] + terms["corr_sigma"]
            out.update({
                f"{q}_value": value,
                f"{q}_lhs": lhs,
                f"{q}_rhs_env": terms["env"],
                f"{q}_rhs_corr_rho": terms["corr_rho"],
                f"{q}_rhs_corr_sigma": terms["corr_sigma"],
                f"{q}_rhs_total": total,
                f"{q}_slack": total - lhs,
            })
        return out

    with ThreadPoolExecutor(max_workers=int(config.workers)) as pool:
        rows = list(pool.map(row, range(len(traj))))

    summary = {
        "summed_revivals": {q: bd.summed_revivals([r[f"{q}_value"] for r in rows]) for q in rules},
        "min_slack": {q: min(r[f"{q}_slack"] for r in rows) for q in rules},
        "mean_slack": {q: float(np.mean([r[f"{q}_slack"] for r in rows])) for q in rules},
        "inequality": {q: rules[q].inequality.value for q in rules},
    }
    return FigureTable(config, rows, summary)


# emission -------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17e")


def table_to_csv(table: FigureTable) -> str:
    cols = table.columns
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in table.rows:
        writer.writerow([_fmt(r[c]) for c in cols])
    return buf.getvalue()


def table_to_json(table: FigureTable) -> str:
    payload = {
        "version": __version__,
        "config": table.config.to_dict(),
        "columns": table.columns,
        "rows": table.rows,
        "summary": table.summary,
    }
    return json.dumps(payload, indent=1)


def emit(table: FigureTable, fmt: str = "csv", path=None) -> str:
    """Serialize ``table`` and write it to ``path`` when given; returns the text."""
    if fmt == "csv":
        text = table_to_csv(table)
    elif fmt == "json":
        text = table_to_json(table)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
    return text


def default_output_path(config: ExperimentConfig) -> Path | None:
    base = os.environ.get(OUTPUT_DIR_ENV)
    if not base:
        return None
    return Path(base) / f"figure_{config.model}_mu{config.mu:g}.{config.format}"


# randomized property suite --------------------------------------------------------

MU_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)


@dataclass
class PropertyReport:
    seed: int
    trials: int
    counts: dict = field(default_factory=lambda: defaultdict(int))
    violations: dict = field(default_factory=lambda: defaultdict(int))
    worst_slack: dict = field(default_factory=dict)
    worst_case: dict = field(default_factory=dict)

    def record(self, family: str, cert: bd.BoundCertificate, context: dict | None = None):
        self.counts[family] += 1
        slack = cert.slack
        if not cert.satisfied or math.isnan(slack):
            self.violations[family] += 1
        if family not in self.worst_slack or math.isnan(slack) or slack < self.worst_slack[family]:
            self.worst_slack[family] = slack
            self.worst_case[family] = {"inequality": str(getattr(cert.inequality, "value", cert.inequality)),
                                       **(context or {})}

    @property
    def total_violations(self) -> int:
        return int(sum(self.violations.values()))

    @property
    def passed(self) -> bool:
        return self.total_violations == 0

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "families": {
                f: {"checks": self.counts[f], "violations": self.violations.get(f, 0),
                    "worst_slack": self.worst_slack[f], "worst_case": self.worst_case[f]}
                for f in sorted(self.counts)
            },
        }


def _equality(name: str, a: float, b: float, tol: float) -> bd.BoundCertificate:
    return bd.BoundCertificate(name, abs(a - b), {}, tol)


def _at_most(name: str, a: float, b: float, tol: float) -> bd.BoundCertificate:
    return bd.BoundCertificate(name, a, {"bound": b}, tol)


def _named_quantifiers(mu: float) -> dict:
    return {
        "D": dv.trace_distance,
        "D_mu": lambda r, s: dv.helstrom(r, s, mu),
        "H_mu": lambda r, s: dv.helstrom_symmetrized(r, s, mu),
        "K_mu": lambda r, s: dv.holevo_skew(r, s, mu),
        "S_mu": lambda r, s: dv.quantum_skew(r, s, mu),
        "J": dv.jensen_shannon,
        "sqrtJ": dv.sqrt_jensen_shannon,
    }


def property_trial(rng: np.random.Generator, report: PropertyReport, tol: float = TOL.violation,
                   dims=(2, 3, 4), mus=MU_GRID):
    """One randomized trial across every axiom and inequality family."""
    d = int(rng.choice(dims))
    mu = float(rng.choice(mus))
    ctx = {"dim": d, "mu": mu}
    ranks = [int(rng.integers(1, d + 1)) for _ in range(3)]
    rho, sigma, tau = (st.random_state(d, rng, r) for r in ranks)
    if rng.random() < 1 / 3:
        # near-coincident sigma, tau probe the small-argument end of the bounds
        eps = 10.0 ** rng.uniform(-8, -1)
        tau = (1 - eps) * sigma + eps * tau
    full_rho, full_sigma = st.random_state(d, rng), st.random_state(d, rng)
    kraus = st.random_kraus(d, int(rng.integers(1, 5)), rng)
    u = st.random_unitary(d, rng)
    anc = st.random_state(int(rng.integers(1, 4)), rng)
    named = _named_quantifiers(mu)
    rec = report.record

    # contractivity, unitary and ancilla invariance
    lr, ls = st.apply_kraus(kraus, rho), st.apply_kraus(kraus, sigma)
    ur, us = u @ rho @ u.conj().T, u @ sigma @ u.conj().T
    tr, ts = np.kron(rho, anc), np.kron(sigma, anc)
    for name, q in named.items():
        base = q(rho, sigma)
        rec("contractivity", _at_most(f"contractivity_{name}", q(lr, ls), base, tol), ctx)
        rec("unitary_invariance", _equality(f"unitary_{name}", q(ur, us), base, tol), ctx)
        rec("ancilla_invariance", _equality(f"ancilla_{name}", q(tr, ts), base, tol), ctx)
    s_full = dv.relative_entropy(full_rho, full_sigma)
    ks = st.apply_kraus(kraus, full_rho), st.apply_kraus(kraus, full_sigma)
    rec("contractivity", _at_most("contractivity_relative_entropy", dv.relative_entropy(*ks), s_full, tol), ctx)

    # boundedness, normalization and identifiability
    for name in ("K_mu", "S_mu", "J", "sqrtJ"):
        q = named[name]
        v = q(rho, sigma)
        rec("normalization", _at_most(f"{name}_nonnegative", -v, 0.0, tol), ctx)
        rec("normalization", _at_most(f"{name}_at_most_one", v, 1.0, tol), ctx)
        rec("normalization", _equality(f"{name}_identical", q(rho, rho), 0.0, tol), ctx)
        strictly_inside = 0.0 < v < 1.0 - 1e-12 or dv.support_orthogonal(rho, sigma)
        rec("normalization", bd.BoundCertificate(f"{name}_identifiable", 0.0 if strictly_inside else 1.0, {}, tol), ctx)
    o1, o2 = st.random_orthogonal_pair(d, rng, mixed=bool(rng.integers(2)))
    ortho = dv.support_orthogonal(o1, o2)
    rec("normalization", bd.BoundCertificate("orthogonal_detected", 0.0 if ortho else 1.0, {}, tol), ctx)
    for name in ("K_mu", "S_mu", "J", "sqrtJ"):
        rec("normalization", _equality(f"{name}_orthogonal", named[name](o1, o2), 1.0, tol), ctx)

    # symmetries under (rho, sigma, mu) -> (sigma, rho, 1 - mu)
    nu = 1.0 - mu
    rec("symmetry", _equality("holevo_skew", dv.holevo_skew(rho, sigma, mu), dv.holevo_skew(sigma, rho, nu), tol), ctx)
    rec("symmetry", _equality("helstrom", dv.helstrom(rho, sigma, mu), dv.helstrom(sigma, rho, nu), tol), ctx)
    rec("symmetry", _equality("quantum_skew", dv.quantum_skew(rho, sigma, mu), dv.quantum_skew(sigma, rho, nu), tol), ctx)

    # Pinsker-type lower bounds and trace-distance identities
    dist = dv.trace_distance(rho, sigma)
    h = dv.binary_entropy(mu)
    rec("pinsker", _at_most("pinsker_holevo", dist**2, h / (2 * mu * nu) * dv.holevo_skew(rho, sigma, mu), tol), ctx)
    pin_s = math.log(mu) * math.log(nu) / (2 * mu * nu * h)
    rec("pinsker", _at_most("pinsker_skew", dist**2, pin_s * dv.quantum_skew(rho, sigma, mu), tol), ctx)
    df = dv.trace_distance(full_rho, full_sigma)
    rec("pinsker", _at_most("pinsker_relative_entropy", df**2, 0.5 * s_full, tol), ctx)
    rec("pinsker", _equality("mixture_distance_first", dv.trace_distance(rho, mu * rho + nu * sigma), nu * dist, tol), ctx)
    rec("pinsker", _equality("mixture_distance_second", dv.trace_distance(sigma, nu * sigma + mu * rho), mu * dist, tol), ctx)
    rec("pinsker", _at_most("symmetrized_helstrom_above_td", dist, dv.helstrom_symmetrized(rho, sigma, mu), tol), ctx)

    # triangle-like inequalities
    for fam in ("K", "S", "H", "sqrtJ"):
        for cert in bd.check_triangle_like(rho, sigma, tau, mu, fam, tol):
            rec("triangle_like", cert, ctx)
    d_st = dv.trace_distance(sigma, tau)
    rec("triangle_like", _at_most("g_below_sqrt", bd.g_mu(d_st, mu), bd.g_mu_sqrt_bound(d_st, mu), tol), ctx)
    rec("triangle_like", _at_most("g_below_phi", bd.g_mu(d_st, mu),
                                  bd.kappa_mu(mu) * dv.holevo_skew(sigma, tau, mu) ** 0.25, tol), ctx)
    x, y = rng.random(2)
    phi = bd.fourth_root_phi(bd.kappa_mu(mu))
    rec("triangle_like", _at_most("phi_subadditive", phi(x + y), phi(x) + phi(y), tol), ctx)

    # relative-entropy inequalities
    for cert in bd.check_mixture_shift(rho, sigma, tau, mu, tol):
        rec("mixture_shift", cert, ctx)
    w, xx, yy = (st.random_state(d, rng, int(rng.integers(1, d + 1))) * rng.uniform(0.1, 3.0) for _ in range(3))
    for cert in bd.check_telescopic(w, xx, yy, tol):
        rec("telescopic", cert, ctx)


def run_property_suite(seed: int = 0, trials: int = 10_000, tol: float = TOL.violation,
                       dims=(2, 3, 4), mus=MU_GRID) -> PropertyReport:
    if int(trials) < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    report = PropertyReport(seed, int(trials))
    for _ in range(int(trials)):
        property_trial(rng, report, tol, dims, mus)
    return report
