import math

import numpy as np
import pytest

from infoflow import bounds as bd, divergences as dv, qla, states as st

# frozen with mpmath at 30 digits
KAPPA_HALF = 1.56544712423921341840
KAPPA_QUARTER = 1.70422289213440382305
VARSIGMA_QUARTER = 2.13141079244819943014
G_QUARTER_AT_03 = 0.584325406475596331499
F_QUARTER_AT_03 = 0.700156313782762498615


def test_constants():
    assert bd.kappa_mu(0.5) == pytest.approx(KAPPA_HALF, rel=1e-14)
    assert bd.varsigma_mu(0.5) == pytest.approx(KAPPA_HALF, rel=1e-14)
    assert bd.kappa_mu(0.25) == pytest.approx(KAPPA_QUARTER, rel=1e-14)
    assert bd.varsigma_mu(0.25) == pytest.approx(VARSIGMA_QUARTER, rel=1e-14)
    assert bd.kappa_mu(0.25) == pytest.approx(bd.kappa_mu(0.75), rel=1e-14)
    assert bd.varsigma_mu(0.25) == pytest.approx(bd.varsigma_mu(0.75), rel=1e-14)
    for mu in np.linspace(0.01, 0.99, 25):
        assert math.isfinite(bd.kappa_mu(mu)) and bd.kappa_mu(mu) > 0
        assert math.isfinite(bd.varsigma_mu(mu)) and bd.varsigma_mu(mu) > 0
    with pytest.raises(ValueError):
        bd.kappa_mu(0.0)


def test_scalar_functions():
    assert bd.g_mu(1.0, 0.5) == pytest.approx(1.0, abs=1e-15)
    assert bd.g_mu(0.0, 0.3) == 0.0
    assert bd.f_mu(0.0, 0.3) == 0.0
    assert bd.g_mu(0.3, 0.25) == pytest.approx(G_QUARTER_AT_03, rel=1e-14)
    assert bd.f_mu(0.3, 0.25) == pytest.approx(F_QUARTER_AT_03, rel=1e-14)
    assert bd.xlog1p_inv(0.0, 3.0) == 0.0
    assert bd.xlog1p_inv(1e-320, 3.0) == 0.0
    with pytest.raises(ValueError):
        bd.g_mu(1.5, 0.5)
    xs = np.linspace(0, 1, 101)
    for mu in (0.1, 0.5, 0.9):
        gs = [bd.g_mu(x, mu) for x in xs]
        assert np.all(np.diff(gs) >= 0)
        for x in xs:
            assert bd.g_mu(x, mu) <= bd.g_mu_sqrt_bound(x, mu) + 1e-12


def test_summed_revivals():
    assert bd.summed_revivals([0, 1, 0.5, 0.8]) == pytest.approx(1.3)
    assert bd.summed_revivals([1, 0.5, 0.2]) == 0.0
    with pytest.raises(ValueError):
        bd.summed_revivals([1.0])


def test_certificate():
    c = bd.BoundCertificate(bd.Inequality.HELSTROM_BACKFLOW, 0.2, {"a": 0.1, "b": 0.15})
    assert c.rhs_total == pytest.approx(0.25) and c.slack == pytest.approx(0.05) and c.satisfied
    assert not bd.BoundCertificate("x", 1.0, {"a": 0.5}).satisfied
    assert bd.BoundCertificate("x", math.inf, {"a": math.inf}).slack == 0.0
    d = c.as_dict()
    assert d["inequality"] == "helstrom_backflow" and d["satisfied"] is True


@pytest.mark.parametrize("family", ["K", "S", "H", "sqrtJ"])
def test_triangle_like_random(family, rng):
    for _ in range(60):
        d = int(rng.integers(2, 5))
        r, s, t = (st.random_state(d, rng, int(rng.integers(1, d + 1))) for _ in range(3))
        mu = rng.uniform(0.05, 0.95)
        for c in bd.check_triangle_like(r, s, t, mu, family):
            assert c.satisfied, c.as_dict()


def test_triangle_like_errors(rng):
    with pytest.raises(ValueError, match="unknown"):
        bd.check_triangle_like(np.eye(2) / 2, np.eye(2) / 2, np.eye(2) / 2, 0.5, "Q")
    with pytest.raises(ValueError, match="mismatched"):
        bd.check_triangle_like(np.eye(2) / 2, np.eye(3) / 3, np.eye(2) / 2, 0.5, "K")


def test_relative_entropy_inequalities(rng):
    for _ in range(80):
        d = int(rng.integers(2, 4))
        r1, r2, s = (st.random_state(d, rng, int(rng.integers(1, d + 1))) for _ in range(3))
        for c in bd.check_mixture_shift(r1, r2, s, rng.uniform(0.05, 0.95)):
            assert c.satisfied, c.as_dict()
        w, x, y = (rng.uniform(0.1, 3) * st.random_state(d, rng, int(rng.integers(1, d + 1))) for _ in range(3))
        for c in bd.check_telescopic(w, x, y):
            assert c.satisfied, c.as_dict()
        for c in bd.check_telescopic(w, x, np.zeros_like(y)):
            assert c.satisfied, c.as_dict()


def test_telescopic_scalar_case():
    # scalar w=1, x=0, y=1: first difference log(2) - 1 + 1 = log 2, upper bound log 2
    certs = bd.check_telescopic(np.eye(1), np.zeros((1, 1)), np.eye(1))
    first_upper = certs[1]
    assert first_upper.lhs == pytest.approx(math.log(2))
    assert first_upper.rhs_total == pytest.approx(math.log(2))
    with pytest.raises(ValueError, match="tr W"):
        bd.check_telescopic(np.zeros((2, 2)), np.eye(2), np.eye(2))
    with pytest.raises(ValueError, match="positive semidefinite"):
        bd.check_telescopic(np.eye(2), -np.eye(2), np.eye(2))


def _random_snapshot(rng, dims=(2, 3)):
    n = dims[0] * dims[1]
    return bd.SnapshotPair(st.random_state(n, rng), st.random_state(n, rng), dims)


def test_snapshot_pair(rng):
    rho_s, rho_e = st.random_state(2, rng), st.random_state(3, rng)
    snap = bd.SnapshotPair(qla.tensor(rho_s, rho_e), qla.tensor(rho_s, rho_e), (2, 3))
    np.testing.assert_allclose(snap.rho_s, rho_s, atol=1e-14)
    np.testing.assert_allclose(snap.rho_product, snap.rho_se, atol=1e-14)
    with pytest.raises(ValueError):
        bd.SnapshotPair(np.eye(6) / 6, np.eye(4) / 4, (2, 3))


def test_product_snapshot_has_no_correlation_terms(rng):
    rho = qla.tensor(st.random_state(2, rng), st.random_state(2, rng))
    sigma = qla.tensor(st.random_state(2, rng), st.random_state(2, rng))
    snap = bd.SnapshotPair(rho, sigma, (2, 2))
    for fam in ("K", "S", "D", "sqrtJ"):
        terms = bd.tight_rule(fam, 0.4).terms(snap)
        assert terms["corr_rho"] < 1e-6 and terms["corr_sigma"] < 1e-6


@pytest.mark.parametrize("family", ["K", "S", "D", "sqrtJ"])
def test_tight_backflow_random_snapshots(family, rng):
    # the bounds hold for any pair of global snapshots, not only dynamical ones
    for _ in range(30):
        mu = rng.uniform(0.05, 0.95)
        c = bd.tight_bound(_random_snapshot(rng), _random_snapshot(rng), family, mu)
        assert c.satisfied, c.as_dict()
        assert set(c.rhs_terms) == set(bd.RHS_LABELS)


def test_general_bound_dominates_tight_K(rng):
    for _ in range(30):
        s, t = _random_snapshot(rng), _random_snapshot(rng)
        mu = rng.uniform(0.05, 0.95)
        tight = bd.tight_bound(s, t, "K", mu)
        gen = bd.figure_rule("holevo_skew", mu, "general").certify(s, t)
        assert gen.satisfied
        assert tight.rhs_total <= gen.rhs_total + 1e-12
        assert tight.lhs == pytest.approx(gen.lhs)


def test_general_rule_composes_phi():
    phi = bd.fourth_root_phi(2.0)
    rule = bd.general_rule(lambda r, s: 0.0, phi)
    assert rule.transforms[0](0.0625) == pytest.approx(2.0 * (2.0 * 0.5) ** 0.25)


def test_figure_rule_dispatch():
    assert bd.figure_rule("trace_distance").inequality is bd.Inequality.HELSTROM_BACKFLOW
    assert bd.figure_rule("helstrom_symmetrized").inequality is bd.Inequality.GENERAL_BACKFLOW
    assert bd.figure_rule("jensen_shannon").inequality is bd.Inequality.HOLEVO_BACKFLOW
    assert bd.figure_rule("quantum_skew", 0.3, "general").inequality is bd.Inequality.GENERAL_BACKFLOW
    with pytest.raises(ValueError):
        bd.figure_rule("holevo_skew", 0.3, "loose")
    with pytest.raises(ValueError):
        bd.tight_rule("Z")


def test_snapshot_dims_must_match(rng):
    with pytest.raises(ValueError, match="differ"):
        bd.tight_bound(_random_snapshot(rng, (2, 3)), _random_snapshot(rng, (3, 2)), "D")
