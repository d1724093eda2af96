import csv
import io
import json

import numpy as np
import pytest

from infoflow import cli, models as md, runner as rn


def _small(**kw):
    base = dict(model="spin-star", grid=12, n_env=3)
    base.update(kw)
    return rn.ExperimentConfig(**base)


def test_config_validation():
    with pytest.raises(rn.ConfigError, match="^mu"):
        rn.ExperimentConfig(mu=1.0)
    with pytest.raises(rn.ConfigError, match="^model"):
        rn.ExperimentConfig(model="ising")
    with pytest.raises(rn.ConfigError, match="unknown quantifier"):
        rn.ExperimentConfig(quantifiers=("fidelity",))
    with pytest.raises(rn.ConfigError, match="^grid"):
        rn.ExperimentConfig(grid=1)
    with pytest.raises(rn.ConfigError, match="unknown configuration field"):
        rn.ExperimentConfig.from_dict({"colour": "red"})
    with pytest.raises(rn.ConfigError, match="model parameters"):
        rn.ExperimentConfig(n_env=9).model_params()
    assert rn.ExperimentConfig(model="jc").horizon == pytest.approx(8.9)
    assert rn.ExperimentConfig(model="jc", g=2.0).horizon == pytest.approx(4.45)
    assert rn.ExperimentConfig().horizon == 5.0


def test_config_file_round_trip(tmp_path):
    cfg = _small(mu=0.3, quantifiers=("helstrom",))
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert rn.ExperimentConfig.from_file(path) == cfg
    path.write_text("[1]")
    with pytest.raises(rn.ConfigError, match="object"):
        rn.ExperimentConfig.from_file(path)
    with pytest.raises(rn.ConfigError):
        rn.ExperimentConfig.from_file(tmp_path / "missing.json")


def test_table_shape_and_columns():
    cfg = _small()
    table = rn.run_experiment(cfg)
    assert len(table.columns) == 1 + 7 * len(cfg.quantifiers)
    assert len(table.rows) == 12
    assert all(set(r) == set(table.columns) for r in table.rows)
    for q in cfg.quantifiers:
        assert table.rows[-1][f"{q}_lhs"] == 0.0
        for r in table.rows:
            total = r[f"{q}_rhs_env"] + r[f"{q}_rhs_corr_rho"] + r[f"{q}_rhs_corr_sigma"]
            assert r[f"{q}_rhs_total"] == pytest.approx(total)
            assert r[f"{q}_slack"] == pytest.approx(total - r[f"{q}_lhs"])
    assert table.passed


def test_lhs_is_revival_to_final_time():
    cfg = _small(quantifiers=("trace_distance",))
    table = rn.run_experiment(cfg)
    final = table.rows[-1]["trace_distance_value"]
    for r in table.rows[:-1]:
        assert r["trace_distance_lhs"] == pytest.approx(final - r["trace_distance_value"], abs=1e-15)


def test_csv_round_trip_and_determinism():
    cfg = _small()
    text = rn.table_to_csv(rn.run_experiment(cfg))
    assert text == rn.table_to_csv(rn.run_experiment(_small(workers=3)))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == rn.table_columns(cfg.quantifiers)
    table = rn.run_experiment(cfg)
    for parsed, row in zip(rows[1:], table.rows):
        assert [float(x) for x in parsed] == [row[c] for c in rows[0]]


def test_empty_table_csv_is_header_only():
    cfg = _small(quantifiers=("helstrom",))
    text = rn.table_to_csv(rn.FigureTable(cfg, []))
    assert text == ",".join(rn.table_columns(("helstrom",))) + "\n"


def test_json_emission(tmp_path):
    table = rn.run_experiment(_small(format="json"))
    path = tmp_path / "t.json"
    rn.emit(table, "json", path)
    data = json.loads(path.read_text())
    assert data["columns"] == table.columns
    assert data["rows"][3] == table.rows[3]
    assert data["config"]["n_env"] == 3
    assert set(data["summary"]) == {"summed_revivals", "min_slack", "mean_slack", "inequality"}
    with pytest.raises(ValueError):
        rn.emit(table, "xml")


def test_default_output_path(monkeypatch, tmp_path):
    monkeypatch.delenv(rn.OUTPUT_DIR_ENV, raising=False)
    assert rn.default_output_path(_small()) is None
    monkeypatch.setenv(rn.OUTPUT_DIR_ENV, str(tmp_path))
    assert rn.default_output_path(_small(mu=0.25)) == tmp_path / "figure_spin-star_mu0.25.csv"


def test_violation_makes_table_fail():
    cfg = _small(quantifiers=("helstrom",))
    table = rn.run_experiment(cfg)
    table.summary["min_slack"]["helstrom"] = -1.0
    assert not table.passed


def test_general_bound_variant():
    tight = rn.run_experiment(_small(quantifiers=("holevo_skew",)))
    gen = rn.run_experiment(_small(quantifiers=("holevo_skew",), bound="general"))
    for a, b in zip(tight.rows, gen.rows):
        assert a["holevo_skew_rhs_total"] <= b["holevo_skew_rhs_total"] + 1e-12
    assert gen.passed


def test_property_suite_small():
    report = rn.run_property_suite(seed=5, trials=40)
    assert report.passed, report.as_dict()
    d = report.as_dict()
    assert {"contractivity", "normalization", "symmetry", "pinsker", "triangle_like",
            "mixture_shift", "telescopic"} <= set(d["families"])
    with pytest.raises(ValueError):
        rn.run_property_suite(trials=0)


def test_property_report_records_violation():
    from infoflow import bounds as bd

    rep = rn.PropertyReport(0, 1)
    rep.record("x", bd.BoundCertificate("bad", 1.0, {"b": 0.0}), {"dim": 2})
    assert not rep.passed and rep.as_dict()["families"]["x"]["worst_case"]["dim"] == 2


def test_cli_figure_stdout(capsys):
    code = cli.main(["figure", "--grid", "6", "--quantifiers", "helstrom,sqrt_jensen_shannon"])
    out = capsys.readouterr()
    assert code == 0
    lines = out.out.strip().splitlines()
    assert len(lines) == 7 and len(lines[0].split(",")) == 15
    assert "summed_revivals" in out.err


def test_cli_figure_config_file_and_output(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"model": "spin-star", "n_env": 2, "grid": 5}))
    out = tmp_path / "o.json"
    assert cli.main(["figure", "--config", str(cfg), "--format", "json", "--output", str(out)]) == 0
    assert json.loads(out.read_text())["config"]["n_env"] == 2


def test_cli_config_errors(tmp_path, capsys):
    assert cli.main(["figure", "--mu", "1.5"]) == 2
    assert "mu" in capsys.readouterr().err
    assert cli.main(["figure", "--quantifiers", "nope"]) == 2
    assert cli.main(["check", "--trials", "0"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert cli.main(["figure", "--config", str(bad)]) == 2


def test_cli_violation_exit_code(monkeypatch, capsys):
    real = rn.run_experiment

    def broken(config, trajectory=None):
        table = real(config, trajectory)
        table.summary["min_slack"] = {q: -1.0 for q in table.summary["min_slack"]}
        return table

    monkeypatch.setattr(rn, "run_experiment", broken)
    assert cli.main(["figure", "--grid", "4", "--quantifiers", "helstrom"]) == 1


def test_cli_check(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["check", "--trials", "5", "--seed", "3", "--output", str(out)]) == 0
    assert json.loads(out.read_text())["passed"] is True


def test_jc_tight_bounds_short_grid():
    table = rn.run_experiment(rn.ExperimentConfig(model="jc", grid=8, cutoff=30))
    assert table.passed, table.summary
    np.testing.assert_allclose(
        [r["holevo_skew_value"] for r in table.rows],
        [r["quantum_skew_value"] for r in table.rows], atol=1e-10)


def test_run_with_supplied_trajectory():
    p = md.SpinStarParams(n_env=2)
    traj = md.spin_star_evolve(p, times=md.time_grid(1.0, 4))
    table = rn.run_experiment(_small(n_env=2, grid=4), traj)
    assert [r["s"] for r in table.rows] == list(traj.times)


def test_property_report_keeps_nan_as_worst():
    from infoflow import bounds as bd

    rep = rn.PropertyReport(0, 1)
    rep.record("x", bd.BoundCertificate("ok", 0.0, {"b": 1.0}))
    rep.record("x", bd.BoundCertificate("nan", float("nan"), {"b": 1.0}), {"dim": 3})
    assert not rep.passed
    assert rep.as_dict()["families"]["x"]["worst_case"]["inequality"] == "nan"
