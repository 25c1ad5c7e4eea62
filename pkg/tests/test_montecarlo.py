import json
import math

import numpy as np
import pytest
from scipy import stats

from sphereangles.montecarlo import (
    REFERENCE_POWER,
    ConfigError,
    ExperimentSpec,
    figure_data,
    ks_distance,
    load_spec,
    run,
    write_report,
)


def test_ks_examples():
    assert ks_distance([0.5], lambda x: x) == pytest.approx(0.5)
    samples = np.linspace(0.005, 0.995, 100)
    assert ks_distance(samples, lambda x: x) == pytest.approx(0.005, abs=1e-12)


def test_ks_matches_scipy():
    x = np.random.default_rng(0).normal(size=500)
    assert ks_distance(x, stats.norm.cdf) == pytest.approx(stats.kstest(x, "norm").statistic, abs=1e-15)


def test_reference_power_complete():
    assert len(REFERENCE_POWER) == 24
    assert REFERENCE_POWER[(2, 5)] == 90.50 and REFERENCE_POWER[(0, 2)] == 4.20


def test_config_lists_every_problem():
    with pytest.raises(ConfigError) as info:
        ExperimentSpec.from_dict({"kind": "power-study", "n": [1], "p": [], "replicates": 0, "colour": "red"})
    text = "\n".join(info.value.problems)
    for needle in ("colour", "replicates", "p grid", "n must be"):
        assert needle in text


def test_config_missing_kind():
    with pytest.raises(ConfigError, match="kind"):
        ExperimentSpec.from_dict({"n": [10]})


def test_config_bad_target():
    with pytest.raises(ConfigError, match="target"):
        ExperimentSpec(kind="convergence-study", n=[10], p=[3], target="banana")


def test_load_spec_bad_json(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("{nope")
    with pytest.raises(ConfigError, match="JSON"):
        load_spec(path)


def test_small_power_study_shape():
    spec = ExperimentSpec(kind="power-study", n=[20], p=[2, 3], replicates=30, dist_ids=[0, 2])
    report = run(spec, threads=2)
    assert len(report.cells) == 4
    cell = report.cells[0]
    for key in ("dist_id", "n", "p", "power_pct", "se_pct"):
        assert key in cell
    assert 0 <= cell["power_pct"] <= 100
    # the published comparison column only appears at the published design
    assert "published_pct" not in cell


def test_power_cell_compares_at_n50():
    cell = run(ExperimentSpec(kind="power-study", n=[50], p=[3], replicates=20, dist_ids=[4])).cells[0]
    assert cell["published_pct"] == REFERENCE_POWER[(4, 3)]
    assert cell["diff_pp"] == pytest.approx(cell["power_pct"] - cell["published_pct"])


def test_threads_do_not_change_numbers():
    spec = ExperimentSpec(kind="convergence-study", n=[60], p=[5], replicates=12, target="subexp-pivot")
    a, b = run(spec, threads=1), run(spec, threads=4)
    assert json.dumps(a.numbers(), sort_keys=True) == json.dumps(b.numbers(), sort_keys=True)


def test_clt_cell():
    spec = ExperimentSpec(kind="convergence-study", n=[100], p=[200], replicates=1, target="empirical-clt")
    cell = run(spec).cells[0]
    assert cell["ks"] < 0.05


def test_exp_regime_cell_fields():
    spec = ExperimentSpec(kind="convergence-study", n=[300], p=[20], replicates=4, target="exp-regime", beta=0.2)
    cell = run(spec).cells[0]
    assert cell["limit_theta_min"] == pytest.approx(math.acos(math.sqrt(1 - math.exp(-0.8))))
    assert "median_gap_min" in cell and cell["pivot_undefined"] == 0


def test_sum_law_small():
    spec = ExperimentSpec(kind="sum-law-study", n=[30], p=[2], replicates=40)
    cell = run(spec).cells[0]
    assert cell["positive"] + cell["zero"] <= 40
    assert 0 <= cell["ks"] <= 1


def test_figure1_table():
    report = figure_data(1)
    table = report.tables["fig1"]
    assert table["columns"][0] == "theta" and len(table["rows"]) == 401


@pytest.mark.parametrize("fig_id", [2, 3, 4])
def test_figure_tables(fig_id, tmp_path):
    spec = ExperimentSpec(kind="figure-data", fig_id=fig_id, replicates=5)
    report = figure_data(fig_id, spec, bins=10)
    for suffix in ("a", "b", "c", "d", "_raw"):
        assert f"fig{fig_id}{suffix}" in report.tables
    paths = write_report(report, tmp_path)
    assert (tmp_path / "report.json").exists() and len(paths) == 6
    loaded = json.loads((tmp_path / "report.json").read_text())
    assert loaded["schema_version"] == 1
