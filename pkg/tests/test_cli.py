import json
import subprocess
import sys

import numpy as np
import pytest

from sphereangles.cli import main, read_csv_matrix


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sample_then_angles(tmp_path, capsys):
    path = tmp_path / "pts.csv"
    code, _, _ = run_cli(capsys, "sample", "--n", "5", "--p", "3", "--seed", "7", "-o", str(path))
    assert code == 0
    x = read_csv_matrix(path)
    assert x.shape == (5, 3)
    assert np.allclose(np.linalg.norm(x, axis=1), 1.0, atol=1e-12)
    manifest = json.loads((tmp_path / "pts.csv.manifest.json").read_text())
    assert manifest["master_seed"] == 7 and "pts.csv" in manifest["outputs"]

    code, out, _ = run_cli(capsys, "angles", "--input", str(path), "-o", str(tmp_path / "pairs.csv"))
    assert code == 0
    summary = json.loads(out)
    assert summary["n"] == 5 and summary["theta_min"] <= summary["theta_max"]
    assert len((tmp_path / "pairs.csv").read_text().splitlines()) == 11


def test_sample_reproducible(capsys):
    _, a, _ = run_cli(capsys, "sample", "--n", "4", "--p", "2", "--seed", "3")
    _, b, _ = run_cli(capsys, "sample", "--n", "4", "--p", "2", "--seed", "3")
    assert a == b


def test_dist_quantile(capsys):
    code, out, _ = run_cli(capsys, "dist", "--law", "subexp-pivot", "--quantile", "0.5")
    assert code == 0 and float(out) == pytest.approx(3.8774399474857980672, rel=1e-12)


def test_dist_at_density_and_cdf(capsys):
    _, out, _ = run_cli(capsys, "dist", "--law", "angle-density", "--p", "3", "--at", "1.5707963267948966")
    assert float(out) == pytest.approx(0.5)
    _, out, _ = run_cli(capsys, "dist", "--law", "angle-density", "--p", "3", "--at", "1.5707963267948966", "--what", "cdf")
    assert float(out) == pytest.approx(0.5)


def test_dist_grid(capsys):
    _, out, _ = run_cli(capsys, "dist", "--law", "fixed-p-extreme", "--p", "3", "--grid", "0:2:5")
    lines = out.strip().splitlines()
    assert lines[0] == "x,cdf" and len(lines) == 6


def test_dist_missing_param_is_error(capsys):
    code, _, err = run_cli(capsys, "dist", "--law", "exp-regime-pivot", "--at", "1")
    assert code == 1 and "error" in err


def test_sphericity_orthonormal(tmp_path, capsys):
    path = tmp_path / "eye.csv"
    path.write_text("a,b,c\n1,0,0\n0,1,0\n0,0,1\n")
    code, out, _ = run_cli(capsys, "test-sphericity", "--input", str(path))
    res = json.loads(out)
    assert code == 0 and res["reject"] is False
    assert res["p_value"] == pytest.approx(0.93770201752901112279, rel=1e-12)


def test_sphericity_bad_alpha(tmp_path, capsys):
    path = tmp_path / "eye.csv"
    path.write_text("1,0\n0,1\n")
    with pytest.raises(SystemExit) as info:
        main(["test-sphericity", "--input", str(path), "--alpha", "1.5"])
    assert info.value.code == 2


def test_bad_csv_line_number(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("1,0\n0,1\n1,x\n")
    code, _, err = run_cli(capsys, "angles", "--input", str(path))
    assert code == 1 and "line 3" in err


def test_zero_row(tmp_path, capsys):
    path = tmp_path / "z.csv"
    path.write_text("1,0\n0,0\n")
    code, _, err = run_cli(capsys, "test-sphericity", "--input", str(path))
    assert code == 1 and "index 1" in err


def test_threshold(capsys):
    _, out, _ = run_cli(capsys, "threshold", "--n", "100", "--p", "10")
    assert float(out) == pytest.approx(0.90297315573253963894, rel=1e-12)
    code, _, _ = run_cli(capsys, "threshold", "--n", "2", "--p", "10")
    assert code == 1


def test_bound(capsys):
    _, out, _ = run_cli(capsys, "bound", "--epsilon", "0.3", "--p", "100")
    assert 0 < float(out) < 1


def test_experiment(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"kind": "sum-law-study", "n": [20], "p": [3], "replicates": 10}))
    out_dir = tmp_path / "out"
    code, out, _ = run_cli(capsys, "experiment", "--config", str(cfg), "--threads", "2", "--out", str(out_dir))
    assert code == 0
    assert (out_dir / "report.json").exists() and (out_dir / "sum_law.csv").exists()
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert set(manifest["outputs"]) == {"report.json", "sum_law.csv"}


def test_experiment_bad_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"kind": "power-study", "n": [1], "p": [3], "extra": 1}))
    code, _, err = run_cli(capsys, "experiment", "--config", str(cfg), "--out", str(tmp_path / "o"))
    assert code == 1 and "extra" in err and "n must be" in err


def test_figure(tmp_path, capsys):
    code, _, _ = run_cli(capsys, "figure", "--fig", "1", "--out", str(tmp_path))
    assert code == 0 and (tmp_path / "fig1.csv").exists()


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["sample", "--n", "3"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sphereangles.cli", "threshold", "--n", "50", "--p", "30"],
                          capture_output=True, text=True, check=True)
    assert abs(float(proc.stdout) - 0.615) < 1e-3


def test_dist_grid_negative_start(capsys):
    _, out, _ = run_cli(capsys, "dist", "--law", "sum-law", "--p", "2", "--grid=-10:10:5")
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert float(rows[0][0]) == -10.0
    assert float(rows[2][1]) == pytest.approx(0.5, abs=1e-12)
