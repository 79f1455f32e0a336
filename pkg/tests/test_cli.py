import csv
import json

import numpy as np
import pytest

from ere_stability.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_convex_stable_point(capsys):
    code, out, _ = run(capsys, "analyze", "--case", "convex",
                       "--beta", "0.1", "--ecc", "0")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "analysis/1"
    assert report["verdict"] == "strongly-stable"
    assert report["i_minus_1"] == 2
    assert report["stabilized"] is True
    assert all(abs(complex(re, im)) == pytest.approx(1.0, abs=1e-8)
               for re, im in report["multipliers"])


def test_analyze_nonconvex_unstable_point(capsys):
    code, out, _ = run(capsys, "analyze", "--case", "nonconvex",
                       "--beta", "6.75", "--ecc", "0")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] in ("unstable", "hyperbolic")
    assert report["max_modulus"] > 1.0 + 1e-6


def test_analyze_custom_and_extra_omega(capsys):
    code, out, _ = run(capsys, "analyze", "--case", "custom",
                       "--lambda3", "4.0", "--lambda4", "-1.0",
                       "--ecc", "0.1", "--omega", "0.25")
    assert code == 0
    report = json.loads(out)
    w = complex(*report["omega"])
    assert w == pytest.approx(1j, abs=1e-12)
    assert isinstance(report["i_omega"], int)


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "analyze", "--case", "convex")[0] == 2  # no --ecc
    assert run(capsys, "analyze", "--case", "convex", "--ecc", "0")[0] == 2
    assert run(capsys, "analyze", "--case", "custom", "--ecc", "0")[0] == 2
    assert run(capsys, "analyze", "--case", "convex", "--beta", "9",
               "--ecc", "0")[0] == 2  # beta out of range
    assert run(capsys, "figure", "1")[0] == 2  # no --out
    assert run(capsys, "cc-limit", "--m", "0.3")[0] == 2  # no --tau


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "point.cfg"
    cfg.write_text("case = convex\nbeta = 0.1  # stable band\necc = 0\n")
    code, out, _ = run(capsys, "analyze", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["param"] == pytest.approx(0.1)
    # explicit flag wins over the config value
    code, out, _ = run(capsys, "analyze", "--config", str(cfg),
                       "--beta", "0.2")
    assert code == 0
    assert json.loads(out)["param"] == pytest.approx(0.2)


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("this is not a key value line\n")
    assert run(capsys, "analyze", "--config", str(bad))[0] == 2
    assert run(capsys, "analyze", "--config",
               str(tmp_path / "missing.cfg"))[0] == 2


def test_figure_2_small_grid(tmp_path, capsys):
    out_csv = tmp_path / "fig2.csv"
    out_svg = tmp_path / "fig2.svg"
    code, _, _ = run(capsys, "figure", "2", "--out", str(out_csv),
                     "--svg", str(out_svg), "--e-max", "0.1", "--step", "0.1")
    assert code == 0
    rows = list(csv.reader(out_csv.open()))
    assert rows[0] == ["case", "omega", "label", "e", "beta", "nu", "bracket"]
    assert {r[2] for r in rows[1:]} == {"Gamma_l", "Gamma_m", "Gamma_r"}
    svg = out_svg.read_text()
    assert svg.startswith("<svg") and "polyline" in svg
    # determinism: the same invocation is byte-identical
    out2 = tmp_path / "fig2b.csv"
    run(capsys, "figure", "2", "--out", str(out2),
        "--e-max", "0.1", "--step", "0.1")
    assert out2.read_text() == out_csv.read_text()


def test_figure_validates_grid(tmp_path, capsys):
    assert run(capsys, "figure", "2", "--out", str(tmp_path / "x.csv"),
               "--e-max", "1.2")[0] == 2
    assert run(capsys, "figure", "2", "--out", str(tmp_path / "x.csv"),
               "--step", "0")[0] == 2


def test_cc_limit_short_ladder(tmp_path, capsys):
    out = tmp_path / "cc.json"
    code, _, _ = run(capsys, "cc-limit", "--m", "0.5", "--tau", "1",
                     "--branch", "convex", "--eps-ladder", "1e-3,1e-4",
                     "--out", str(out))
    assert code == 0
    report = json.loads(out.read_text())
    assert report["schema"] == "cc-limit/1"
    assert report["limit"]["beta2_0"] == pytest.approx(0.75)
    errs = [row["beta2_err"] for row in report["ladder"]]
    b12 = [row["beta12_abs"] for row in report["ladder"]]
    assert errs[0] > errs[1]
    assert b12[0] > b12[1]
    eigs = report["limit"]["hessian_eigenvalues"]
    beta = report["limit"]["beta"]
    s = np.sqrt(9.0 - beta)
    mu0 = (0.5 * 0.5) ** 1.5
    assert eigs[0] == pytest.approx(mu0 * (3.0 + s) / 2.0, rel=1e-12)


def test_cc_limit_validates_branch(capsys):
    assert run(capsys, "cc-limit", "--m", "0.3", "--tau", "0.5",
               "--branch", "convex", "--eps-ladder", "")[0] == 2


def test_env_threads_respected(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ERE_STABILITY_THREADS", "2")
    out = tmp_path / "fig2.csv"
    code, _, _ = run(capsys, "figure", "2", "--out", str(out),
                     "--e-max", "0.1", "--step", "0.1")
    assert code == 0
    assert out.exists()
