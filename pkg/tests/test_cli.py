import csv
import json

import pytest

from zlab.cli import main
from zlab.config import load_config


def _artifacts(out, prefix):
    csvs = sorted(out.glob(f"{prefix}-*.csv"))
    jsons = sorted(out.glob(f"{prefix}-*.json"))
    assert csvs and jsons
    with open(csvs[-1]) as fh:
        rows = list(csv.reader(fh))
    return rows, json.loads(jsons[-1].read_text())


@pytest.mark.parametrize("target", ["section2", "section3", "theorem1"])
def test_reproduce_passes(tmp_path, target, capsys):
    assert main(["reproduce", target, "--golden", "--out", str(tmp_path)]) == 0
    rows, summary = _artifacts(tmp_path, f"reproduce-{target}")
    assert rows[0] == ["name", "computed", "expected", "tolerance", "pass"]
    assert all(r[-1] == "PASS" for r in rows[1:])
    assert summary["status"] == "PASS"
    assert "PASS" in capsys.readouterr().out


def test_reproduce_fails_with_diff(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("[section3]\ntheta = 4/7\nR = 1.104\ndelta = 0.5\nP = 0\nQ = 0\n")
    assert main(["reproduce", "section3", "--config", str(bad), "--out", str(tmp_path)]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "diff" in out


def test_config_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("[section2]\ntheta = 4/7\nR = abc\nP1 = 0\nP2 = 1\n")
    assert main(["reproduce", "section2", "--config", str(bad), "--out", str(tmp_path)]) == 2
    assert f"{bad}:3" in capsys.readouterr().err


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["reproduce", "section9"])
    assert info.value.code == 2


def test_optimize_zero_budget_echoes_start(tmp_path, capsys):
    dest = tmp_path / "best.cfg"
    code = main(["optimize", "section3", "--budget", "0", "--write", str(dest), "--out", str(tmp_path)])
    assert code == 0
    _, summary = _artifacts(tmp_path, "optimize-section3")
    assert summary["n_evals"] == 0
    start = load_config(None)
    assert load_config(dest).section3 == start.section3


def test_optimize_writes_reloadable_parameters(tmp_path):
    dest = tmp_path / "best.cfg"
    code = main(["optimize", "section2", "--budget", "60", "--restarts", "0", "--seed", "4",
                 "--write", str(dest), "--out", str(tmp_path)])
    assert code in (0, 1)
    _, summary = _artifacts(tmp_path, "optimize-section2")
    cfg = load_config(dest)
    blk = cfg.section2
    reloaded = [float(blk["R"])] + [float(c) for c in blk["P1"]] + [float(c) for c in blk["P2"]]
    assert reloaded == summary["best_params"]
    rows = {r["name"]: r for r in summary["rows"]}
    assert rows["best value reproducible"]["pass"] == "PASS"


def test_optimize_deterministic(tmp_path):
    args = ["optimize", "section2", "--budget", "40", "--restarts", "1", "--seed", "9"]
    main(args + ["--out", str(tmp_path / "a")])
    main(args + ["--out", str(tmp_path / "b")])
    _, sa = _artifacts(tmp_path / "a", "optimize-section2")
    _, sb = _artifacts(tmp_path / "b", "optimize-section2")
    assert sa["trace"] == sb["trace"] and sa["best_params"] == sb["best_params"]


@pytest.mark.parametrize("check", ["sigma-quadrature", "functional-equation"])
def test_verify(tmp_path, check):
    assert main(["verify", check, "--out", str(tmp_path)]) == 0
    rows, _ = _artifacts(tmp_path, f"verify-{check}")
    assert len(rows) > 10


def test_zeros_count(tmp_path, capsys):
    assert main(["zeros", "count", "--T", "50", "--out", str(tmp_path)]) == 0
    rows, _ = _artifacts(tmp_path, "zeros-count")
    assert float(rows[1][1]) == 10
