import json

import pytest

from a23chain import cli


def run(argv):
    return cli.main(argv)


def test_verify_single_target(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = run(["verify", "ybe", "--samples", "10", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["meta"]["seed"] == 0
    names = [r["name"] for r in report["results"]]
    assert "yang-baxter" in names
    for r in report["results"]:
        assert r["pass"]
        assert set(r) == {"name", "group", "samples", "max_residual",
                          "tolerance", "pass"}


def test_verify_unknown_target(capsys):
    assert run(["verify", "nonsense"]) == 2


def test_verify_seed_env(tmp_path, monkeypatch):
    out = tmp_path / "r.json"
    monkeypatch.setenv("A23_SEED", "11")
    run(["verify", "ybe", "--samples", "5", "--out", str(out)])
    assert json.loads(out.read_text())["meta"]["seed"] == 11


def test_verify_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["verify", "unitarity", "--samples", "8", "--seed", "5",
         "--out", str(a)])
    run(["verify", "unitarity", "--samples", "8", "--seed", "5",
         "--out", str(b)])
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    da["meta"]["wall_time_s"] = db["meta"]["wall_time_s"] = 0
    assert json.dumps(da) == json.dumps(db)


def test_spectrum_periodic_n1(tmp_path):
    out = tmp_path / "s.json"
    code = run(["spectrum", "--n", "1", "--kind", "periodic",
                "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert len(report["results"]) == 4


def test_spectrum_size_cap():
    with pytest.raises(SystemExit):
        run(["spectrum", "--n", "5"])


def test_solve_l0(tmp_path):
    out = tmp_path / "s.json"
    code = run(["solve", "--n", "2", "--l1", "0", "--l2", "0",
                "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert len(report["results"]) == 1
    lam = complex(*report["results"][0]["lambda_u"])
    assert abs(lam - 0.6400) < 1e-3


def test_solve_csv_format(tmp_path):
    out = tmp_path / "s.csv"
    code = run(["solve", "--n", "2", "--l1", "0", "--l2", "0",
                "--format", "csv", "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert "residual_max" in text.splitlines()[0]
