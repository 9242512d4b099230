import io
import json

import pytest

from roegen.cli import main


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def cfg(tmp_path):
    p = tmp_path / "roegen.json"
    p.write_text("{}")
    return str(p)


def test_critical(cfg):
    code, out = run(["--config", cfg, "critical"])
    assert code == 0
    I, P, Q = map(float, out.split())
    assert (I, P, Q) == pytest.approx((1, 1, 1), abs=1e-9)


def test_flags_after_subcommand(cfg):
    assert run(["critical", "--config", cfg]) == run(["--config", cfg, "critical"])


def test_maxwell(cfg):
    code, out = run(["--config", cfg, "maxwell", "--I", "0.9"])
    assert code == 0
    P, Ql, Qh, L = map(float, out.split())
    assert P == pytest.approx(0.6469983518733514, abs=1e-7)
    assert Ql < 1 < Qh and L > 0


def test_isotherm(cfg):
    code, out = run(["--config", cfg, "isotherm", "--I", "1.2", "--qmin", "0.5", "--qmax", "3", "--n", "5"])
    lines = out.splitlines()
    assert code == 0 and lines[0] == "Q,P" and len(lines) == 6


def test_dictionary():
    code, out = run(["dictionary"])
    assert code == 0
    assert out.startswith("thermo_symbol,thermo_name,econ_symbol,econ_name\n")


def test_laws(cfg, tmp_path):
    path = tmp_path / "loop.csv"
    path.write_text("I,Q\n0.8,1.5\n0.9,1.5\n0.9,2\n0.8,2\n0.8,1.5\n")
    code, out = run(["--config", cfg, "laws", "--path", str(path)])
    assert code == 0
    verdict, residual = out.splitlines()
    assert verdict == "second_law reversible-equality"
    assert float(residual.split()[1]) <= 1e-6
    code, out = run(["--config", cfg, "laws", "--path", str(path), "--dissipation", "1e-3"])
    assert out.splitlines()[0] == "second_law irreversible-strict"


def test_simulate_and_diagram(cfg, tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("I,P\n0.8,0.2\n0.8,0.6\n")
    code, out = run(["--config", cfg, "simulate", "--path", str(path)])
    assert code == 0
    report = json.loads(out)
    assert report["events"][0]["curve"] == "IncreaseDecrease"
    out_dir = tmp_path / "out"
    code, out = run(["--config", cfg, "--out", str(out_dir), "diagram", "--path", str(path)])
    assert code == 0
    assert len(out.splitlines()) == 6
    assert json.loads((out_dir / "simulation.json").read_text()) == report


def test_config_error_exit(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"eoss": {}}')
    assert run(["--config", str(p), "critical"])[0] == 2
    p.write_text("{")
    assert run(["--config", str(p), "critical"])[0] == 2


def test_validation_error_exit(cfg):
    assert run(["--config", cfg, "maxwell", "--I", "1.5"])[0] == 2


def test_convergence_error_exit(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"tolerances": {"area": 1e-300}}')
    code, _ = run(["--config", str(p), "--out", str(tmp_path / "o"), "diagram"])
    assert code == 3


def test_io_error_exit(cfg, tmp_path):
    assert run(["--config", str(tmp_path / "missing.json"), "critical"])[0] == 4
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert run(["--config", cfg, "--out", str(blocker / "x"), "diagram"])[0] == 4
