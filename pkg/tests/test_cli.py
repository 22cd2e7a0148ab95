import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from ooidshape.cli import EXIT_ARGS, EXIT_NOT_REALIZABLE, EXIT_OK, EXIT_TOPOLOGY, main
from ooidshape.shapeio import fmt, read_shape, sidecar_path, write_shape


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def kv(text):
    pairs = (line.split("=", 1) for line in text.splitlines() if "=" in line and " " not in line)
    return {k: v for k, v in pairs}


# --- shape files ---

def test_fmt():
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(-0.0) == "0"
    assert fmt(None) == "nan"


def test_shape_round_trip(tmp_path):
    pts = np.array([[1.0, 2.0], [3.0, -4.5], [0.1, 1e-20]])
    path = write_shape(tmp_path / "s.csv", pts, [0.1, 0.2, 0.3], [1.0, 2.0, 3.0], {"c1": 0.2, "c2": 0.1, "q": 0.5})
    text = path.read_text()
    assert text.startswith("# c1=0.20000000000000001 c2=0.10000000000000001 c1_hat=nan q=0.5 area=nan\nx,y,gamma,kappa\n")
    assert "\r" not in text
    back, gamma, kappa, meta = read_shape(path)
    assert np.array_equal(back, pts)
    assert list(gamma) == [0.1, 0.2, 0.3]
    assert meta == {"c1": 0.2, "c2": 0.1, "q": 0.5}
    side = json.loads(sidecar_path(path).read_text())
    assert side["c1"] == 0.2 and side["c1_hat"] is None and side["n_points"] == 3


# --- commands ---

def test_steady_unit_circle(tmp_path):
    out = tmp_path / "c.csv"
    code, text = run("steady", "--c1", "0.3183098861837907", "--c2", "0", "--out", str(out))
    assert code == EXIT_OK
    vals = kv(text)
    assert float(vals["area"]) == pytest.approx(math.pi, rel=1e-5)
    assert float(vals["q"]) == 0
    points, _, _, meta = read_shape(out)
    assert np.allclose(np.hypot(*points.T), 1.0, rtol=1e-6)
    assert meta["area"] == pytest.approx(math.pi, rel=1e-12)


def test_steady_example_and_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    code, text = run("steady", "--c1", "0.2", "--c2", "0.1", "--out", str(a))
    assert code == EXIT_OK
    assert float(kv(text)["max_residual"]) < 1e-6
    run("steady", "--c1", "0.2", "--c2", "0.1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert sidecar_path(a).read_bytes() == sidecar_path(b).read_bytes()


def test_console_uses_six_digits(tmp_path):
    _, text = run("steady", "--c1", "0.2", "--c2", "0.1", "--out", str(tmp_path / "x.csv"))
    assert kv(text)["area"] == "4.42572"


def test_steady_bad_params(tmp_path):
    code, _ = run("steady", "--c1", "-1", "--c2", "0", "--out", str(tmp_path / "x.csv"))
    assert code == EXIT_ARGS


def test_samples_env(tmp_path, monkeypatch):
    monkeypatch.setenv("OOIDSHAPE_SAMPLES", "32")
    out = tmp_path / "e.csv"
    run("steady", "--c1", "0.2", "--c2", "0.1", "--out", str(out))
    points, _, _, _ = read_shape(out)
    assert len(points) == 4 * 31
    monkeypatch.setenv("OOIDSHAPE_SAMPLES", "many")
    code, _ = run("steady", "--c1", "0.2", "--out", str(out))
    assert code == EXIT_ARGS


def test_crit():
    code, text = run("crit", "--q", "0.5")
    assert code == EXIT_OK
    assert float(kv(text)["c1_crit"]) == pytest.approx(1.0821, abs=1e-4)


def test_local(tmp_path):
    code, text = run("local", "--c1-hat", "1", "--q", "0.5", "--out", str(tmp_path / "l.csv"))
    assert code == EXIT_OK
    assert float(kv(text)["y_bar"]) == pytest.approx(1.33213, abs=1e-5)


def test_local_not_realizable():
    assert run("local", "--c1-hat", "2", "--q", "0.5")[0] == EXIT_NOT_REALIZABLE


def test_sweep_csv(tmp_path):
    out = tmp_path / "sw.csv"
    code, _ = run("sweep", "--q", "0.5", "--out", str(out))
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "c1_hat,area,c1"
    c1 = np.array([float(line.split(",")[2]) for line in lines[1:]])
    assert len(c1) == 16 and np.all(np.diff(c1) < 0)


def test_flow_from_steady_file(tmp_path):
    shape = tmp_path / "g.csv"
    run("steady", "--c1", "0.2", "--c2", "0.1", "--samples", "512", "--out", str(shape))
    series = tmp_path / "f.csv"
    code, text = run("flow", "--init", str(shape), "--steps", "50", "--stop-residual", "1e-3", "--out", str(series))
    assert code == EXIT_OK
    assert kv(text)["converged"] == "True"
    assert int(kv(text)["steps"]) <= 1
    assert series.read_text().splitlines()[0] == "step,time,area,max_residual"


def test_flow_circle_preset_shrinks(tmp_path):
    series = tmp_path / "c.csv"
    code, _ = run("flow", "--preset", "circle", "--radius", "2", "--c1", str(1 / math.pi), "--steps", "300", "--markers", "128", "--out", str(series))
    assert code == EXIT_OK
    area = np.array([float(line.split(",")[2]) for line in series.read_text().splitlines()[1:]])
    assert np.all(np.diff(area) < 0)
    assert area[-1] > math.pi


def test_flow_ellipse_preset(tmp_path):
    code, text = run("flow", "--preset", "ellipse", "--a", "2", "--b", "1", "--steps", "3", "--out", str(tmp_path / "e.csv"))
    assert code == EXIT_OK
    assert float(kv(text)["initial_residual"]) > 0.19


def test_flow_needs_c1(tmp_path):
    code, _ = run("flow", "--preset", "circle", "--out", str(tmp_path / "x.csv"))
    assert code == EXIT_ARGS


def test_flow_topology_exit(tmp_path):
    t = 2 * math.pi * np.arange(128) / 128
    eight = np.column_stack([np.sin(t), np.sin(t) * np.cos(t)])
    init = tmp_path / "eight.csv"
    write_shape(init, eight, np.zeros(128), np.zeros(128), {})
    series = tmp_path / "s.csv"
    code, _ = run("flow", "--init", str(init), "--c1", "0.3", "--markers", "128", "--out", str(series))
    assert code == EXIT_TOPOLOGY
    assert series.read_text().startswith("step,time,area,max_residual\n0,")


def test_ellipse_check():
    code, text = run("ellipse-check", "--a", "2", "--b", "1")
    assert code == EXIT_OK
    vals = kv(text)
    assert float(vals["c1"]) == pytest.approx(1 / (4 * math.pi), rel=1e-5)
    assert float(vals["c2"]) == pytest.approx(7 / (16 * math.pi), rel=1e-5)
    assert float(vals["residual_pi4"]) == pytest.approx(-0.193619, abs=1e-6)
    assert len([line for line in text.splitlines() if line.startswith("phi=")]) == 9


def test_ellipse_check_circle():
    _, text = run("ellipse-check", "--a", "1", "--b", "1")
    res = [float(line.split("residual=")[1]) for line in text.splitlines() if line.startswith("phi=")]
    assert all(r == 0 for r in res)


def test_recover(tmp_path):
    shape = tmp_path / "g.csv"
    run("steady", "--c1", "0.2", "--c2", "0.1", "--samples", "512", "--out", str(shape))
    code, text = run("recover", "--in", str(shape))
    assert code == EXIT_OK
    vals = kv(text)
    assert float(vals["c1_rel_error"]) < 1e-3
    assert float(vals["c2_rel_error"]) < 1e-3


def test_properties_command():
    code, text = run("properties", "--c1-hat", "1", "--q", "0.5")
    assert code == EXIT_OK
    assert text.strip().endswith("all_hold=True")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ooidshape", "crit", "--q", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("c1_crit=0.541044")


def test_bad_subcommand_exit_2():
    proc = subprocess.run([sys.executable, "-m", "ooidshape", "nonsense"], capture_output=True, text=True)
    assert proc.returncode == 2
