import json
import math
import os

import numpy as np
import pytest

from plateflutter.cli import main
from plateflutter.config import RunConfig, apply_assignment, load_config
from plateflutter.errors import ConfigError


def test_defaults_match_bridge_setup():
    cfg = RunConfig()
    assert cfg.plate.half_width == pytest.approx(math.pi / 150)
    assert cfg.plate.poisson == 0.2
    assert cfg.plate.strip_width == pytest.approx(math.pi / 1500)
    assert cfg.scan.width_filter == 0.2
    assert cfg.scan.delta == 5e-4
    assert cfg.resolved_gamma() == pytest.approx(5.17e-4, rel=0.005)


def test_config_file_and_overrides(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text("[model]\ngamma = 1e-3\n[scan]\ngrid_step = 0.02\n")
    cfg = load_config(str(path), ["scan.grid_step=0.05"])
    assert cfg.resolved_gamma() == 1e-3
    assert cfg.scan.grid_step == 0.05   # command line wins over the file


def test_named_constants():
    cfg = load_config(None, ["plate.half_width=pi/144", "plate.strip_width=pi/1500"])
    assert cfg.plate.half_width == pytest.approx(math.pi / 144)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError):
        load_config(None, ["scan.bogus=1"])
    with pytest.raises(ConfigError):
        apply_assignment(RunConfig(), "noseparator", "1")


def test_invalid_plate_value_rejected():
    # strip as wide as the plate breaches the a_k < 1 invariant at the source
    with pytest.raises(ConfigError):
        load_config(None, ["plate.strip_width=pi/150"])


def test_config_hash_deterministic():
    c1, c2 = RunConfig(), RunConfig()
    assert c1.config_hash() == c2.config_hash()
    c3 = load_config(None, ["model.gamma=1e-3"])
    assert c3.config_hash() != c1.config_hash()


def test_print_config(capsys):
    assert main(["--print-config"]) == 0
    out = capsys.readouterr().out
    assert "[plate]" in out and "gamma_resolved" in out


def test_cmd_eigs_deterministic(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["--out", str(out1), "eigs", "-n", "16"]) == 0
    assert main(["--out", str(out2), "eigs", "-n", "16"]) == 0
    t1 = (out1 / "eigs.csv").read_bytes()
    t2 = (out2 / "eigs.csv").read_bytes()
    assert t1 == t2
    lines = t1.decode().splitlines()
    assert lines[0].startswith("# config_hash=")
    assert lines[1] == "rank,kind,m,k,sqrt_lambda"
    assert len(lines) == 18
    row11 = lines[12].split(",")
    assert row11[1] == "nu" and row11[2] == "1" and row11[3] == "2"
    assert float(row11[4]) == pytest.approx(104.61, abs=0.01)


def test_cmd_eigs_single(tmp_path):
    assert main(["--out", str(tmp_path), "eigs", "-n", "1"]) == 0
    lines = (tmp_path / "eigs.csv").read_text().splitlines()
    assert len(lines) == 3
    assert lines[2].split(",")[1] == "mu"


def test_cmd_coeffs(tmp_path):
    assert main(["--out", str(tmp_path), "coeffs", "--tensor"]) == 0
    text = (tmp_path / "coefficients.csv").read_text()
    assert text.splitlines()[1] == "k,a_k,b_k,d_1k,d_2k"
    a1 = float(text.splitlines()[2].split(",")[1])
    assert abs(a1 - 0.100005) < 1e-5
    assert (tmp_path / "tensor.txt").exists()
    assert (tmp_path / "abar.csv").exists()


def test_cmd_coeffs_invariant_breach_exit_code(tmp_path):
    code = main(["--out", str(tmp_path), "--set", "plate.strip_width=pi/150", "coeffs"])
    assert code == 2


def test_bad_config_file_exit_code(tmp_path):
    code = main(["--config", str(tmp_path / "missing.ini"), "eigs"])
    assert code == 2


def test_cmd_thresholds_decoupled(tmp_path):
    code = main(["--out", str(tmp_path), "--set", "scan.a_max=1.0",
                 "thresholds", "--mode", "decoupled", "--k", "11", "--l", "1"])
    assert code == 0
    rows = (tmp_path / "thresholds_decoupled.csv").read_text().splitlines()
    k, l, gamma, a_crit, e_crit, exceeded = rows[2].split(",")
    assert float(a_crit) == pytest.approx(0.62, abs=0.05)
    assert exceeded == "0"
    rec = json.loads((tmp_path / "thresholds_decoupled.json").read_text().splitlines()[0])
    assert rec["k"] == 11
    assert (tmp_path / "scan_k11_l1.csv").exists()


def test_cmd_thresholds_partial_exit(tmp_path):
    code = main(["--out", str(tmp_path), "--set", "scan.a_max=0.3",
                 "thresholds", "--mode", "decoupled", "--k", "8", "--l", "1"])
    assert code == 4   # exceeded the cap: partial scan
    rec = json.loads((tmp_path / "thresholds_decoupled.json").read_text().splitlines()[0])
    assert rec["A_crit"].startswith("exceeded")
    assert "config_hash" in rec


@pytest.mark.slow
def test_cmd_thresholds_coupled(tmp_path):
    code = main(["--out", str(tmp_path), "--set", "scan.a_max_coupled=0.3",
                 "--set", "scan.horizon=60",
                 "thresholds", "--mode", "coupled", "--k", "5", "--l", "1"])
    assert code == 4   # nothing unstable below 0.3: exceeded
    rows = (tmp_path / "thresholds_coupled.csv").read_text().splitlines()
    assert rows[1] == "k,l,gamma,A_crit,exceeded"
    assert rows[2].split(",")[4] == "1"


def test_cmd_simulate_hill(tmp_path):
    code = main(["--out", str(tmp_path), "simulate", "--scenario", "hill",
                 "--k", "14", "--l", "1", "--amplitude", "0.5", "--t-end", "20"])
    assert code == 0
    files = [f for f in os.listdir(tmp_path) if f.startswith("hill_k14")]
    assert len(files) == 1
    lines = (tmp_path / files[0]).read_text().splitlines()
    assert lines[1] == "t,xi"


def test_cmd_simulate_coupled_zero_data(tmp_path):
    code = main(["--out", str(tmp_path), "simulate", "--scenario", "coupled",
                 "--k", "3", "--amplitude", "0", "--t-end", "5"])
    assert code == 0
    name = [f for f in os.listdir(tmp_path) if f.startswith("coupled_k3")][0]
    rows = (tmp_path / name).read_text().splitlines()[2:]
    values = np.array([[float(x) for x in row.split(",")[1:]] for row in rows])
    assert np.all(values == 0.0)


def test_cmd_tnb_report(tmp_path):
    thresholds = tmp_path / "thr.json"
    with open(thresholds, "w") as fh:
        fh.write(json.dumps({"k": 1, "l": 15, "A_crit": 2.38, "gamma": 5.17e-4}) + "\n")
        fh.write(json.dumps({"k": 10, "l": 16, "A_crit": 1.87, "gamma": 5.17e-4}) + "\n")
        fh.write(json.dumps({"k": 8, "l": 15, "A_crit": "exceeded(10)",
                             "gamma": 5.17e-4}) + "\n")
    code = main(["--out", str(tmp_path), "tnb-report",
                 "--thresholds-json", str(thresholds)])
    assert code == 0
    rec = json.loads((tmp_path / "tnb_parameters.json").read_text())
    assert rec["gamma"] == pytest.approx(5.17e-4, rel=0.005)
    sup = (tmp_path / "sup_norms.csv").read_text().splitlines()
    assert float(sup[2].split(",")[1]) == pytest.approx(3.897, abs=0.005)
    disp = (tmp_path / "displacement_m.csv").read_text().splitlines()
    row1 = disp[2].split(",")
    assert float(row1[1]) == pytest.approx(9.27, abs=0.1)
    row8 = disp[9].split(",")
    assert row8[1] == ""   # exceeded entry renders empty
    row10 = disp[11].split(",")
    assert float(row10[2]) == pytest.approx(7.31, abs=0.1)


def test_no_command_shows_help(capsys):
    assert main([]) == 2
