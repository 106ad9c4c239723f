import csv
import shutil
import subprocess


def run(cli, *args):
    return subprocess.run([cli, *map(str, args)], capture_output=True, text=True)


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def test_invalid_config_exit_code(cli, configs, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text((configs / "sfa.toml").read_text().replace("kappa = 1e-4", "kappa = 0.0"))
    proc = run(cli, "spectrum", "--config", bad, "--out", tmp_path / "out")
    assert proc.returncode == 1
    assert "kappa" in proc.stderr


def test_missing_arguments(cli):
    assert run(cli).returncode != 0
    assert run(cli, "spectrum").returncode != 0


def test_scenario_passes(cli, configs, tmp_path):
    proc = run(cli, "scenario", "--config", configs / "b.toml", "--out", tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert "all checks passed" in proc.stdout
    assert (tmp_path / "B_phase_averaged" / "evidence.json").exists()


def test_spectrum_outputs(cli, configs, tmp_path):
    proc = run(cli, "spectrum", "--config", configs / "sfa.toml", "--out", tmp_path)
    assert proc.returncode == 0, proc.stderr
    rows = read_rows(tmp_path / "spectrum.csv")
    orders = [int(r["q"]) for r in rows]
    assert orders == sorted(orders) and len(orders) == len(set(orders))
    assert all(float(r[k]) >= 0.0 for r in rows for k in r if k != "q")
    assert (tmp_path / "spectrum.json").exists()


def test_outputs_are_deterministic(cli, configs, tmp_path):
    for name in ("a", "b"):
        proc = run(cli, "scenario", "--config", configs / "a.toml", "--out", tmp_path / name, "--threads", 1)
        assert proc.returncode == 0, proc.stderr
    first = sorted((tmp_path / "a").rglob("*.*"))
    assert first
    for path in first:
        other = tmp_path / "b" / path.relative_to(tmp_path / "a")
        assert path.read_bytes() == other.read_bytes(), path.name


def test_state_and_dipole(cli, configs, tmp_path):
    proc = run(cli, "state", "--config", configs / "state.toml", "--out", tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "rho_q3.csv").exists()
    assert (tmp_path / "husimi.csv").exists()
    proc = run(cli, "dipole", "--config", configs / "a.toml", "--out", tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert read_rows(tmp_path / "dipole.csv")[0].keys() == {"t", "re_d", "im_d"}
