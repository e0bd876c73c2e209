import math

import pytest

from udw_coherence import cli
from udw_coherence.config import OUTPUT_ENV, ConfigError, load_config, merge


def write(tmp_path, text, name="run.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_load_config(tmp_path):
    p = write(tmp_path, "geometry: orthogonal\ngap_b: 0.2\nsteps: 10\noutputs: [C_l1, P_A]\nboundary: false\n")
    cfg = load_config(p)
    assert cfg == {"geometry": "orthogonal", "gap_b": 0.2, "steps": 10, "outputs": ["C_l1", "P_A"],
                   "boundary": False}


def test_load_config_rejects(tmp_path):
    with pytest.raises(ConfigError, match="unknown"):
        load_config(write(tmp_path, "colour: red\n"))
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, "steps: 2.5\n"))
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, "- a\n- b\n"))


def test_env_overrides_only_output():
    out = merge({"gap_a": 0.3, "output": "a.csv"}, {"gap_a": None, "dz": 2.0}, {OUTPUT_ENV: "b.csv"})
    assert out == {"gap_a": 0.3, "dz": 2.0, "output": "b.csv"}


def test_cli_point(capsys):
    assert cli.main(["point", "--outputs", "C_l1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "gap_a,gap_b,gap_c,L,dz,C_l1"
    assert float(lines[2].split(",")[-1]) == pytest.approx(0.5582512710243726, rel=1e-11)


def test_cli_flags_override_config(tmp_path, capsys):
    p = write(tmp_path, "geometry: orthogonal\ndz: 3\n")
    cli.main(["point", "--config", str(p), "--dz", "0", "--outputs", "P_A"])
    row = capsys.readouterr().out.splitlines()[2].split(",")
    assert float(row[4]) == 0.0
    assert float(row[5]) == 0.0


def test_cli_sweep_to_file(tmp_path, monkeypatch):
    target = tmp_path / "out.csv"
    monkeypatch.setenv(OUTPUT_ENV, str(target))
    p = write(tmp_path, "axis: L_over_sigma\nstart: 0.5\nstop: 5\nsteps: 4\nlambda: 0.1\n")
    assert cli.main(["sweep", "--config", str(p), "--no-timestamp"]) == 0
    text = target.read_text()
    assert "generated:" not in text
    assert "# lambda: 0.1" in text
    assert len([ln for ln in text.splitlines() if not ln.startswith("#")]) == 5


def test_cli_sweep_missing_axis(capsys):
    assert cli.main(["sweep"]) == 2
    assert "axis" in capsys.readouterr().err


def test_cli_state(capsys):
    assert cli.main(["state", "--lambda", "0.1", "--geometry", "orthogonal"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("# geometry: orthogonal lambda: 0.1 min_eigenvalue:")
    assert len(out) == 10


def test_cli_general_positions(capsys):
    assert cli.main(["point", "--geometry", "general", "--positions", "0,0,1;1,0,1;2,0,1",
                     "--outputs", "C_l1"]) == 0
    general = float(capsys.readouterr().out.splitlines()[2].split(",")[-1])
    cli.main(["point", "--outputs", "C_l1"])
    parallel = float(capsys.readouterr().out.splitlines()[2].split(",")[-1])
    assert general == parallel


def test_cli_validate_exit_codes(capsys):
    assert cli.main(["validate", "--gaps", "0", "--distances", "1", "--geometries", "parallel",
                     "--no-boundary"]) == 0
    assert "overall: PASS" in capsys.readouterr().out


def test_cli_validate_failure_exit(monkeypatch, capsys):
    from udw_coherence import validate
    from udw_coherence.oracle import QuadratureSettings

    real = validate.run_validate

    def starved(settings, **kw):
        # two-node panels with no doubling budget cannot converge
        return real(QuadratureSettings(grid=2, max_doublings=0), **kw)

    monkeypatch.setattr(cli, "run_validate", starved)
    assert cli.main(["validate", "--gaps", "0.1", "--distances", "1", "--geometries", "parallel"]) == 1
    assert "overall: FAIL" in capsys.readouterr().out


def test_cli_rejects_bad_values(capsys):
    assert cli.main(["point", "--L", "-1"]) == 2
    assert "L must be" in capsys.readouterr().err
    assert cli.main(["point", "--lambda", "10"]) == 2


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "udw_coherence", "point", "--outputs", "P_A"],
                         capture_output=True, text=True, check=True).stdout
    p = float(out.splitlines()[2].split(",")[-1])
    assert 0 < p < 1 / (4 * math.pi)
