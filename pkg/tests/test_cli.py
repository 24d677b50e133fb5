import math

import pytest

from birefringence import cli
from birefringence.cli import SPEED_OF_LIGHT, parse_angle, run

PI = math.pi
SUBCOMMANDS = ["reflectance", "amplitude", "timeshift", "map-amplitude", "map-timeshift",
               "profiles", "evolve", "peaks", "validate"]


def values(text):
    out = {}
    for line in text.splitlines():
        key, _, value = line.partition(" = ")
        out[key] = value
    return out


@pytest.mark.parametrize("text, expected", [
    ("0.21pi", 0.21 * PI), ("pi", PI), ("-0.5pi", -0.5 * PI), ("pi/4", PI / 4),
    ("2*pi", 2 * PI), ("1.5", 1.5), ("3pi/4", 0.75 * PI), ("1e-1pi", 0.1 * PI),
])
def test_parse_angle(text, expected):
    assert parse_angle(text) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("command", SUBCOMMANDS)
def test_help(command, capsys):
    assert run([command, "--help"]) == 0
    assert "usage:" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert run(["timeshift", "--bogus"]) == 2
    assert "usage:" in capsys.readouterr().err
    assert run([]) == 2
    assert run(["amplitude", "--dkd", "abc"]) == 2


def test_timeshift_point(capsys):
    assert run(["timeshift", "--beta", "0.25pi", "--dkd", "0.5pi"]) == 0
    out = values(capsys.readouterr().out)
    assert float(out["tau"]) == pytest.approx(0.30, abs=1e-12)
    assert out["superluminal"] == "false"


def test_timeshift_small_signal_and_seconds(capsys):
    assert run(["timeshift", "--beta", "0.2pi", "--dkd", "1.05pi", "--small-signal", "--d-physical", "0.1"]) == 0
    out = values(capsys.readouterr().out)
    assert out["out_of_regime"] == "false"
    assert float(out["tau_seconds"]) == pytest.approx(float(out["tau"]) * 0.1 / SPEED_OF_LIGHT)


def test_domain_and_singular_exit_codes(capsys):
    assert run(["timeshift", "--beta", "0.25pi", "--dkd", "pi"]) == 3
    assert "unbounded" in capsys.readouterr().err
    assert run(["timeshift", "--n-o", "1.5", "--n-e", "1.4", "--dkd", "1"]) == 3
    assert run(["peaks", "--beta", "0.6pi", "--mu", "1"]) == 3


def test_solver_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(cli.pulse_mod, "search_window", lambda mu, dn: (5.0, 6.0))
    assert run(["peaks", "--beta", "0.1pi", "--mu", "2"]) == 4
    assert "solver failure" in capsys.readouterr().err


def test_amplitude_singular(capsys):
    assert run(["amplitude", "--beta", "pi/4", "--dkd", "pi"]) == 0
    out = values(capsys.readouterr().out)
    assert out["chi"] == "singular" and float(out["modulus"]) < 1e-12


def test_reflectance(capsys):
    assert run(["reflectance", "--n2", "1.25"]) == 0
    assert float(values(capsys.readouterr().out)["reflectance"]) == pytest.approx(1 / 81)


def test_peaks_broad_pulse(capsys):
    assert run(["peaks", "--beta", "0.21pi", "--mu", "0.25", "--dn", "0.15"]) == 0
    out = values(capsys.readouterr().out)
    xi1 = float(out["xi1"])
    assert xi1 == pytest.approx(0.594, abs=5e-4)
    # matches a dense grid scan; still ~4% short of the stationary-phase value
    assert float(out["advanced_xi"]) == pytest.approx(0.56998, abs=1e-4)


def test_map_amplitude_fig2(capsys):
    assert run(["map-amplitude", "--window", "fig2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "beta,dkd,modulus,chi,is_singular"
    assert sum(line.endswith(",1") for line in lines[1:]) == 3


def test_map_timeshift_custom_grid(capsys):
    args = ["map-timeshift", "--beta-range", "0.5", "1.0", "--dkd-range", "2.8", "3.4", "--resolution", "5", "4"]
    assert run(args) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 21


def test_output_files_deterministic(tmp_path, capsys):
    args = ["profiles", "--beta", "0.21pi", "--points", "51", "--out", str(tmp_path)]
    assert run(args) == 0
    first = capsys.readouterr().out.strip()
    content = open(first, "rb").read()
    assert run(args) == 0
    second = capsys.readouterr().out.strip()
    assert first == second and open(second, "rb").read() == content
    assert first.endswith(".csv") and "profiles_" in first
    assert (tmp_path / (first.rsplit("/", 1)[1][:-4] + ".manifest")).exists()


def test_evolve_and_validate(capsys):
    assert run(["evolve", "--times", "-5", "5", "--points", "11"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 23
    assert run(["validate", "--points", "20"]) == 0
    out = values(capsys.readouterr().out)
    assert out["passed"] == "true"
    assert run(["validate", "--points", "5", "--tolerance", "1e-30"]) == 1


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "scene.cfg"
    cfg.write_text("# Fig. 6 crystal\nn_bar = 1.35\ndn = 0.5\nbeta = 0.3pi\n")
    assert run(["timeshift", "--config", str(cfg), "--beta", "0", "--dkd", "1"]) == 0
    out = values(capsys.readouterr().out)
    # flag beta = 0 wins over the file; indices come from the file: tau = n_o - 1
    assert float(out["beta"]) == 0.0
    assert float(out["tau"]) == pytest.approx(0.10, abs=1e-12)

    assert run(["timeshift", "--config", str(cfg), "--dkd", "1"]) == 0
    assert float(values(capsys.readouterr().out)["beta"]) == pytest.approx(0.3 * PI)

    assert run(["timeshift", "--config", str(cfg), "--dn", "0.2", "--beta", "0", "--dkd", "1"]) == 0
    assert float(values(capsys.readouterr().out)["tau"]) == pytest.approx(0.25, abs=1e-12)


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    assert run(["timeshift", "--config", str(bad), "--dkd", "1"]) == 3
    bad.write_text("n_o = abc\n")
    assert run(["timeshift", "--config", str(bad), "--dkd", "1"]) == 3
    bad.write_text("d_physical = -1\n")
    assert run(["timeshift", "--config", str(bad), "--dkd", "1"]) == 3


def test_identical_invocations_identical_bytes(capsys):
    outputs = []
    for _ in range(2):
        run(["map-timeshift", "--resolution", "30", "30", "--n-bar", "1.25", "--dn", "0.15"])
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
