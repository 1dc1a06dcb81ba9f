import subprocess
import sys

import pytest

from covertauth import cli
from covertauth.config import ConfigError, parse_config
from covertauth.simulate import ScenarioConfig


def test_empty_config_gives_defaults(tmp_path):
    path = tmp_path / "empty.cfg"
    path.write_text("")
    cfg = parse_config(path)
    assert cfg == ScenarioConfig()
    assert cfg.n_t == 32 and cfg.l_t == 16 and cfg.n_total == 5210


def test_single_override(tmp_path):
    path = tmp_path / "eps.cfg"
    path.write_text("# comment line\nepsilon = 0.2   # trailing comment\n")
    cfg = parse_config(path)
    assert cfg.epsilon == 0.2
    assert cfg.n_r == ScenarioConfig().n_r


def test_out_of_range_value_names_key(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("epsilon = -1\n")
    with pytest.raises(ConfigError, match="epsilon"):
        parse_config(path)


def test_unknown_key_reports_line(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("n_t = 16\nwavelength = 3\n")
    with pytest.raises(ConfigError, match=":2"):
        parse_config(path)


def test_malformed_line_reports_line(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("just some words\n")
    with pytest.raises(ConfigError, match=":1"):
        parse_config(path)


def test_unparseable_value(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("trials = many\n")
    with pytest.raises(ConfigError, match="trials"):
        parse_config(path)


def test_cross_field_validation(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("n_max = 100\nn_total = 50\n")
    with pytest.raises(ConfigError, match="n_max"):
        parse_config(path)


def test_missing_file():
    with pytest.raises(ConfigError):
        parse_config("/nonexistent/path.cfg")


def test_cli_usage_error_exit_code(capsys):
    assert cli.main(["covert", "--definitely-not-a-flag"]) == cli.EXIT_USAGE
    assert "usage" in capsys.readouterr().err


def test_cli_unknown_experiment_is_usage_error(capsys):
    assert cli.main(["sweep", "--experiment", "mystery"]) == cli.EXIT_USAGE


def test_cli_bad_config_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("epsilon = -1\n")
    assert cli.main(["pattern", "--config", str(bad)]) == cli.EXIT_USAGE
    assert "epsilon" in capsys.readouterr().err


def test_cli_pattern_manifest_and_exit(tmp_path, capsys):
    code = cli.main(["pattern", "--out", str(tmp_path), "--seed", "7"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "beam-pattern_7.csv" in out
    assert (tmp_path / "beam-pattern_7.csv").stat().st_size > 0


def test_cli_seed_determines_output_bytes(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["sweep", "--experiment", "convergence", "--out", str(a),
                     "--seed", "11", "--trials", "2000"]) == 0
    assert cli.main(["sweep", "--experiment", "convergence", "--out", str(b),
                     "--seed", "11", "--trials", "2000"]) == 0
    fa = a / "convergence_11.csv"
    fb = b / "convergence_11.csv"
    assert fa.read_bytes() == fb.read_bytes()


def test_cli_infeasible_exit_code(tmp_path):
    cfgfile = tmp_path / "tight.cfg"
    # enormous CSI error bound with a sub-nano covertness budget
    cfgfile.write_text("epsilon = 1e-6\nh_error_bound = 1000\np_min = 0.5\n")
    assert cli.main(["covert", "--config", str(cfgfile), "--out", str(tmp_path),
                     "--trials", "1000"]) == cli.EXIT_INFEASIBLE


def test_cli_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "covertauth.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "validate" in proc.stdout


def test_cli_validate_exit_codes(monkeypatch, capsys):
    from covertauth.simulate import TrialReport

    good = TrialReport("gate", 0.5, 0.5, 0.001, 100, 0.01)
    bad = TrialReport("gate", 0.5, 0.9, 0.001, 100, 0.01)
    monkeypatch.setattr(cli.simulate, "validation_suite", lambda cfg: [good])
    assert cli.main(["validate", "--trials", "100"]) == cli.EXIT_OK
    monkeypatch.setattr(cli.simulate, "validation_suite", lambda cfg: [good, bad])
    assert cli.main(["validate", "--trials", "100"]) == cli.EXIT_VALIDATION
    assert "FAIL" in capsys.readouterr().out
