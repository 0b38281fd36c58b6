import json
import math

import pandas as pd
import pytest

from latentsym.cli import EXIT_CONFIG_ERROR, EXIT_NUMERIC_ERROR, EXIT_OK, main
from latentsym.registry import Registry, registry
from latentsym.run import cmd_spectrum
from latentsym.utils import dump_file

BASE_TRIMER = {"omega": 0.0, "gamma": 0.5, "mu": 1.0, "kappa": 1.0 / math.sqrt(2.0)}


@pytest.fixture
def write_config(tmp_path):
    def _write(data: dict, name: str = "config.yaml"):
        path = tmp_path / name
        dump_file(path, data)
        return str(path)

    return _write


@pytest.fixture
def evolve_config(write_config):
    return write_config(
        {
            "command": "evolve",
            "model": {"trimer": BASE_TRIMER},
            "initial_state": "bright",
            "grid": {"t_start": 0.0, "t_end": 2.0, "steps": 5},
        }
    )


def test_spectrum_to_stdout(write_config, capsys):
    config = write_config({"command": "spectrum", "model": {"trimer": BASE_TRIMER}})
    assert main(["spectrum", "--config", config]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["phase"]["regime"] == "PT_UNBROKEN"
    assert len(report["eigenvalues"]) == 3


def test_evolve_to_file(evolve_config, tmp_path):
    out = tmp_path / "evolve.csv"
    assert main(["evolve", "--config", evolve_config, "--out", str(out)]) == EXIT_OK
    df = pd.read_csv(out)
    assert list(df.columns) == [
        "t",
        "re_a1",
        "im_a1",
        "re_a2",
        "im_a2",
        "re_a3",
        "im_a3",
        "p1",
        "p2",
        "p3",
    ]
    assert df["t"].tolist() == [0.0, 0.5, 1.0, 1.5, 2.0]


def test_runs_are_byte_identical(evolve_config, tmp_path):
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    assert main(["evolve", "--config", evolve_config, "--out", str(first)]) == EXIT_OK
    assert main(["evolve", "--config", evolve_config, "--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_format_override(evolve_config, capsys):
    assert main(["evolve", "--config", evolve_config, "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert len(report["samples"]) == 5


def test_tolerance_override(write_config, capsys):
    config = write_config({"command": "cospectral", "model": {"trimer": BASE_TRIMER}})
    assert main(["cospectral", "--config", config, "--tol", "1e-6"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert all(entry["threshold"] >= 1e-6 for entry in report["pairs"])


def test_subcommand_replaces_config_command(write_config, capsys):
    config = write_config(
        {"command": "spectrum", "model": {"trimer": BASE_TRIMER}, "format": "json"}
    )
    assert main(["cospectral", "--config", config, "--log-level", "warning"]) == EXIT_OK
    captured = capsys.readouterr()
    assert json.loads(captured.out)["classes"] == [[0, 1]]
    assert "replaced by 'cospectral'" in captured.err


def test_sweep_writes_sidecars(write_config, tmp_path):
    config = write_config(
        {
            "command": "sweep",
            "model": {"trimer": {**BASE_TRIMER, "kappa": 1.0}},
            "sweep_range": [-2.0, 2.0, 9],
            "kappa_values": [0.5, 1.0, 2.0],
        }
    )
    out = tmp_path / "results" / "sweep.csv"
    assert main(["sweep", "--config", config, "--out", str(out)]) == EXIT_OK
    sidecar = json.loads((tmp_path / "results" / "sweep.ep.json").read_text())
    assert sidecar["gamma_c_positive"] == pytest.approx(math.sqrt(2.0), abs=1e-9)
    assert sidecar["gamma_c_negative"] == pytest.approx(-math.sqrt(2.0), abs=1e-9)
    assert len(pd.read_csv(tmp_path / "results" / "sweep.phase.csv")) == 27


def test_verbose_summary_goes_to_stderr(write_config, capsys):
    config = write_config(
        {"command": "spectrum", "model": {"trimer": {**BASE_TRIMER, "gamma": 1.0}}}
    )
    assert main(["spectrum", "--config", config, "--verbose"]) == EXIT_OK
    captured = capsys.readouterr()
    assert json.loads(captured.out)["defective"] is True
    assert captured.err
    assert "max_concurrency" in captured.err
    assert "condition_cap" in captured.err


class TestExitCodes:
    def test_no_subcommand(self, capsys):
        assert main([]) == EXIT_CONFIG_ERROR
        assert "usage" in capsys.readouterr().out

    def test_missing_config(self, tmp_path, capsys):
        code = main(["spectrum", "--config", str(tmp_path / "missing.yaml")])
        assert code == EXIT_CONFIG_ERROR
        assert "config" in capsys.readouterr().err

    def test_invalid_parameter(self, write_config, capsys):
        config = write_config(
            {"command": "spectrum", "model": {"trimer": {**BASE_TRIMER, "kappa": 0.0}}}
        )
        assert main(["spectrum", "--config", config]) == EXIT_CONFIG_ERROR
        captured = capsys.readouterr()
        assert "model.trimer.kappa" in captured.err
        assert captured.out == ""

    def test_missing_initial_state(self, write_config, capsys):
        config = write_config({"command": "evolve", "model": {"trimer": BASE_TRIMER}})
        assert main(["evolve", "--config", config]) == EXIT_CONFIG_ERROR
        assert "initial_state" in capsys.readouterr().err

    def test_cospectral_needs_two_sites(self, write_config):
        config = write_config(
            {"command": "cospectral", "model": {"network": {"sites": [{"omega": 0.0}]}}}
        )
        assert main(["cospectral", "--config", config]) == EXIT_CONFIG_ERROR

    def test_overflow(self, write_config, capsys):
        config = write_config(
            {
                "command": "evolve",
                "model": {"trimer": {"gamma": 300.0, "mu": 1.0, "kappa": 1.0}},
                "initial_state": "dark",
                "grid": {"t_start": 0.0, "t_end": 10.0, "steps": 3},
            }
        )
        assert main(["evolve", "--config", config]) == EXIT_NUMERIC_ERROR
        assert "Numeric error" in capsys.readouterr().err


class TestRegistry:
    def test_default_commands(self):
        assert registry.get_commands() == ["spectrum", "evolve", "sweep", "cospectral"]
        assert registry.get_info().commands == registry.get_commands()

    def test_unknown_command(self):
        with pytest.raises(KeyError):
            registry.get_command("plot")

    def test_duplicate_registration(self):
        local = Registry()
        local.register_command(cmd_spectrum, "spectrum")
        with pytest.raises(ValueError):
            local.register_command(cmd_spectrum, "spectrum")
