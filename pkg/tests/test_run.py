import json
import math
from pathlib import Path

import pandas as pd
import pytest

from latentsym.data_model.simulation import Command, OutputFormat, RunConfig
from latentsym.exceptions import ConfigError
from latentsym.numerics import match_multisets
from latentsym.run import (
    PHASE_DIAGRAM_COLUMNS,
    SWEEP_COLUMNS,
    build_model,
    cmd_cospectral,
    cmd_evolve,
    cmd_spectrum,
    cmd_sweep,
    load_run_config,
    make_initial_state,
)
from latentsym.utils import dump_file

KAPPA_UNIT_EP = 1.0 / math.sqrt(2.0)
G = KAPPA_UNIT_EP

BASE_TRIMER = {"omega": 0.0, "gamma": 0.5, "mu": 1.0, "kappa": KAPPA_UNIT_EP}
BASE_NETWORK = {
    "sites": [
        {"omega": 0.0, "gamma": 0.5},
        {"omega": 0.0, "gamma": 0.5},
        {"omega": 1.0, "gamma": -0.5},
    ],
    "couplings": [
        {"from": 0, "to": 1, "g": 1.0},
        {"from": 1, "to": 0, "g": 1.0},
        {"from": 0, "to": 2, "g": G},
        {"from": 2, "to": 0, "g": G},
        {"from": 1, "to": 2, "g": G},
        {"from": 2, "to": 1, "g": G},
    ],
}
EVOLVE_HEADER = "t,re_a1,im_a1,re_a2,im_a2,re_a3,im_a3,p1,p2,p3"


def _config(tmp_path: Path, data: dict, name: str = "config.json") -> Path:
    path = tmp_path / name
    dump_file(path, data)
    return path


def _load(tmp_path: Path, data: dict, **kwargs) -> RunConfig:
    return load_run_config(_config(tmp_path, data), **kwargs)


def _eigenvalues(report: dict) -> list[complex]:
    return [complex(z["re"], z["im"]) for z in report["eigenvalues"]]


def _evolve_config(tmp_path: Path, name: str = "evolve.csv", **trimer) -> dict:
    return {
        "command": "evolve",
        "model": {"trimer": {**BASE_TRIMER, **trimer}},
        "initial_state": "bright",
        "grid": {"t_start": 0.0, "t_end": 10.0, "steps": 1001},
        "output": str(tmp_path / name),
    }


class TestLoadRunConfig:
    def test_json_yaml_and_toml_agree(self, tmp_path):
        data = {"command": "spectrum", "model": {"trimer": BASE_TRIMER}}
        configs = [
            load_run_config(_config(tmp_path, data, name))
            for name in ("config.json", "config.yaml", "config.toml")
        ]
        assert configs[0] == configs[1] == configs[2]
        assert configs[0].model.trimer.omega3 == "auto"
        assert configs[0].output_format == OutputFormat.JSON

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError) as excinfo:
            load_run_config(tmp_path / "missing.json")
        assert excinfo.value.field == "config"

    def test_unsupported_extension(self, tmp_path):
        path = tmp_path / "config.ini"
        path.write_text("[run]\n")
        with pytest.raises(ConfigError) as excinfo:
            load_run_config(path)
        assert excinfo.value.field == "config"

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_run_config(path)

    def test_invalid_kappa_names_the_field(self, tmp_path):
        data = {"command": "spectrum", "model": {"trimer": {**BASE_TRIMER, "kappa": 0.0}}}
        with pytest.raises(ConfigError) as excinfo:
            _load(tmp_path, data)
        assert excinfo.value.field == "model.trimer.kappa"
        assert "model.trimer.kappa" in str(excinfo.value)

    def test_model_needs_exactly_one_kind(self, tmp_path):
        data = {
            "command": "spectrum",
            "model": {"trimer": BASE_TRIMER, "network": BASE_NETWORK},
        }
        with pytest.raises(ConfigError) as excinfo:
            _load(tmp_path, data)
        assert excinfo.value.field == "model"

    def test_unknown_initial_state(self, tmp_path):
        data = {
            "command": "evolve",
            "model": {"trimer": BASE_TRIMER},
            "initial_state": "sideways",
        }
        with pytest.raises(ConfigError) as excinfo:
            _load(tmp_path, data)
        assert excinfo.value.field == "initial_state"

    def test_unknown_key(self, tmp_path):
        data = {"command": "spectrum", "model": {"trimer": BASE_TRIMER}, "colour": 1}
        with pytest.raises(ConfigError) as excinfo:
            _load(tmp_path, data)
        assert excinfo.value.field == "colour"

    @pytest.mark.parametrize(
        "data, field",
        [
            ({"command": "evolve", "model": {"trimer": BASE_TRIMER}}, "initial_state"),
            ({"command": "sweep", "model": {"trimer": BASE_TRIMER}}, "sweep_range"),
            (
                {
                    "command": "sweep",
                    "model": {"network": BASE_NETWORK},
                    "sweep_range": [-1.0, 1.0, 3],
                },
                "model.trimer",
            ),
            (
                {
                    "command": "evolve",
                    "model": {"network": BASE_NETWORK},
                    "initial_state": "dark",
                },
                "initial_state",
            ),
        ],
    )
    def test_command_requirements(self, tmp_path, data, field):
        with pytest.raises(ConfigError) as excinfo:
            _load(tmp_path, data)
        assert excinfo.value.field == field

    def test_command_argument_replaces_file_command(self, tmp_path):
        data = {"command": "spectrum", "model": {"trimer": BASE_TRIMER}}
        config = _load(tmp_path, data, command="cospectral")
        assert config.command == Command.COSPECTRAL

    def test_overrides(self, tmp_path):
        data = {"command": "spectrum", "model": {"trimer": BASE_TRIMER}}
        config = _load(
            tmp_path, data, overrides={"format": "csv", "tol": 1e-8, "output": "x.csv"}
        )
        assert config.output_format == OutputFormat.CSV
        assert config.tol == 1e-8
        assert config.output == "x.csv"
        assert config.model.trimer.kappa == KAPPA_UNIT_EP

    def test_invalid_override(self, tmp_path):
        data = {"command": "spectrum", "model": {"trimer": BASE_TRIMER}}
        with pytest.raises(ConfigError) as excinfo:
            _load(tmp_path, data, overrides={"tol": -1.0})
        assert excinfo.value.field == "tol"

    def test_sweep_range_forms(self, tmp_path):
        base = {"command": "sweep", "model": {"trimer": BASE_TRIMER}}
        listed = _load(tmp_path, {**base, "sweep_range": [-2.0, 2.0, 5]})
        named = _load(
            tmp_path,
            {**base, "sweep_range": {"gamma_min": -2.0, "gamma_max": 2.0, "steps": 5}},
        )
        assert listed.sweep_range == named.sweep_range
        with pytest.raises(ConfigError) as excinfo:
            _load(tmp_path, {**base, "sweep_range": [2.0, -2.0, 5]})
        assert excinfo.value.field.startswith("sweep_range")


class TestModel:
    def test_auto_applies_reality_conditions(self, tmp_path):
        config = _load(tmp_path, {"command": "spectrum", "model": {"trimer": BASE_TRIMER}})
        p, H = build_model(config)
        assert (p.omega3, p.gamma3) == (1.0, -0.5)
        assert H.n == 3

    def test_explicit_site_three(self, tmp_path):
        trimer = {**BASE_TRIMER, "omega3": 0.25, "gamma3": 0.1}
        config = _load(tmp_path, {"command": "spectrum", "model": {"trimer": trimer}})
        p, _ = build_model(config)
        assert (p.omega3, p.gamma3) == (0.25, 0.1)

    def test_network_coupling_errors(self, tmp_path):
        network = {
            "sites": [{"omega": 0.0}, {"omega": 1.0}],
            "couplings": [{"from": 0, "to": 5, "g": 1.0}],
        }
        config = _load(tmp_path, {"command": "spectrum", "model": {"network": network}})
        with pytest.raises(ConfigError) as excinfo:
            build_model(config)
        assert excinfo.value.field == "model.network.couplings"

    def test_initial_states(self, tmp_path):
        base = {"command": "evolve", "model": {"trimer": {**BASE_TRIMER, "chi": 0.2}}}
        for spec, expected in [
            ("dark", [math.exp(0.2), -math.exp(-0.2), 0.0]),
            ("site:2", [0.0, 0.0, 1.0]),
            ([[1.0, 0.0], {"re": 0.0, "im": 1.0}, [0.0, 0.0]], [1.0, 1j, 0.0]),
        ]:
            config = _load(tmp_path, {**base, "initial_state": spec})
            p, H = build_model(config)
            psi = make_initial_state(config, p, H)
            assert psi.amplitudes.tolist() == pytest.approx(expected)

    def test_normalized_initial_state(self, tmp_path):
        data = {
            "command": "evolve",
            "model": {"trimer": BASE_TRIMER},
            "initial_state": "dark",
            "normalize": True,
        }
        config = _load(tmp_path, data)
        psi = make_initial_state(config, *build_model(config))
        assert psi.amplitudes.tolist() == pytest.approx([G, -G, 0.0])

    @pytest.mark.parametrize("spec", ["site:3", [1.0, 0.0]])
    def test_initial_state_must_fit_the_model(self, tmp_path, spec):
        data = {"command": "evolve", "model": {"trimer": BASE_TRIMER}, "initial_state": spec}
        config = _load(tmp_path, data)
        with pytest.raises(ConfigError) as excinfo:
            make_initial_state(config, *build_model(config))
        assert excinfo.value.field == "initial_state"


class TestSpectrum:
    def test_unbroken_trimer(self, tmp_path):
        out = tmp_path / "spectrum.json"
        config = _load(
            tmp_path,
            {"command": "spectrum", "model": {"trimer": BASE_TRIMER}, "output": str(out)},
        )
        cmd_spectrum(config)
        report = json.loads(out.read_text())
        expected = [-1.0 + 0.5j, 1.0 + math.sqrt(0.75), 1.0 - math.sqrt(0.75)]
        assert match_multisets(_eigenvalues(report), expected) <= 1e-10
        assert report["phase"]["regime"] == "PT_UNBROKEN"
        assert report["phase"]["gamma_c"] == pytest.approx(1.0)
        assert report["phase"]["bright_oscillation"]["max_p3"] == pytest.approx(4.0 / 3.0)
        assert report["conditions"]["latent_symmetric"] is True
        assert report["defective"] is False
        lam0 = report["sectors"]["dark_eigenvalue"]
        assert complex(lam0["re"], lam0["im"]) == pytest.approx(-1.0 + 0.5j, abs=1e-15)

    def test_exceptional_point(self, tmp_path):
        config = _load(
            tmp_path,
            {
                "command": "spectrum",
                "model": {"trimer": {**BASE_TRIMER, "gamma": 1.0}},
                "output": str(tmp_path / "ep.json"),
            },
        )
        report = cmd_spectrum(config)
        assert report["phase"]["regime"] == "EXCEPTIONAL_POINT"
        assert report["defective"] is True
        assert report["max_overlap"] >= 1.0 - 1e-6
        assert len(report["phase"]["nilpotent_part"]) == 2
        assert len(report["phase"]["coalesced_vector"]) == 3

    def test_diagonal_network(self, tmp_path, capsys):
        network = {"sites": [{"omega": 1.0}, {"omega": -2.0, "gamma": 0.5}]}
        config = _load(tmp_path, {"command": "spectrum", "model": {"network": network}})
        cmd_spectrum(config)
        report = json.loads(capsys.readouterr().out)
        assert match_multisets(_eigenvalues(report), [1.0, -2.0 + 0.5j]) <= 1e-14
        assert "phase" not in report
        assert report["model"]["network"]["couplings"] == []

    @pytest.mark.parametrize("name", ["spectrum.json", "spectrum.txt"])
    def test_file_and_stdout_reports_match(self, tmp_path, capsys, name):
        data = {"command": "spectrum", "model": {"network": BASE_NETWORK}}
        cmd_spectrum(_load(tmp_path, data))
        printed = capsys.readouterr().out
        out = tmp_path / name
        cmd_spectrum(_load(tmp_path, {**data, "output": str(out)}))
        assert out.read_bytes() == printed.encode()
        assert printed.endswith("}\n")

    def test_json_floats_round_trip_exactly(self, tmp_path):
        out = tmp_path / "spectrum.json"
        config = _load(
            tmp_path,
            {"command": "spectrum", "model": {"trimer": BASE_TRIMER}, "output": str(out)},
        )
        report = cmd_spectrum(config)
        loaded = json.loads(out.read_text())
        assert loaded["eigenvalues"] == report["eigenvalues"]
        assert loaded["max_overlap"] == report["max_overlap"]
        assert loaded["eigenvector_condition"] == report["eigenvector_condition"]

    def test_csv_format(self, tmp_path):
        out = tmp_path / "spectrum.csv"
        config = _load(
            tmp_path,
            {
                "command": "spectrum",
                "model": {"trimer": BASE_TRIMER},
                "format": "csv",
                "output": str(out),
            },
        )
        cmd_spectrum(config)
        lines = out.read_text().splitlines()
        assert lines[0] == "index,re_lambda,im_lambda"
        assert len(lines) == 4

    def test_model_block_round_trips(self, tmp_path):
        for model in ({"trimer": {**BASE_TRIMER, "chi": 0.3}}, {"network": BASE_NETWORK}):
            first = cmd_spectrum(
                _load(
                    tmp_path,
                    {"command": "spectrum", "model": model, "output": str(tmp_path / "a.json")},
                )
            )
            second = cmd_spectrum(
                _load(
                    tmp_path,
                    {
                        "command": "spectrum",
                        "model": first["model"],
                        "output": str(tmp_path / "b.json"),
                    },
                )
            )
            assert second["model"] == first["model"]
            assert second["eigenvalues"] == first["eigenvalues"]


class TestEvolve:
    def test_equal_distribution(self, tmp_path):
        data = _evolve_config(tmp_path)
        cmd_evolve(_load(tmp_path, data))
        text = Path(data["output"]).read_text()
        assert text.splitlines()[0] == EVOLVE_HEADER
        df = pd.read_csv(data["output"])
        assert len(df) == 1001
        assert (df["p1"] - df["p2"]).abs().max() <= 1e-12

    def test_deformation_keeps_site_three(self, tmp_path):
        flat = _evolve_config(tmp_path)
        bent = _evolve_config(tmp_path, "bent.csv", chi=0.2)
        cmd_evolve(_load(tmp_path, flat))
        cmd_evolve(_load(tmp_path, bent))
        a = pd.read_csv(flat["output"])
        b = pd.read_csv(bent["output"])
        assert (a["p3"] - b["p3"]).abs().max() <= 1e-9
        ratio = b["p1"] / b["p2"]
        assert (ratio - math.exp(0.8)).abs().max() <= 1e-9

    def test_dark_state_never_reaches_site_three(self, tmp_path):
        data = {**_evolve_config(tmp_path), "initial_state": "dark"}
        df = cmd_evolve(_load(tmp_path, data))
        assert df["p3"].max() <= 1e-12 * max(1.0, df["p1"].max())

    def test_output_is_deterministic(self, tmp_path):
        data = _evolve_config(tmp_path)
        cmd_evolve(_load(tmp_path, data))
        first = Path(data["output"]).read_bytes()
        cmd_evolve(_load(tmp_path, data))
        assert Path(data["output"]).read_bytes() == first

    def test_json_format(self, tmp_path):
        out = tmp_path / "evolve.json"
        data = {
            **_evolve_config(tmp_path),
            "grid": {"t_start": 0.0, "t_end": 1.0, "steps": 3},
            "format": "json",
            "output": str(out),
        }
        cmd_evolve(_load(tmp_path, data))
        report = json.loads(out.read_text())
        assert [s["t"] for s in report["samples"]] == [0.0, 0.5, 1.0]
        assert report["samples"][0]["occupations"] == pytest.approx([0.5, 0.5, 0.0])
        assert report["model"]["trimer"]["gamma3"] == -0.5


class TestSweep:
    def _run(self, tmp_path, kappa=KAPPA_UNIT_EP, sweep_range=(-2.0, 2.0, 401), **extra):
        out = tmp_path / "sweep.csv"
        data = {
            "command": "sweep",
            "model": {"trimer": {**BASE_TRIMER, "kappa": kappa}},
            "sweep_range": list(sweep_range),
            "output": str(out),
            **extra,
        }
        df = cmd_sweep(_load(tmp_path, data))
        sidecar = json.loads((tmp_path / "sweep.ep.json").read_text())
        return df, out, sidecar

    def test_full_sweep(self, tmp_path):
        df, out, sidecar = self._run(tmp_path)
        assert out.read_text().splitlines()[0] == ",".join(SWEEP_COLUMNS)
        assert len(df) == 401
        assert sidecar["gamma_c_positive"] == pytest.approx(1.0, abs=1e-9)
        assert sidecar["gamma_c_negative"] == pytest.approx(-1.0, abs=1e-9)
        assert sidecar["coalesced"] == {"positive": True, "negative": True}
        inside = df[df["gamma"].abs() <= 0.99]
        assert inside["im_lambda_plus"].abs().max() <= 1e-10
        assert (df["im_lambda0"] - df["gamma"]).abs().max() <= 1e-12

    def test_unit_kappa(self, tmp_path):
        _, _, sidecar = self._run(tmp_path, kappa=1.0)
        assert sidecar["gamma_c_positive"] == pytest.approx(math.sqrt(2.0), abs=1e-9)
        assert sidecar["gamma_c_negative"] == pytest.approx(-math.sqrt(2.0), abs=1e-9)

    def test_two_steps(self, tmp_path):
        df, _, _ = self._run(tmp_path, sweep_range=(-2.0, 2.0, 2))
        assert len(df) == 2

    def test_one_sided_range(self, tmp_path):
        _, _, sidecar = self._run(tmp_path, sweep_range=(0.5, 2.0, 11))
        assert sidecar["gamma_c_positive"] == pytest.approx(1.0, abs=1e-9)
        assert sidecar["gamma_c_negative"] is None
        assert sidecar["residuals"]["negative"] is None

    def test_phase_diagram(self, tmp_path):
        self._run(tmp_path, sweep_range=(-2.0, 2.0, 5), kappa_values=[0.5, 1.0])
        phase = pd.read_csv(tmp_path / "sweep.phase.csv")
        assert list(phase.columns) == list(PHASE_DIAGRAM_COLUMNS)
        assert len(phase) == 10
        assert list(phase["kappa"][:2]) == [0.5, 1.0]

    def test_json_format(self, tmp_path):
        out = tmp_path / "sweep.json"
        data = {
            "command": "sweep",
            "model": {"trimer": BASE_TRIMER},
            "sweep_range": [-2.0, 2.0, 5],
            "format": "json",
            "output": str(out),
        }
        cmd_sweep(_load(tmp_path, data))
        report = json.loads(out.read_text())
        assert [row["regime"] for row in report["rows"]] == [
            "PT_BROKEN",
            "EXCEPTIONAL_POINT",
            "PT_UNBROKEN",
            "EXCEPTIONAL_POINT",
            "PT_BROKEN",
        ]
        assert report["exceptional_points"]["gamma_c_positive"] == pytest.approx(1.0)


class TestCospectral:
    def _report(self, tmp_path, network: dict) -> dict:
        out = tmp_path / "cospectral.json"
        data = {"command": "cospectral", "model": {"network": network}, "output": str(out)}
        cmd_cospectral(_load(tmp_path, data))
        return json.loads(out.read_text())

    def test_trimer_network(self, tmp_path):
        report = self._report(tmp_path, BASE_NETWORK)
        cospectral = [entry["pair"] for entry in report["pairs"] if entry["cospectral"]]
        assert cospectral == [[0, 1]]
        assert report["singlets"] == [{"pair": [0, 1], "singlets": [2], "disconnected": []}]
        assert report["classes"] == [[0, 1]]
        assert report["trimer_conditions"]["latent_symmetric"] is True

    def test_unequal_gain(self, tmp_path):
        network = json.loads(json.dumps(BASE_NETWORK))
        network["sites"][1]["gamma"] = 0.4
        report = self._report(tmp_path, network)
        assert not any(entry["cospectral"] for entry in report["pairs"])
        assert report["singlets"] == []

    def test_asymmetric_couplings(self, tmp_path):
        network = {
            "sites": [{"omega": 0.0}, {"omega": 0.0}, {"omega": 1.0}],
            "couplings": [
                {"from": 0, "to": 2, "g": 2.0},
                {"from": 2, "to": 0, "g": 0.5},
                {"from": 1, "to": 2, "g": 1.0},
                {"from": 2, "to": 1, "g": 1.0},
            ],
        }
        report = self._report(tmp_path, network)
        assert report["pairs"][0]["pair"] == [0, 1]
        assert report["pairs"][0]["cospectral"] is True

    def test_trimer_model(self, tmp_path):
        out = tmp_path / "trimer.json"
        data = {
            "command": "cospectral",
            "model": {"trimer": {**BASE_TRIMER, "chi": 0.4}},
            "output": str(out),
        }
        report = cmd_cospectral(_load(tmp_path, data))
        assert report["classes"] == [[0, 1]]

    def test_single_site(self, tmp_path):
        data = {
            "command": "cospectral",
            "model": {"network": {"sites": [{"omega": 0.0}]}},
        }
        with pytest.raises(ConfigError) as excinfo:
            cmd_cospectral(_load(tmp_path, data))
        assert excinfo.value.field == "model"

    def test_csv_format(self, tmp_path):
        out = tmp_path / "cospectral.csv"
        data = {
            "command": "cospectral",
            "model": {"network": BASE_NETWORK},
            "format": "csv",
            "output": str(out),
        }
        cmd_cospectral(_load(tmp_path, data))
        df = pd.read_csv(out)
        assert list(df.columns) == ["i", "j", "cospectral", "max_coeff_deviation", "threshold"]
        assert len(df) == 3
        assert df["cospectral"].tolist() == [True, False, False]
