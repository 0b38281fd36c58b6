import json
import math
import sys
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd
import yaml
from loguru import logger
from pydantic import ValidationError

from latentsym.config import CSV_FLOAT_FORMAT, CSV_LINE_TERMINATOR
from latentsym.data_model.dynamics import StateVector, TrajectorySample
from latentsym.data_model.network import NetworkHamiltonian
from latentsym.data_model.numerics import SpectralDecomposition
from latentsym.data_model.simulation import (
    SITE_STATE_PATTERN,
    OutputFormat,
    RunConfig,
)
from latentsym.data_model.sweep import EPLocation, PhaseDiagramCell, SweepRow
from latentsym.data_model.trimer import Regime, TrimerParams
from latentsym.dynamics import trajectory
from latentsym.exceptions import ConfigError, InputError
from latentsym.network import (
    build_hamiltonian,
    check_trimer_conditions,
    cospectral_classes,
    is_cospectral,
    network_to_dict,
    singlet_report,
)
from latentsym.numerics import eigen
from latentsym.settings import settings
from latentsym.sweep import gamma_sweep, locate_ep, phase_diagram
from latentsym.trimer import (
    bright_oscillation,
    bright_state,
    build_trimer,
    classify_phase,
    coalesced_vector,
    dark_state,
    decompose,
    nilpotent_part,
    site_state,
)
from latentsym.utils.display import ConsoleDisplay
from latentsym.utils.io_utils import dump_file, load_file
from latentsym.utils.pydantic_utils import update_pydantic_model_with_dict
from latentsym.utils.utils import complex_to_dict

SWEEP_COLUMNS = (
    "gamma",
    "re_lambda0",
    "im_lambda0",
    "re_lambda_plus",
    "im_lambda_plus",
    "re_lambda_minus",
    "im_lambda_minus",
    "regime",
)
PHASE_DIAGRAM_COLUMNS = ("gamma", "kappa", "regime", "max_abs_im_bright")


def _field_path(error: ValidationError) -> str:
    loc = error.errors()[0]["loc"]
    return ".".join(str(part) for part in loc)


def _config_error(error: ValidationError) -> ConfigError:
    first = error.errors()[0]
    return ConfigError(first["msg"], field=_field_path(error) or None)


def load_run_config(
    path: str | Path,
    command: Optional[str] = None,
    overrides: Optional[dict[str, Any]] = None,
) -> RunConfig:
    """
    Load a run config file and apply command-line overrides. A command given
    here replaces the one in the file.

    Raises:
        ConfigError: naming the offending field when the file cannot be read or
            does not validate.
    """
    try:
        data = load_file(path)
    except FileNotFoundError as e:
        raise ConfigError(f"Config file {path} not found", field="config") from e
    except (ValueError, OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Cannot read config file {path}: {e}", field="config") from e
    if not isinstance(data, dict):
        raise ConfigError("Config must be a mapping", field="config")
    if command is not None:
        if data.get("command", command) != command:
            logger.warning(
                f"Config command '{data['command']}' replaced by '{command}'"
            )
        data = {**data, "command": command}
    try:
        config = RunConfig.model_validate(data)
        if overrides:
            config = update_pydantic_model_with_dict(config, overrides)
    except ValidationError as e:
        raise _config_error(e) from e
    config.validate_for_command()
    return config


def build_model(config: RunConfig) -> tuple[Optional[TrimerParams], NetworkHamiltonian]:
    """
    Trimer parameters (None for a raw network) and the Hamiltonian of a config.
    """
    if config.model.trimer is not None:
        try:
            p = config.model.trimer.to_params()
        except ValidationError as e:
            raise ConfigError(
                e.errors()[0]["msg"], field=f"model.trimer.{_field_path(e)}"
            ) from e
        return p, build_trimer(p)
    network = config.model.network
    try:
        H = build_hamiltonian(network.sites, network.couplings)
    except InputError as e:
        raise ConfigError(str(e), field="model.network.couplings") from e
    return None, H


def model_to_dict(p: Optional[TrimerParams], H: NetworkHamiltonian) -> dict[str, Any]:
    """
    Model block that re-ingests as the same model.
    """
    if p is not None:
        return {"trimer": p.model_dump()}
    return {"network": network_to_dict(H)}


def make_initial_state(
    config: RunConfig, p: Optional[TrimerParams], H: NetworkHamiltonian
) -> StateVector:
    spec = config.initial_state
    try:
        if spec == "dark":
            psi = dark_state(p)
        elif spec == "bright":
            psi = bright_state(p)
        elif isinstance(spec, str):
            psi = site_state(H.n, int(SITE_STATE_PATTERN.match(spec).group(1)))
        else:
            psi = StateVector(amplitudes=spec)
        if psi.n != H.n:
            raise InputError(
                f"Initial state has {psi.n} amplitudes but the model has {H.n} sites"
            )
        if config.normalize:
            psi = psi.normalized()
    except (InputError, ValueError) as e:
        raise ConfigError(str(e), field="initial_state") from e
    return psi


def _vector(v) -> list[dict[str, float]]:
    return [complex_to_dict(z) for z in v]


def _finite(x: float) -> Optional[float]:
    return float(x) if math.isfinite(x) else None


def to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(
        index=False, float_format=CSV_FLOAT_FORMAT, lineterminator=CSV_LINE_TERMINATOR
    )


def to_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_output(content: str, output: Optional[str | Path]) -> None:
    """
    Write to a file, or to standard output when no file is given.
    """
    if output is None:
        sys.stdout.write(content)
        sys.stdout.flush()
        return
    output = Path(output)
    if not output.parent.exists():
        output.parent.mkdir(parents=True, exist_ok=True)
    logger.info(f"Writing {output}")
    with open(output, "w", newline="\n") as fp:
        fp.write(content)


def write_json(data: Any, output: Optional[str | Path]) -> None:
    """
    Write a JSON report. Files with a .json suffix go through dump_file, other
    targets get the same text through write_output.
    """
    if output is None or Path(output).suffix != ".json":
        write_output(to_json(data), output)
        return
    logger.info(f"Writing {output}")
    dump_file(output, data, allow_nan=False)


def _sidecar_path(output: str | Path, suffix: str) -> Path:
    output = Path(output)
    return output.with_name(f"{output.stem}{suffix}")


def spectrum_report(
    config: RunConfig,
    p: Optional[TrimerParams],
    H: NetworkHamiltonian,
    spectrum: SpectralDecomposition,
) -> dict[str, Any]:
    report: dict[str, Any] = {
        "model": model_to_dict(p, H),
        "eigenvalues": _vector(spectrum.eigenvalues),
        "defective": spectrum.defective,
        "eigenvector_condition": _finite(spectrum.eigenvector_condition),
        "max_overlap": spectrum.max_overlap,
        "multiplicities": spectrum.multiplicities,
    }
    if p is None:
        return report

    sectors = decompose(p)
    phase = classify_phase(p)
    lambda_plus, lambda_minus = sectors.bright_eigenvalues
    report["sectors"] = {
        "dark_vector": _vector(sectors.dark_vector),
        "dark_eigenvalue": complex_to_dict(sectors.dark_eigenvalue),
        "bright_vector": _vector(sectors.bright_vector),
        "bright_block": [_vector(row) for row in sectors.bright_block],
        "lambda_plus": complex_to_dict(lambda_plus),
        "lambda_minus": complex_to_dict(lambda_minus),
    }
    report["phase"] = {
        "regime": phase.regime.value,
        "gamma_c": phase.gamma_c,
        "discriminant": complex_to_dict(phase.discriminant),
    }
    report["conditions"] = check_trimer_conditions(H, config.tol).model_dump()
    if phase.regime == Regime.EXCEPTIONAL_POINT:
        report["phase"]["nilpotent_part"] = [_vector(row) for row in nilpotent_part(p)]
        report["phase"]["coalesced_vector"] = _vector(coalesced_vector(p).amplitudes)
    elif phase.regime == Regime.PT_UNBROKEN:
        report["phase"]["bright_oscillation"] = bright_oscillation(p).model_dump()
    return report


def cmd_spectrum(config: RunConfig, console_display: bool = False) -> dict[str, Any]:
    """
    Eigenvalues, eigenvector diagnostics and, for trimers, the dark/bright
    decomposition and phase classification.
    """
    p, H = build_model(config)
    spectrum = eigen(H.matrix, tol=config.tol, condition_cap=settings.condition_cap)
    report = spectrum_report(config, p, H, spectrum)
    if console_display:
        ConsoleDisplay.display_spectrum(
            spectrum, classify_phase(p) if p is not None else None
        )
    if config.output_format == OutputFormat.CSV:
        values = np.array([complex(z["re"], z["im"]) for z in report["eigenvalues"]])
        df = pd.DataFrame(
            {
                "index": np.arange(len(values)),
                "re_lambda": values.real,
                "im_lambda": values.imag,
            }
        )
        write_output(to_csv(df), config.output)
    else:
        write_json(report, config.output)
    return report


def trajectory_frame(samples: list[TrajectorySample]) -> pd.DataFrame:
    """
    Columns t, re_a1, im_a1, ..., re_an, im_an, p1, ..., pn.
    """
    n = samples[0].amplitudes.n
    amplitudes = np.array([s.amplitudes.amplitudes for s in samples])
    columns: dict[str, Any] = {"t": [s.t for s in samples]}
    for j in range(n):
        columns[f"re_a{j + 1}"] = amplitudes[:, j].real
        columns[f"im_a{j + 1}"] = amplitudes[:, j].imag
    occupations = np.array([s.occupations for s in samples])
    for j in range(n):
        columns[f"p{j + 1}"] = occupations[:, j]
    return pd.DataFrame(columns)


def cmd_evolve(config: RunConfig, console_display: bool = False) -> pd.DataFrame:
    """
    Propagate the configured initial state over the time grid.
    """
    p, H = build_model(config)
    psi0 = make_initial_state(config, p, H)
    samples = trajectory(H, psi0, config.grid)
    df = trajectory_frame(samples)
    if console_display:
        ConsoleDisplay.display_trajectory(samples)
    if config.output_format == OutputFormat.CSV:
        write_output(to_csv(df), config.output)
    else:
        report = {
            "model": model_to_dict(p, H),
            "initial_state": _vector(psi0.amplitudes),
            "samples": [
                {
                    "t": s.t,
                    "amplitudes": _vector(s.amplitudes.amplitudes),
                    "occupations": s.occupations,
                }
                for s in samples
            ],
        }
        write_json(report, config.output)
    return df


def sweep_frame(rows: list[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            (
                row.gamma,
                row.lambda0.real,
                row.lambda0.imag,
                row.lambda_plus.real,
                row.lambda_plus.imag,
                row.lambda_minus.real,
                row.lambda_minus.imag,
                row.regime.value,
            )
            for row in rows
        ],
        columns=list(SWEEP_COLUMNS),
    )


def phase_diagram_frame(cells: list[PhaseDiagramCell]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            (cell.gamma, cell.kappa, cell.regime.value, cell.max_abs_im_bright)
            for cell in cells
        ],
        columns=list(PHASE_DIAGRAM_COLUMNS),
    )


def locate_sweep_eps(
    p: TrimerParams, gamma_min: float, gamma_max: float, tol: float
) -> dict[str, Optional[EPLocation]]:
    """
    Exceptional points at +gamma_c and -gamma_c that lie inside the sweep
    range; None for a side the range does not reach.
    """
    brackets = {
        "positive": (max(gamma_min, 0.0), gamma_max) if gamma_max > 0 else None,
        "negative": (gamma_min, min(gamma_max, 0.0)) if gamma_min < 0 else None,
    }
    locations: dict[str, Optional[EPLocation]] = {}
    for side, bracket in brackets.items():
        locations[side] = None
        if bracket is None:
            continue
        try:
            locations[side] = locate_ep(p, bracket, tol)
        except InputError as e:
            logger.info(f"No {side} exceptional point in sweep range: {e}")
    return locations


def ep_sidecar(locations: dict[str, Optional[EPLocation]]) -> dict[str, Any]:
    def _get(side: str, attr: str):
        location = locations[side]
        return getattr(location, attr) if location is not None else None

    return {
        "gamma_c_positive": _get("positive", "gamma_c"),
        "gamma_c_negative": _get("negative", "gamma_c"),
        "residuals": {
            "positive": _get("positive", "residual"),
            "negative": _get("negative", "residual"),
        },
        "coalesced": {
            "positive": _get("positive", "coalesced"),
            "negative": _get("negative", "coalesced"),
        },
    }


def cmd_sweep(config: RunConfig, console_display: bool = False) -> pd.DataFrame:
    """
    Gamma sweep with the reality conditions tracking gamma, plus the located
    exceptional points and an optional (gamma, kappa) phase diagram.
    """
    p, _ = build_model(config)
    sweep_range = config.sweep_range
    rows = gamma_sweep(
        p, sweep_range.gamma_min, sweep_range.gamma_max, sweep_range.steps
    )
    df = sweep_frame(rows)
    locations = locate_sweep_eps(
        p, sweep_range.gamma_min, sweep_range.gamma_max, config.tol
    )
    sidecar = ep_sidecar(locations)
    cells = None
    if config.kappa_values:
        gammas = [row.gamma for row in rows]
        cells = phase_diagram(p, gammas, config.kappa_values)
    if console_display:
        ConsoleDisplay.display_exceptional_points(locations)

    if config.output_format == OutputFormat.CSV:
        write_output(to_csv(df), config.output)
        if cells is not None:
            if config.output is None:
                logger.warning("Phase diagram CSV needs an output path; skipped")
            else:
                write_output(
                    to_csv(phase_diagram_frame(cells)),
                    _sidecar_path(config.output, ".phase.csv"),
                )
    else:
        report: dict[str, Any] = {
            "model": model_to_dict(p, build_trimer(p)),
            "rows": [
                {
                    "gamma": row.gamma,
                    "lambda0": complex_to_dict(row.lambda0),
                    "lambda_plus": complex_to_dict(row.lambda_plus),
                    "lambda_minus": complex_to_dict(row.lambda_minus),
                    "regime": row.regime.value,
                }
                for row in rows
            ],
            "exceptional_points": sidecar,
        }
        if cells is not None:
            report["phase_diagram"] = [cell.model_dump(mode="json") for cell in cells]
        write_json(report, config.output)

    if config.output is not None:
        write_json(sidecar, _sidecar_path(config.output, ".ep.json"))
    else:
        logger.info("No output path given; exceptional point sidecar not written")
    return df


def cospectral_report(
    config: RunConfig, p: Optional[TrimerParams], H: NetworkHamiltonian
) -> dict[str, Any]:
    if H.n < 2:
        raise ConfigError(
            f"Cospectrality needs at least 2 sites, got {H.n}", field="model"
        )
    reports = [
        is_cospectral(H, i, j, config.tol)
        for i in range(H.n)
        for j in range(i + 1, H.n)
    ]
    report: dict[str, Any] = {
        "model": model_to_dict(p, H),
        "pairs": [
            {
                "pair": list(r.pair),
                "cospectral": r.cospectral,
                "max_coeff_deviation": r.max_coeff_deviation,
                "threshold": r.threshold,
            }
            for r in reports
        ],
        "singlets": [
            singlet_report(H, r.pair).model_dump(include={"pair", "singlets", "disconnected"})
            for r in reports
            if r.cospectral
        ],
        "classes": cospectral_classes(H, config.tol),
    }
    for entry in report["singlets"]:
        entry["pair"] = list(entry["pair"])
    if H.n == 3:
        report["trimer_conditions"] = check_trimer_conditions(H, config.tol).model_dump()
    return report


def cmd_cospectral(config: RunConfig, console_display: bool = False) -> dict[str, Any]:
    """
    Cospectrality of every site pair, singlet sites of cospectral pairs and,
    for three sites, the latent-symmetry condition breakdown.
    """
    p, H = build_model(config)
    report = cospectral_report(config, p, H)
    if console_display:
        reports = [
            is_cospectral(H, i, j, config.tol)
            for i in range(H.n)
            for j in range(i + 1, H.n)
        ]
        ConsoleDisplay.display_cospectral(reports, report["classes"])
    if config.output_format == OutputFormat.CSV:
        df = pd.DataFrame(
            [
                (
                    entry["pair"][0],
                    entry["pair"][1],
                    entry["cospectral"],
                    entry["max_coeff_deviation"],
                    entry["threshold"],
                )
                for entry in report["pairs"]
            ],
            columns=["i", "j", "cospectral", "max_coeff_deviation", "threshold"],
        )
        write_output(to_csv(df), config.output)
    else:
        write_json(report, config.output)
    return report

