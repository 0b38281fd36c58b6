import re
from enum import Enum
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing_extensions import Annotated

from latentsym.config import DEFAULT_STEPS, DEFAULT_T_END, DEFAULT_T_START, DEFAULT_TOL
from latentsym.data_model.dynamics import TimeGrid
from latentsym.data_model.network import CouplingSpec, SiteSpec
from latentsym.data_model.trimer import TrimerParams
from latentsym.exceptions import ConfigError

SITE_STATE_PATTERN = re.compile(r"^site:(\d+)$")

Auto = Literal["auto"]


class Command(str, Enum):
    SPECTRUM = "spectrum"
    EVOLVE = "evolve"
    SWEEP = "sweep"
    COSPECTRAL = "cospectral"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class TrimerModelConfig(BaseModel):
    """
    Trimer parameters as written in a config file. "auto" for omega3 or gamma3
    applies the reality conditions omega3 = omega + mu, gamma3 = -gamma.
    """

    model_config = ConfigDict(extra="forbid")

    omega: Annotated[float, Field(description="Onsite frequency of sites 1 and 2", default=0.0)]
    gamma: Annotated[float, Field(description="Gain/loss rate of sites 1 and 2", default=0.0)]
    mu: Annotated[float, Field(description="Coupling between sites 1 and 2", gt=0)]
    kappa: Annotated[float, Field(description="Coupling to site 3", gt=0)]
    chi: Annotated[float, Field(description="Deformation parameter", default=0.0)]
    omega3: Annotated[
        Union[float, Auto],
        Field(description="Onsite frequency of site 3 or 'auto'", default="auto"),
    ]
    gamma3: Annotated[
        Union[float, Auto],
        Field(description="Gain/loss rate of site 3 or 'auto'", default="auto"),
    ]

    def to_params(self) -> TrimerParams:
        omega3 = self.omega + self.mu if self.omega3 == "auto" else self.omega3
        gamma3 = -self.gamma if self.gamma3 == "auto" else self.gamma3
        return TrimerParams(
            omega=self.omega,
            gamma=self.gamma,
            mu=self.mu,
            kappa=self.kappa,
            chi=self.chi,
            omega3=omega3,
            gamma3=gamma3,
        )


class NetworkModelConfig(BaseModel):
    """
    Raw network: sites with onsite energies and directed couplings, 0-based.
    """

    model_config = ConfigDict(extra="forbid")

    sites: Annotated[list[SiteSpec], Field(description="Onsite energies", min_length=1)]
    couplings: Annotated[
        list[CouplingSpec], Field(description="Directed couplings", default_factory=list)
    ]


class ModelConfig(BaseModel):
    """
    Exactly one of `trimer` and `network`.
    """

    model_config = ConfigDict(extra="forbid")

    trimer: Annotated[
        Optional[TrimerModelConfig], Field(description="Trimer parameters", default=None)
    ]
    network: Annotated[
        Optional[NetworkModelConfig], Field(description="Raw network", default=None)
    ]

    @model_validator(mode="after")
    def _check_exactly_one(self) -> "ModelConfig":
        if (self.trimer is None) == (self.network is None):
            raise ValueError("Exactly one of 'trimer' and 'network' must be given")
        return self

    @property
    def is_trimer(self) -> bool:
        return self.trimer is not None


class SweepRange(BaseModel):
    model_config = ConfigDict(extra="forbid")

    gamma_min: Annotated[float, Field(description="First gain value")]
    gamma_max: Annotated[float, Field(description="Last gain value")]
    steps: Annotated[int, Field(description="Number of gain values", ge=2)]

    @model_validator(mode="before")
    @classmethod
    def _from_sequence(cls, value: Any) -> Any:
        if isinstance(value, (list, tuple)):
            if len(value) != 3:
                raise ValueError("sweep_range must be [gamma_min, gamma_max, steps]")
            return {"gamma_min": value[0], "gamma_max": value[1], "steps": value[2]}
        return value

    @model_validator(mode="after")
    def _check_order(self) -> "SweepRange":
        if not self.gamma_max > self.gamma_min:
            raise ValueError(
                f"gamma_max ({self.gamma_max}) must be greater than gamma_min ({self.gamma_min})"
            )
        return self


def _to_complex(value: Any) -> Any:
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return complex(value["re"], value["im"])
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(value[0], value[1])
    return value


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: Annotated[Command, Field(description="The analysis to run")]
    model: Annotated[ModelConfig, Field(description="Trimer parameters or raw network")]
    initial_state: Annotated[
        Optional[Union[str, list[complex]]],
        Field(
            description="'dark', 'bright', 'site:<k>' (0-based) or explicit amplitudes",
            default=None,
        ),
    ]
    grid: Annotated[
        TimeGrid,
        Field(
            description="Time grid for evolve",
            default_factory=lambda: TimeGrid(
                t_start=DEFAULT_T_START, t_end=DEFAULT_T_END, steps=DEFAULT_STEPS
            ),
        ),
    ]
    sweep_range: Annotated[
        Optional[SweepRange],
        Field(description="[gamma_min, gamma_max, steps] for sweep", default=None),
    ]
    kappa_values: Annotated[
        Optional[list[Annotated[float, Field(gt=0)]]],
        Field(
            description="kappa values for an additional (gamma, kappa) phase diagram",
            default=None,
        ),
    ]
    output: Annotated[
        Optional[str],
        Field(description="Output file; standard output if not given", default=None),
    ]
    format: Annotated[
        Optional[OutputFormat],
        Field(
            description="Output format; json for spectrum/cospectral, csv otherwise",
            default=None,
        ),
    ]
    tol: Annotated[
        float, Field(description="Comparison tolerance", default=DEFAULT_TOL, gt=0)
    ]
    normalize: Annotated[
        bool,
        Field(description="Normalize the initial state", default=False),
    ]

    @field_validator("initial_state", mode="before")
    @classmethod
    def _coerce_initial_state(cls, value: Any) -> Any:
        if isinstance(value, list):
            return [_to_complex(v) for v in value]
        return value

    @field_validator("initial_state")
    @classmethod
    def _check_initial_state(cls, value: Any) -> Any:
        if isinstance(value, str) and value not in ("dark", "bright"):
            if SITE_STATE_PATTERN.match(value) is None:
                raise ValueError(
                    f"Unknown initial state '{value}'; expected 'dark', 'bright' or 'site:<k>'"
                )
        if isinstance(value, list) and len(value) == 0:
            raise ValueError("Explicit initial state must not be empty")
        return value

    def validate_for_command(self) -> None:
        """
        Check that the config carries what its command needs.
        """
        if self.initial_state in ("dark", "bright") and not self.model.is_trimer:
            raise ConfigError(
                f"Initial state '{self.initial_state}' requires a trimer model",
                field="initial_state",
            )
        if self.command == Command.EVOLVE and self.initial_state is None:
            raise ConfigError("evolve requires an initial_state", field="initial_state")
        if self.command == Command.SWEEP:
            if self.sweep_range is None:
                raise ConfigError("sweep requires a sweep_range", field="sweep_range")
            if not self.model.is_trimer:
                raise ConfigError("sweep requires a trimer model", field="model.trimer")

    @property
    def output_format(self) -> OutputFormat:
        if self.format is not None:
            return self.format
        if self.command in (Command.SPECTRUM, Command.COSPECTRAL):
            return OutputFormat.JSON
        return OutputFormat.CSV
