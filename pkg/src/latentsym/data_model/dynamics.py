import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing_extensions import Annotated

from latentsym.utils.pydantic_utils import ArrayModel, as_complex_array


class StateVector(ArrayModel):
    """
    Site amplitudes <j|psi>.
    """

    amplitudes: Annotated[np.ndarray, Field(description="Complex site amplitudes")]

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _coerce_amplitudes(cls, value):
        return as_complex_array(value, ndim=1)

    @property
    def n(self) -> int:
        return len(self.amplitudes)

    def normalized(self) -> "StateVector":
        norm = np.linalg.norm(self.amplitudes)
        if norm == 0.0:
            raise ValueError("Cannot normalize the zero vector")
        return StateVector(amplitudes=self.amplitudes / norm)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return np.array_equal(self.amplitudes, other.amplitudes)


class TrajectorySample(ArrayModel):
    """
    State and local occupations at one time.
    """

    t: Annotated[float, Field(description="Time in inverse energy units")]
    amplitudes: Annotated[StateVector, Field(description="Evolved state")]
    occupations: Annotated[list[float], Field(description="P_j = |<j|psi(t)>|^2")]


class TimeGrid(BaseModel):
    """
    Uniform time grid including both endpoints.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    t_start: Annotated[float, Field(description="First time", default=0.0)]
    t_end: Annotated[float, Field(description="Last time")]
    steps: Annotated[int, Field(description="Number of grid points", ge=2)]

    @model_validator(mode="after")
    def _check_order(self) -> "TimeGrid":
        if not self.t_end > self.t_start:
            raise ValueError(
                f"t_end ({self.t_end}) must be greater than t_start ({self.t_start})"
            )
        return self

    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.steps)
