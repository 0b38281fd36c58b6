import math
from enum import Enum
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from typing_extensions import Annotated

from latentsym.utils.pydantic_utils import ArrayModel, as_complex_array


class TrimerParams(BaseModel):
    """
    Parametrization of the latent-symmetric trimer H(chi).

    Sites 1 and 2 carry Omega = omega + i gamma and are coupled by mu e^{+-2 chi};
    both couple to site 3 (Omega_3 = omega3 + i gamma3) with kappa e^{+-chi}.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    omega: Annotated[
        float, Field(description="Onsite frequency of sites 1 and 2", default=0.0)
    ]
    gamma: Annotated[
        float, Field(description="Gain/loss rate of sites 1 and 2", default=0.0)
    ]
    mu: Annotated[float, Field(description="Coupling between sites 1 and 2", gt=0)]
    kappa: Annotated[float, Field(description="Coupling to site 3", gt=0)]
    chi: Annotated[float, Field(description="Deformation parameter", default=0.0)]
    omega3: Annotated[
        float, Field(description="Onsite frequency of site 3", default=0.0)
    ]
    gamma3: Annotated[float, Field(description="Gain/loss rate of site 3", default=0.0)]

    @field_validator("*")
    @classmethod
    def _check_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("Trimer parameters must be finite")
        return value

    @property
    def Omega(self) -> complex:
        return complex(self.omega, self.gamma)

    @property
    def Omega3(self) -> complex:
        return complex(self.omega3, self.gamma3)

    @property
    def gamma_c(self) -> float:
        return math.sqrt(2.0) * self.kappa


class Regime(str, Enum):
    PT_UNBROKEN = "PT_UNBROKEN"
    EXCEPTIONAL_POINT = "EXCEPTIONAL_POINT"
    PT_BROKEN = "PT_BROKEN"
    NON_PT = "NON_PT"


class PhaseClassification(BaseModel):
    """
    Phase of the bright sector.
    """

    model_config = ConfigDict(frozen=True)

    regime: Annotated[Regime, Field(description="Bright-sector regime")]
    gamma_c: Annotated[float, Field(description="Critical gain sqrt(2) kappa")]
    discriminant: Annotated[
        complex, Field(description="Delta = [(Omega + mu - Omega_3)^2 + 8 kappa^2]^1/2")
    ]


class SectorDecomposition(ArrayModel):
    """
    Dark eigenpair plus the bright 2x2 block in the basis {|B>, |3>}.
    """

    dark_vector: Annotated[
        np.ndarray, Field(description="|D> = e^chi |1> - e^-chi |2>, unnormalized")
    ]
    dark_eigenvalue: Annotated[complex, Field(description="lambda_0 = Omega - mu")]
    bright_vector: Annotated[
        np.ndarray, Field(description="|B> = (e^chi |1> + e^-chi |2>) / sqrt 2")
    ]
    bright_block: Annotated[
        np.ndarray, Field(description="[[Omega + mu, sqrt2 kappa], [sqrt2 kappa, Omega_3]]")
    ]
    bright_eigenvalues: Annotated[
        tuple[complex, complex], Field(description="(lambda_+, lambda_-)")
    ]

    @field_validator("dark_vector", "bright_vector", mode="before")
    @classmethod
    def _coerce_vector(cls, value):
        return as_complex_array(value, ndim=1)

    @field_validator("bright_block", mode="before")
    @classmethod
    def _coerce_block(cls, value):
        return as_complex_array(value, ndim=2)

    @property
    def eigenvalues(self) -> list[complex]:
        return [self.dark_eigenvalue, *self.bright_eigenvalues]


class ClosedFormCoefficients(BaseModel):
    """
    Coefficients of the evolved bright state
    e^{-iat} [alpha(t) |B> + beta(t) |3>].
    """

    model_config = ConfigDict(frozen=True)

    eta: Annotated[complex, Field(description="eta = Delta / 2")]
    delta: Annotated[complex, Field(description="(Omega + mu - Omega_3) / 2")]
    a: Annotated[complex, Field(description="(Omega + mu + Omega_3) / 2")]
    coupling: Annotated[float, Field(description="sqrt(2) kappa")]

    def alpha(self, t: float) -> complex:
        eta_t = self.eta * t
        return complex(np.cos(eta_t) - 1j * self.delta / self.eta * np.sin(eta_t))

    def beta(self, t: float) -> complex:
        return complex(-1j * self.coupling * np.sin(self.eta * t) / self.eta)

    def phase(self, t: float) -> complex:
        return complex(np.exp(-1j * self.a * t))


class Occupations(NamedTuple):
    p1: float
    p2: float
    p3: float


class BrightClosedForm(NamedTuple):
    alpha: complex
    beta: complex
    p1: float
    p2: float
    p3: float


class BrightOscillation(BaseModel):
    """
    Bounded energy exchange of the bright sector below the PT transition.
    """

    model_config = ConfigDict(frozen=True)

    eta: Annotated[float, Field(description="eta = (2 kappa^2 - gamma^2)^1/2")]
    period: Annotated[float, Field(description="Period pi / eta of P3")]
    max_p3: Annotated[float, Field(description="Maximum of P3, 2 kappa^2 / eta^2")]
