from pydantic import BaseModel, ConfigDict, Field
from typing_extensions import Annotated

from latentsym.data_model.trimer import Regime


class SweepRow(BaseModel):
    """
    Spectrum and regime at one gamma value.
    """

    model_config = ConfigDict(frozen=True)

    gamma: float
    lambda0: complex
    lambda_plus: complex
    lambda_minus: complex
    regime: Regime


class EPLocation(BaseModel):
    """
    A located exceptional point.
    """

    model_config = ConfigDict(frozen=True)

    gamma_c: Annotated[float, Field(description="Located critical gain")]
    residual: Annotated[
        float, Field(description="|2 kappa^2 - gamma_c^2| = |Delta|^2 / 4 at gamma_c")
    ]
    side_samples: Annotated[
        tuple[float, float], Field(description="Final bracket around gamma_c")
    ]
    max_overlap: Annotated[
        float, Field(description="Eigenvector overlap at gamma_c", default=0.0)
    ]
    coalesced: Annotated[
        bool, Field(description="Whether the bright eigenvectors coalesce", default=False)
    ]


class PhaseDiagramCell(BaseModel):
    """
    Regime at one (gamma, kappa) grid point.
    """

    model_config = ConfigDict(frozen=True)

    gamma: float
    kappa: float
    regime: Regime
    max_abs_im_bright: Annotated[
        float, Field(description="max(|Im lambda_+|, |Im lambda_-|)")
    ]
