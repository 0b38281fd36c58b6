from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing_extensions import Annotated

from latentsym.data_model.numerics import Polynomial
from latentsym.utils.pydantic_utils import ArrayModel


class SiteSpec(BaseModel):
    """
    A site with complex onsite energy omega + i gamma.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    omega: Annotated[
        float, Field(description="Onsite frequency", allow_inf_nan=False)
    ]
    gamma: Annotated[
        float,
        Field(
            description="Gain (> 0) or loss (< 0) rate", default=0.0, allow_inf_nan=False
        ),
    ]

    @property
    def energy(self) -> complex:
        return complex(self.omega, self.gamma)


class CouplingSpec(BaseModel):
    """
    A directed real coupling g from `source` to `target`, i.e. the matrix entry
    (source, target). Serialized with the keys "from" and "to".
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    source: Annotated[int, Field(alias="from", ge=0, description="Row index")]
    target: Annotated[int, Field(alias="to", ge=0, description="Column index")]
    g: Annotated[float, Field(description="Coupling amplitude", allow_inf_nan=False)]

    @model_validator(mode="after")
    def _check_not_self(self) -> "CouplingSpec":
        if self.source == self.target:
            raise ValueError(f"Self-coupling on site {self.source} is not allowed")
        return self


class NetworkHamiltonian(ArrayModel):
    """
    Tight-binding Hamiltonian: complex onsite energies on the diagonal and real
    couplings off the diagonal.
    """

    sites: Annotated[list[SiteSpec], Field(description="Onsite energies", min_length=1)]
    couplings: Annotated[
        np.ndarray, Field(description="Real n x n coupling array with zero diagonal")
    ]

    @field_validator("couplings", mode="before")
    @classmethod
    def _coerce_couplings(cls, value):
        arr = np.array(value, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"Coupling array must be square, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Couplings must be finite")
        if np.any(np.diag(arr) != 0.0):
            raise ValueError("Coupling array must have a zero diagonal")
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def _check_shape(self) -> "NetworkHamiltonian":
        if self.couplings.shape[0] != len(self.sites):
            raise ValueError(
                f"Coupling array of size {self.couplings.shape[0]} does not match "
                f"{len(self.sites)} sites"
            )
        return self

    @property
    def n(self) -> int:
        return len(self.sites)

    @property
    def matrix(self) -> np.ndarray:
        """
        Complex matrix form: (j, j) = omega_j + i gamma_j, (i, j) = g_ij.
        """
        mat = self.couplings.astype(np.complex128)
        mat[np.diag_indices(self.n)] = [site.energy for site in self.sites]
        return mat

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NetworkHamiltonian):
            return NotImplemented
        return self.sites == other.sites and np.array_equal(
            self.couplings, other.couplings
        )


class CospectralReport(BaseModel):
    """
    Comparison of the characteristic polynomials of two vertex-deleted subgraphs.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    pair: Annotated[tuple[int, int], Field(description="The compared site pair")]
    poly_i: Annotated[Polynomial, Field(description="char poly of H without site i")]
    poly_j: Annotated[Polynomial, Field(description="char poly of H without site j")]
    max_coeff_deviation: Annotated[
        float, Field(description="Largest coefficient-wise absolute deviation")
    ]
    threshold: Annotated[
        float, Field(description="Scaled tolerance the deviation was compared with")
    ]
    cospectral: Annotated[bool, Field(description="Verdict")]


class TrimerConditions(BaseModel):
    """
    Breakdown of the trimer cospectrality conditions for sites 0 and 1.
    """

    model_config = ConfigDict(frozen=True)

    equal_onsite: Annotated[
        bool, Field(description="omega_1 = omega_2 and gamma_1 = gamma_2")
    ]
    product_match: Annotated[bool, Field(description="g13 g31 = g23 g32")]
    latent_symmetric: Annotated[
        bool,
        Field(
            description="Sites 1 and 2 are cospectral, which away from the "
            "tolerance boundary means both conditions hold"
        ),
    ]
    onsite_deviation: Annotated[
        float, Field(description="|Omega_1 - Omega_2|", default=0.0)
    ]
    product_deviation: Annotated[
        float, Field(description="|g13 g31 - g23 g32|", default=0.0)
    ]
    nondegenerate_spectrum: Annotated[
        Optional[bool],
        Field(
            description="Whether the three eigenvalues are pairwise distinct",
            default=None,
        ),
    ]


class SingletReport(BaseModel):
    """
    Singlet sites of a cospectral pair on the undirected support graph.
    """

    model_config = ConfigDict(frozen=True)

    pair: Annotated[tuple[int, int], Field(description="The cospectral pair")]
    singlets: Annotated[
        list[int], Field(description="Sites equidistant from both members")
    ]
    disconnected: Annotated[
        list[int],
        Field(
            description="Sites unreachable from the pair, excluded from singlets",
            default_factory=list,
        ),
    ]
    distances: Annotated[
        dict[int, tuple[float, float]],
        Field(
            description="Graph distance of each other site to (i, j), inf if unreachable",
            default_factory=dict,
        ),
    ]

