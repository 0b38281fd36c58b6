import numpy as np
import numpy.polynomial.polynomial as npoly
from pydantic import Field, field_validator, model_validator
from typing_extensions import Annotated

from latentsym.utils.pydantic_utils import ArrayModel, as_complex_array

# Dense square complex128 array. Kept as a plain ndarray so that all numerics
# stay vectorized.
ComplexMatrix = np.ndarray


class Polynomial(ArrayModel):
    """
    Polynomial with complex coefficients ordered from the constant term to the
    leading term.
    """

    coeffs: Annotated[
        np.ndarray,
        Field(description="Coefficients, constant term first, leading term last"),
    ]
    monic: Annotated[
        bool,
        Field(description="Whether the leading coefficient is exactly 1", default=False),
    ]

    @field_validator("coeffs", mode="before")
    @classmethod
    def _coerce_coeffs(cls, value):
        arr = np.array(as_complex_array(value, ndim=1))
        nonzero = np.flatnonzero(arr)
        if nonzero.size == 0:
            raise ValueError("Polynomial must have a nonzero coefficient")
        arr = arr[: nonzero[-1] + 1]
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def _check_monic(self) -> "Polynomial":
        if self.monic and self.coeffs[-1] != 1:
            raise ValueError("Monic polynomial must have leading coefficient 1")
        return self

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return npoly.polyval(z, self.coeffs)

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            raise ValueError("Constant polynomial has no nonzero derivative")
        return Polynomial(coeffs=npoly.polyder(self.coeffs))

    def to_monic(self) -> "Polynomial":
        """
        Divide by the leading coefficient.
        """
        coeffs = np.array(self.coeffs / self.coeffs[-1])
        coeffs[-1] = 1.0
        return Polynomial(coeffs=coeffs, monic=True)

    def scale_at(self, z: complex) -> float:
        """
        Sum of |c_k| max(1, |z|)^k, the magnitude of p near z including the
        rounding floor of evaluating it.
        """
        return float(npoly.polyval(max(abs(z), 1.0), np.abs(self.coeffs)))

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        coeffs = np.array(npoly.polyfromroots(np.asarray(roots, dtype=np.complex128)))
        coeffs[-1] = 1.0
        return cls(coeffs=coeffs, monic=True)


class SpectralDecomposition(ArrayModel):
    """
    Eigenvalues and right eigenvectors of a small dense matrix.
    """

    eigenvalues: Annotated[
        np.ndarray, Field(description="Eigenvalues with multiplicity")
    ]
    right_eigenvectors: Annotated[
        np.ndarray, Field(description="Unit-norm right eigenvectors as columns")
    ]
    defective: Annotated[
        bool, Field(description="Whether the matrix lacks a complete eigenbasis")
    ]
    eigenvector_condition: Annotated[
        float, Field(description="2-norm condition number of the eigenvector matrix")
    ]
    max_overlap: Annotated[
        float,
        Field(
            description="Largest normalized overlap between two distinct eigenvectors",
            default=0.0,
        ),
    ]
    multiplicities: Annotated[
        list[int],
        Field(
            description="Algebraic multiplicity of each eigenvalue cluster",
            default_factory=list,
        ),
    ]

    @field_validator("eigenvalues", mode="before")
    @classmethod
    def _coerce_eigenvalues(cls, value):
        return as_complex_array(value, ndim=1)

    @field_validator("right_eigenvectors", mode="before")
    @classmethod
    def _coerce_vectors(cls, value):
        return as_complex_array(value, ndim=2)

    @property
    def n(self) -> int:
        return len(self.eigenvalues)
