import numpy as np
from loguru import logger

from latentsym.config import (
    DEFAULT_BISECTION_MAX_ITER,
    DEFAULT_COALESCENCE_OVERLAP,
    DEFAULT_TOL,
)
from latentsym.data_model.sweep import EPLocation
from latentsym.data_model.trimer import TrimerParams
from latentsym.exceptions import InputError, NumericError
from latentsym.numerics.eigen import eigen
from latentsym.numerics.matrix import overlap
from latentsym.sweep.gamma_sweep import params_at_gamma
from latentsym.trimer.model import build_trimer


def _critical(p: TrimerParams, gamma: float) -> float:
    # Re(Delta^2) / 4 with the reality conditions applied.
    return 2.0 * p.kappa**2 - gamma**2


def bright_overlap(p: TrimerParams) -> float:
    """
    Overlap of the two right eigenvectors of H whose eigenvalues lie closest to
    the bright-sector center omega + mu.
    """
    spectrum = eigen(build_trimer(p).matrix)
    center = p.omega + p.mu
    nearest = np.argsort(np.abs(spectrum.eigenvalues - center))[:2]
    vectors = spectrum.right_eigenvectors
    return overlap(vectors[:, nearest[0]], vectors[:, nearest[1]])


def locate_ep(
    p_base: TrimerParams,
    bracket: tuple[float, float],
    tol: float = DEFAULT_TOL,
) -> EPLocation:
    """
    Bisect for the gain where 2 kappa^2 - gamma^2 changes sign, with the reality
    conditions applied at every gain, and check that the bright eigenvectors
    coalesce there.

    Raises:
        InputError: if the bracket holds no sign change.
        NumericError: if bisection cannot reach tol in floating point.
    """
    lo, hi = sorted(float(g) for g in bracket)
    f_lo, f_hi = _critical(p_base, lo), _critical(p_base, hi)
    if f_lo * f_hi > 0:
        raise InputError(
            f"No exceptional point in gamma bracket ({lo}, {hi}): "
            f"2 kappa^2 - gamma^2 is {f_lo:.3e} and {f_hi:.3e}"
        )

    if f_lo == 0.0:
        hi = lo
    elif f_hi == 0.0:
        lo = hi
    gamma_c = 0.5 * (lo + hi)
    for step in range(DEFAULT_BISECTION_MAX_ITER):
        gamma_c = 0.5 * (lo + hi)
        f_mid = _critical(p_base, gamma_c)
        if (hi - lo <= tol and abs(f_mid) <= tol) or f_mid == 0.0:
            logger.debug(f"EP bisection converged after {step + 1} steps")
            break
        if gamma_c in (lo, hi):
            # bracket at floating point resolution
            break
        if f_mid * f_lo < 0:
            hi = gamma_c
        else:
            lo, f_lo = gamma_c, f_mid
    residual = abs(_critical(p_base, gamma_c))
    if residual > tol:
        raise NumericError(
            f"Bisection did not reach tol {tol:.3e}; residual {residual:.3e}",
            residuals=[residual],
        )

    max_overlap = bright_overlap(params_at_gamma(p_base, gamma_c))
    coalesced = max_overlap >= DEFAULT_COALESCENCE_OVERLAP
    if not coalesced:
        logger.warning(
            f"Bright eigenvectors at gamma = {gamma_c} have overlap {max_overlap}; "
            "expected coalescence"
        )
    return EPLocation(
        gamma_c=gamma_c,
        residual=residual,
        side_samples=(lo, hi),
        max_overlap=max_overlap,
        coalesced=coalesced,
    )
