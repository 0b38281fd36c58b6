from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from latentsym.config import DEFAULT_EP_TOL
from latentsym.data_model.sweep import PhaseDiagramCell, SweepRow
from latentsym.data_model.trimer import TrimerParams
from latentsym.exceptions import InputError
from latentsym.settings import settings
from latentsym.trimer.model import apply_reality_conditions
from latentsym.trimer.sectors import classify_phase, decompose


def params_at_gamma(p_base: TrimerParams, gamma: float) -> TrimerParams:
    """
    Copy of p_base at the given gain with gamma3 = -gamma and omega3 = omega + mu.
    """
    return apply_reality_conditions(p_base.model_copy(update={"gamma": float(gamma)}))


def _sweep_row(p_base: TrimerParams, gamma: float, tol: float) -> SweepRow:
    p = params_at_gamma(p_base, gamma)
    sectors = decompose(p)
    lambda_plus, lambda_minus = sectors.bright_eigenvalues
    return SweepRow(
        gamma=p.gamma,
        lambda0=sectors.dark_eigenvalue,
        lambda_plus=lambda_plus,
        lambda_minus=lambda_minus,
        regime=classify_phase(p, tol).regime,
    )


def relabel_by_continuity(rows: list[SweepRow]) -> list[SweepRow]:
    """
    Swap lambda_+ and lambda_- on a row when the swapped pair lies strictly
    closer to the previous row, so each branch is a continuous curve.
    """
    out: list[SweepRow] = []
    for row in rows:
        if out:
            prev = out[-1]
            keep = abs(row.lambda_plus - prev.lambda_plus) + abs(
                row.lambda_minus - prev.lambda_minus
            )
            swap = abs(row.lambda_minus - prev.lambda_plus) + abs(
                row.lambda_plus - prev.lambda_minus
            )
            if swap < keep:
                logger.debug(f"Relabeling bright branches at gamma = {row.gamma}")
                row = row.model_copy(
                    update={
                        "lambda_plus": row.lambda_minus,
                        "lambda_minus": row.lambda_plus,
                    }
                )
        out.append(row)
    return out


def gamma_sweep(
    p_base: TrimerParams,
    gamma_min: float,
    gamma_max: float,
    steps: int,
    tol: float = DEFAULT_EP_TOL,
    max_concurrency: Optional[int] = None,
) -> list[SweepRow]:
    """
    Spectrum and regime along a uniform gamma grid.

    The reality conditions are re-applied at every point, so the bright sector
    stays a PT dimer along the sweep. Rows are returned in ascending gamma.

    Args:
        p_base: Trimer parameters; gamma, gamma3 and omega3 are overwritten.
        gamma_min: First gain value.
        gamma_max: Last gain value, greater than gamma_min.
        steps: Number of gain values, at least 2.
        tol: Half-width of the EP band used by the phase classification.
        max_concurrency: Worker threads, `settings.max_concurrency` if None.

    Returns:
        One row per gain value.
    """
    if steps < 2:
        raise InputError(f"A sweep needs at least 2 steps, got {steps}")
    if not gamma_max > gamma_min:
        raise InputError(
            f"gamma_max ({gamma_max}) must be greater than gamma_min ({gamma_min})"
        )
    if max_concurrency is None:
        max_concurrency = settings.max_concurrency
    gammas = np.linspace(gamma_min, gamma_max, steps)
    logger.debug(f"Sweeping {steps} gamma values in [{gamma_min}, {gamma_max}]")

    with ThreadPoolExecutor(max_workers=max_concurrency) as executor:
        rows = list(
            executor.map(lambda gamma: _sweep_row(p_base, float(gamma), tol), gammas)
        )
    return relabel_by_continuity(rows)


def phase_diagram(
    p_base: TrimerParams,
    gammas: Sequence[float],
    kappas: Sequence[float],
    tol: float = DEFAULT_EP_TOL,
    max_concurrency: Optional[int] = None,
) -> list[PhaseDiagramCell]:
    """
    Regime and bright-sector growth rate on a (gamma, kappa) grid, gamma major.
    """
    if len(gammas) == 0 or len(kappas) == 0:
        raise InputError("Phase diagram needs at least one gamma and one kappa")
    if any(kappa <= 0 for kappa in kappas):
        raise InputError("kappa values must be positive")
    if max_concurrency is None:
        max_concurrency = settings.max_concurrency
    grid = [(float(gamma), float(kappa)) for gamma in gammas for kappa in kappas]

    def _cell(point: tuple[float, float]) -> PhaseDiagramCell:
        gamma, kappa = point
        p = params_at_gamma(p_base.model_copy(update={"kappa": kappa}), gamma)
        lambda_plus, lambda_minus = decompose(p).bright_eigenvalues
        return PhaseDiagramCell(
            gamma=gamma,
            kappa=kappa,
            regime=classify_phase(p, tol).regime,
            max_abs_im_bright=max(abs(lambda_plus.imag), abs(lambda_minus.imag)),
        )

    with ThreadPoolExecutor(max_workers=max_concurrency) as executor:
        return list(executor.map(_cell, grid))
