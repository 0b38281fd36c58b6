from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from loguru import logger

from latentsym.config import DEFAULT_BISECTION_MAX_ITER
from latentsym.data_model.dynamics import StateVector, TimeGrid, TrajectorySample
from latentsym.data_model.network import NetworkHamiltonian
from latentsym.exceptions import InputError, NumericError
from latentsym.numerics.expm import expm
from latentsym.settings import settings


def _evolve(H: np.ndarray, psi: np.ndarray, t: float) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore"):
        out = expm(-1j * t * H) @ psi
    if not np.all(np.isfinite(out)):
        raise NumericError(f"Propagated state is not finite at t = {t}")
    return out


def _last_finite_t(H: np.ndarray, psi: np.ndarray, t: float) -> float:
    """
    Bisect on [0, t] for the largest time whose propagated state is finite.
    """
    good, bad = 0.0, t
    for _ in range(DEFAULT_BISECTION_MAX_ITER):
        mid = 0.5 * (good + bad)
        if mid in (good, bad):
            break
        try:
            _evolve(H, psi, mid)
            good = mid
        except NumericError:
            bad = mid
    return good


def propagate(H: NetworkHamiltonian, psi0: StateVector, t: float) -> StateVector:
    """
    Evolve psi0 to time t with the exact propagator e^{-iHt}.

    Args:
        H: Network Hamiltonian, possibly non-Hermitian or defective.
        psi0: Initial amplitudes, one per site.
        t: Time in inverse energy units.

    Returns:
        The state e^{-iHt} psi0.

    Raises:
        InputError: if the state dimension does not match H.
        NumericError: if the propagated state leaves the floating point range.
            `last_finite_t` holds the largest time that could be represented.
    """
    if psi0.n != H.n:
        raise InputError(
            f"State of dimension {psi0.n} does not match Hamiltonian of dimension {H.n}"
        )
    if not np.isfinite(t):
        raise InputError(f"Time must be finite, got {t}")
    if t == 0.0:
        return psi0
    mat = H.matrix
    psi = np.asarray(psi0.amplitudes)
    try:
        out = _evolve(mat, psi, t)
    except NumericError as e:
        last_t = _last_finite_t(mat, psi, t)
        logger.warning(f"Propagation overflowed at t = {t}; last finite t = {last_t}")
        raise NumericError(
            f"{e}; largest representable time is t = {last_t:.16e}",
            last_finite_t=last_t,
        ) from e
    return StateVector(amplitudes=out)


def occupations(psi: StateVector) -> list[float]:
    """
    Local occupations P_j = |<j|psi>|^2.
    """
    amplitudes = psi.amplitudes
    return (amplitudes.real**2 + amplitudes.imag**2).tolist()


def trajectory(
    H: NetworkHamiltonian,
    psi0: StateVector,
    grid: TimeGrid,
    max_concurrency: Optional[int] = None,
) -> list[TrajectorySample]:
    """
    Sample the evolution of psi0 on a time grid. Every sample is propagated
    from t = 0 so errors do not accumulate along the grid; samples come back
    in grid order.
    """
    if max_concurrency is None:
        max_concurrency = settings.max_concurrency
    if psi0.n != H.n:
        raise InputError(
            f"State of dimension {psi0.n} does not match Hamiltonian of dimension {H.n}"
        )
    times = grid.times()
    logger.debug(
        f"Trajectory over [{grid.t_start}, {grid.t_end}] with {grid.steps} samples "
        f"on {max_concurrency} workers"
    )

    def _sample(t: float) -> TrajectorySample:
        psi = propagate(H, psi0, float(t))
        return TrajectorySample(t=float(t), amplitudes=psi, occupations=occupations(psi))

    with ThreadPoolExecutor(max_workers=max_concurrency) as executor:
        return list(executor.map(_sample, times))
