import math

import numpy as np

from latentsym.config import DEFAULT_EP_TOL
from latentsym.data_model.dynamics import StateVector
from latentsym.data_model.trimer import (
    BrightOscillation,
    PhaseClassification,
    Regime,
    SectorDecomposition,
    TrimerParams,
)
from latentsym.exceptions import InputError
from latentsym.trimer.model import _check_params, bright_state, dark_state
from latentsym.utils.utils import principal_sqrt

SQRT2 = math.sqrt(2.0)


def discriminant(p: TrimerParams) -> complex:
    """
    Delta = [(Omega + mu - Omega_3)^2 + 8 kappa^2]^1/2, principal branch.
    """
    detuning = p.Omega + p.mu - p.Omega3
    return principal_sqrt(detuning * detuning + 8.0 * p.kappa**2)


def decompose(p: TrimerParams) -> SectorDecomposition:
    """
    Split the trimer into the dark eigenpair and the bright 2x2 block acting on
    span{|B>, |3>}.
    """
    _check_params(p)
    coupling = SQRT2 * p.kappa
    delta = discriminant(p)
    center = p.Omega + p.Omega3 + p.mu
    return SectorDecomposition(
        dark_vector=dark_state(p).amplitudes,
        dark_eigenvalue=p.Omega - p.mu,
        bright_vector=bright_state(p).amplitudes,
        bright_block=[[p.Omega + p.mu, coupling], [coupling, p.Omega3]],
        bright_eigenvalues=((center + delta) / 2.0, (center - delta) / 2.0),
    )


def satisfies_reality_conditions(p: TrimerParams, tol: float = DEFAULT_EP_TOL) -> bool:
    return abs(p.gamma3 + p.gamma) <= tol and abs(p.omega3 - (p.omega + p.mu)) <= tol


def classify_phase(p: TrimerParams, tol: float = DEFAULT_EP_TOL) -> PhaseClassification:
    """
    Classify the bright sector: NON_PT unless gamma3 = -gamma and
    omega3 = omega + mu, otherwise by |gamma| against gamma_c = sqrt(2) kappa
    with an EP band of half-width tol.
    """
    gamma_c = p.gamma_c
    if not satisfies_reality_conditions(p, tol):
        regime = Regime.NON_PT
    elif abs(abs(p.gamma) - gamma_c) <= tol:
        regime = Regime.EXCEPTIONAL_POINT
    elif abs(p.gamma) < gamma_c:
        regime = Regime.PT_UNBROKEN
    else:
        regime = Regime.PT_BROKEN
    return PhaseClassification(
        regime=regime, gamma_c=gamma_c, discriminant=discriminant(p)
    )


def _require_ep(p: TrimerParams, tol: float) -> None:
    phase = classify_phase(p, tol)
    if phase.regime != Regime.EXCEPTIONAL_POINT:
        raise InputError(
            f"Parameters are not at an exceptional point: regime {phase.regime.value}, "
            f"|gamma| = {abs(p.gamma)}, gamma_c = {phase.gamma_c}"
        )


def nilpotent_part(p: TrimerParams, tol: float = DEFAULT_EP_TOL) -> np.ndarray:
    """
    N with bright block = (omega + mu) I + N at the EP, i.e.
    [[i gamma, sqrt2 kappa], [sqrt2 kappa, -i gamma]]. For gamma = +gamma_c this
    is gamma_c [[i, 1], [1, -i]]; for gamma = -gamma_c the signs of i flip.
    """
    _require_ep(p, tol)
    coupling = SQRT2 * p.kappa
    return np.array(
        [[1j * p.gamma, coupling], [coupling, -1j * p.gamma]], dtype=np.complex128
    )


def coalesced_vector(p: TrimerParams, tol: float = DEFAULT_EP_TOL) -> StateVector:
    """
    The single right eigenvector of the bright sector at the EP,
    |B> - i sign(gamma) |3>.
    """
    _require_ep(p, tol)
    s = 1.0 if p.gamma > 0 else -1.0
    amplitudes = np.array(bright_state(p).amplitudes)
    amplitudes[2] = -1j * s
    return StateVector(amplitudes=amplitudes)


def bright_oscillation(p: TrimerParams, tol: float = DEFAULT_EP_TOL) -> BrightOscillation:
    """
    Frequency, period and amplitude of P3 in the PT-unbroken regime.
    """
    phase = classify_phase(p, tol)
    if phase.regime != Regime.PT_UNBROKEN:
        raise InputError(
            f"Bounded oscillation needs the PT_UNBROKEN regime, got {phase.regime.value}"
        )
    eta = phase.discriminant.real / 2.0
    return BrightOscillation(
        eta=eta, period=math.pi / eta, max_p3=2.0 * p.kappa**2 / eta**2
    )
