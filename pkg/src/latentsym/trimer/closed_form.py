"""
Exact time evolution of the trimer from its dark and bright states.

All occupations follow the unnormalized |D> and |B> conventions, so at t = 0
the bright state gives (e^{2chi}/2, e^{-2chi}/2, 0) and the dark state gives
(e^{2chi}, e^{-2chi}, 0).
"""

import cmath
import functools
import math

import numpy as np
from loguru import logger

from latentsym.config import DEFAULT_EP_TOL
from latentsym.data_model.dynamics import StateVector
from latentsym.data_model.trimer import (
    BrightClosedForm,
    ClosedFormCoefficients,
    Occupations,
    Regime,
    TrimerParams,
)
from latentsym.exceptions import InputError, NumericError
from latentsym.trimer.model import _check_params
from latentsym.trimer.sectors import SQRT2, _require_ep, classify_phase, discriminant


def _finite_or_raise(func):
    """
    Raise NumericError instead of OverflowError, or when an occupation comes
    out infinite, for amplifying evolutions evaluated at large t.
    """

    @functools.wraps(func)
    def wrapper(p, t, *args, **kwargs):
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                result = func(p, t, *args, **kwargs)
        except OverflowError as e:
            raise NumericError(f"{func.__name__} overflowed at t = {t}: {e}") from e
        if isinstance(result, tuple) and not all(
            cmath.isfinite(value) for value in result
        ):
            raise NumericError(f"{func.__name__} is not finite at t = {t}")
        return result

    return wrapper


def closed_form_coefficients(p: TrimerParams) -> ClosedFormCoefficients:
    _check_params(p)
    return ClosedFormCoefficients(
        eta=discriminant(p) / 2.0,
        delta=(p.Omega + p.mu - p.Omega3) / 2.0,
        a=(p.Omega + p.mu + p.Omega3) / 2.0,
        coupling=SQRT2 * p.kappa,
    )


@_finite_or_raise
def closed_form_dark(p: TrimerParams, t: float) -> Occupations:
    """
    Occupations of e^{-iHt}|D>: P1 = e^{2 gamma t} e^{2 chi},
    P2 = e^{2 gamma t} e^{-2 chi}, P3 = 0.
    """
    _check_params(p)
    growth = math.exp(2.0 * p.gamma * t)
    return Occupations(
        p1=growth * math.exp(2.0 * p.chi), p2=growth * math.exp(-2.0 * p.chi), p3=0.0
    )


@_finite_or_raise
def closed_form_dark_state(p: TrimerParams, t: float) -> StateVector:
    """
    e^{-i(Omega - mu)t} (e^chi, -e^-chi, 0).
    """
    _check_params(p)
    phase = cmath.exp(-1j * (p.Omega - p.mu) * t)
    return StateVector(
        amplitudes=[phase * math.exp(p.chi), -phase * math.exp(-p.chi), 0.0]
    )


def _bright_coefficients(
    p: TrimerParams, tol: float
) -> ClosedFormCoefficients:
    coeffs = closed_form_coefficients(p)
    regime = classify_phase(p, tol).regime
    if regime == Regime.EXCEPTIONAL_POINT or abs(coeffs.eta) <= tol:
        raise InputError(
            f"eta = {coeffs.eta} vanishes at the exceptional point; use closed_form_ep"
        )
    if abs(coeffs.eta) < 1e3 * tol:
        logger.warning(f"Closed form evaluated close to the EP, |eta| = {abs(coeffs.eta)}")
    return coeffs


@_finite_or_raise
def closed_form_bright(
    p: TrimerParams, t: float, tol: float = DEFAULT_EP_TOL
) -> BrightClosedForm:
    """
    Bright-sector evolution e^{-iat}[alpha(t)|B> + beta(t)|3>] with

        alpha(t) = cos(eta t) - (i delta / eta) sin(eta t)
        beta(t)  = -i sqrt2 kappa sin(eta t) / eta

    Complex eta (PT-broken or non-PT blocks) goes through complex cos/sin.
    Occupations carry |e^{-iat}|^2 = e^{2 Im(a) t}, which is 1 whenever the
    reality conditions hold.
    """
    coeffs = _bright_coefficients(p, tol)
    alpha = coeffs.alpha(t)
    beta = coeffs.beta(t)
    growth = math.exp(2.0 * coeffs.a.imag * t)
    bright = growth * abs(alpha) ** 2 / 2.0
    return BrightClosedForm(
        alpha=alpha,
        beta=beta,
        p1=math.exp(2.0 * p.chi) * bright,
        p2=math.exp(-2.0 * p.chi) * bright,
        p3=growth * abs(beta) ** 2,
    )


@_finite_or_raise
def closed_form_bright_state(
    p: TrimerParams, t: float, tol: float = DEFAULT_EP_TOL
) -> StateVector:
    coeffs = _bright_coefficients(p, tol)
    phase = coeffs.phase(t)
    alpha = coeffs.alpha(t) / SQRT2
    return StateVector(
        amplitudes=phase
        * np.array(
            [alpha * math.exp(p.chi), alpha * math.exp(-p.chi), coeffs.beta(t)]
        )
    )


def _ep_amplitudes(p: TrimerParams, t: float) -> tuple[complex, complex]:
    # Limit eta -> 0 of alpha and beta with delta = i gamma.
    s = 1.0 if p.gamma > 0 else -1.0
    alpha = 1.0 + s * p.gamma_c * t
    beta = -1j * p.gamma_c * t
    return alpha, beta


@_finite_or_raise
def closed_form_ep(
    p: TrimerParams, t: float, tol: float = DEFAULT_EP_TOL
) -> Occupations:
    """
    Polynomial growth at the exceptional point gamma = +-gamma_c:
    P1 = e^{2chi}(1 + gamma t)^2 / 2, P2 = e^{-2chi}(1 + gamma t)^2 / 2,
    P3 = gamma_c^2 t^2.
    """
    _require_ep(p, tol)
    alpha, beta = _ep_amplitudes(p, t)
    bright = abs(alpha) ** 2 / 2.0
    return Occupations(
        p1=math.exp(2.0 * p.chi) * bright,
        p2=math.exp(-2.0 * p.chi) * bright,
        p3=abs(beta) ** 2,
    )


@_finite_or_raise
def closed_form_ep_state(
    p: TrimerParams, t: float, tol: float = DEFAULT_EP_TOL
) -> StateVector:
    _require_ep(p, tol)
    alpha, beta = _ep_amplitudes(p, t)
    phase = cmath.exp(-1j * (p.omega + p.mu) * t)
    alpha /= SQRT2
    return StateVector(
        amplitudes=[
            phase * alpha * math.exp(p.chi),
            phase * alpha * math.exp(-p.chi),
            phase * beta,
        ]
    )
