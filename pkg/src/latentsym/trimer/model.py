import math

import numpy as np

from latentsym.data_model.dynamics import StateVector
from latentsym.data_model.network import NetworkHamiltonian, SiteSpec
from latentsym.data_model.trimer import TrimerParams
from latentsym.exceptions import InputError


def _check_params(p: TrimerParams) -> None:
    values = (p.omega, p.gamma, p.mu, p.kappa, p.chi, p.omega3, p.gamma3)
    if not all(math.isfinite(v) for v in values):
        raise InputError("Trimer parameters must be finite")
    if p.mu <= 0:
        raise InputError(f"mu must be positive, got {p.mu}")
    if p.kappa <= 0:
        raise InputError(f"kappa must be positive, got {p.kappa}")


def build_trimer(p: TrimerParams) -> NetworkHamiltonian:
    """
    The deformed trimer H(chi):

        [[Omega,          mu e^{2chi},  kappa e^{chi} ],
         [mu e^{-2chi},   Omega,        kappa e^{-chi}],
         [kappa e^{-chi}, kappa e^{chi}, Omega_3      ]]
    """
    _check_params(p)
    e1 = math.exp(p.chi)
    e2 = math.exp(2.0 * p.chi)
    couplings = np.array(
        [
            [0.0, p.mu * e2, p.kappa * e1],
            [p.mu / e2, 0.0, p.kappa / e1],
            [p.kappa / e1, p.kappa * e1, 0.0],
        ]
    )
    sites = [
        SiteSpec(omega=p.omega, gamma=p.gamma),
        SiteSpec(omega=p.omega, gamma=p.gamma),
        SiteSpec(omega=p.omega3, gamma=p.gamma3),
    ]
    return NetworkHamiltonian(sites=sites, couplings=couplings)


def gauge_transform(H: NetworkHamiltonian, chi: float) -> NetworkHamiltonian:
    """
    D H D^-1 with D = diag(e^chi, e^-chi, 1). Onsite energies are untouched and
    coupling (i, j) is scaled by d_i / d_j.
    """
    if H.n != 3:
        raise InputError(f"The trimer gauge acts on 3 sites, got {H.n}")
    d = np.array([math.exp(chi), math.exp(-chi), 1.0])
    return NetworkHamiltonian(
        sites=list(H.sites), couplings=H.couplings * d[:, None] / d[None, :]
    )


def apply_reality_conditions(p: TrimerParams) -> TrimerParams:
    """
    Set gamma3 = -gamma and omega3 = omega + mu, turning the bright block into a
    PT-symmetric dimer.
    """
    return p.model_copy(update={"gamma3": -p.gamma, "omega3": p.omega + p.mu})


def dark_state(p: TrimerParams, normalize: bool = False) -> StateVector:
    """
    |D> = e^chi |1> - e^-chi |2>.
    """
    state = StateVector(amplitudes=[math.exp(p.chi), -math.exp(-p.chi), 0.0])
    return state.normalized() if normalize else state


def bright_state(p: TrimerParams, normalize: bool = False) -> StateVector:
    """
    |B> = (e^chi |1> + e^-chi |2>) / sqrt 2. Its norm is cosh(2 chi)^1/2.
    """
    state = StateVector(
        amplitudes=[math.exp(p.chi) / math.sqrt(2.0), math.exp(-p.chi) / math.sqrt(2.0), 0.0]
    )
    return state.normalized() if normalize else state


def site_state(n: int, k: int) -> StateVector:
    """
    Single-site excitation |k> (0-based).
    """
    if not 0 <= k < n:
        raise InputError(f"Site {k} is out of range for {n} sites")
    amplitudes = np.zeros(n, dtype=np.complex128)
    amplitudes[k] = 1.0
    return StateVector(amplitudes=amplitudes)
