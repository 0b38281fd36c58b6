import math
import sys
from pathlib import Path
from typing import Callable

# Add src directory to Python path for absolute imports
src_path = Path(__file__).parent.parent / "src"
if str(src_path) not in sys.path:
    sys.path.insert(0, str(src_path))

import numpy as np
import pytest

from latentsym.data_model.trimer import TrimerParams
from latentsym.trimer import apply_reality_conditions

KAPPA_UNIT_EP = 1.0 / math.sqrt(2.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def unbroken_params() -> TrimerParams:
    """omega = 0, mu = 1, kappa = 1/sqrt2, gamma = 1/2, chi = 0, reality conditions applied"""
    return apply_reality_conditions(
        TrimerParams(omega=0.0, gamma=0.5, mu=1.0, kappa=KAPPA_UNIT_EP, chi=0.0)
    )


@pytest.fixture
def ep_params() -> TrimerParams:
    """The exceptional point gamma = gamma_c = 1 of the same trimer"""
    return apply_reality_conditions(
        TrimerParams(omega=0.0, gamma=1.0, mu=1.0, kappa=KAPPA_UNIT_EP, chi=0.0)
    )


@pytest.fixture
def random_params(rng) -> Callable[..., TrimerParams]:
    """
    Draw trimer parameters with omega, gamma in [-2, 2], mu, kappa in (0, 2],
    chi in [-1, 1] and arbitrary omega3, gamma3.
    """

    def _draw(reality: bool = False, **ranges) -> TrimerParams:
        def _uniform(name: str, lo: float, hi: float) -> float:
            lo, hi = ranges.get(name, (lo, hi))
            return float(rng.uniform(lo, hi))

        p = TrimerParams(
            omega=_uniform("omega", -2.0, 2.0),
            gamma=_uniform("gamma", -2.0, 2.0),
            mu=_uniform("mu", 0.05, 2.0),
            kappa=_uniform("kappa", 0.05, 2.0),
            chi=_uniform("chi", -1.0, 1.0),
            omega3=_uniform("omega3", -2.0, 2.0),
            gamma3=_uniform("gamma3", -2.0, 2.0),
        )
        return apply_reality_conditions(p) if reality else p

    return _draw
