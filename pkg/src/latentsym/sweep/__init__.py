from latentsym.sweep.exceptional_point import bright_overlap, locate_ep
from latentsym.sweep.gamma_sweep import (
    gamma_sweep,
    params_at_gamma,
    phase_diagram,
    relabel_by_continuity,
)

__all__ = [
    "bright_overlap",
    "gamma_sweep",
    "locate_ep",
    "params_at_gamma",
    "phase_diagram",
    "relabel_by_continuity",
]
