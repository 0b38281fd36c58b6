from latentsym.trimer.closed_form import (
    closed_form_bright,
    closed_form_bright_state,
    closed_form_coefficients,
    closed_form_dark,
    closed_form_dark_state,
    closed_form_ep,
    closed_form_ep_state,
)
from latentsym.trimer.model import (
    apply_reality_conditions,
    bright_state,
    build_trimer,
    dark_state,
    gauge_transform,
    site_state,
)
from latentsym.trimer.sectors import (
    bright_oscillation,
    classify_phase,
    coalesced_vector,
    decompose,
    discriminant,
    nilpotent_part,
    satisfies_reality_conditions,
)

__all__ = [
    "apply_reality_conditions",
    "bright_oscillation",
    "bright_state",
    "build_trimer",
    "classify_phase",
    "closed_form_bright",
    "closed_form_bright_state",
    "closed_form_coefficients",
    "closed_form_dark",
    "closed_form_dark_state",
    "closed_form_ep",
    "closed_form_ep_state",
    "coalesced_vector",
    "dark_state",
    "decompose",
    "discriminant",
    "gauge_transform",
    "nilpotent_part",
    "satisfies_reality_conditions",
    "site_state",
]
