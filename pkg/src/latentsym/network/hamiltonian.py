from typing import Any, Iterable

import numpy as np
from pydantic import ValidationError

from latentsym.data_model.network import CouplingSpec, NetworkHamiltonian, SiteSpec
from latentsym.exceptions import InputError


def build_hamiltonian(
    sites: Iterable[SiteSpec], couplings: Iterable[CouplingSpec]
) -> NetworkHamiltonian:
    """
    Assemble H = sum_j Omega_j |j><j| + sum_{i != j} g_ij |i><j|.

    Missing couplings are zero. Each ordered pair may be given at most once.
    """
    sites = list(sites)
    n = len(sites)
    if n < 1:
        raise InputError("A network needs at least one site")
    array = np.zeros((n, n), dtype=np.float64)
    seen: set[tuple[int, int]] = set()
    for coupling in couplings:
        key = (coupling.source, coupling.target)
        if coupling.source == coupling.target:
            raise InputError(f"Self-coupling on site {coupling.source}")
        if not (0 <= coupling.source < n and 0 <= coupling.target < n):
            raise InputError(f"Coupling {key} is out of range for {n} sites")
        if key in seen:
            raise InputError(f"Duplicate coupling for ordered pair {key}")
        seen.add(key)
        array[key] = coupling.g
    return NetworkHamiltonian(sites=sites, couplings=array)


def delete_vertex(H: NetworkHamiltonian, i: int) -> NetworkHamiltonian:
    """
    Principal submatrix with row and column i removed; survivors keep their
    relative order.
    """
    if H.n < 2:
        raise InputError("Cannot delete a vertex from a single-site network")
    _check_index(H, i)
    keep = [k for k in range(H.n) if k != i]
    return NetworkHamiltonian(
        sites=[H.sites[k] for k in keep],
        couplings=H.couplings[np.ix_(keep, keep)],
    )


def network_from_dict(data: dict[str, Any]) -> NetworkHamiltonian:
    """
    Build a network from its JSON description
    {"sites": [{"omega", "gamma"}], "couplings": [{"from", "to", "g"}]}.
    """
    try:
        sites = [SiteSpec.model_validate(site) for site in data.get("sites", [])]
        couplings = [
            CouplingSpec.model_validate(coupling)
            for coupling in data.get("couplings", [])
        ]
    except ValidationError as e:
        raise InputError(f"Invalid network description: {e}") from e
    return build_hamiltonian(sites, couplings)


def network_to_dict(H: NetworkHamiltonian) -> dict[str, Any]:
    """
    JSON description of a network; only nonzero couplings are listed.
    """
    rows, cols = np.nonzero(H.couplings)
    return {
        "sites": [site.model_dump() for site in H.sites],
        "couplings": [
            {"from": int(r), "to": int(c), "g": float(H.couplings[r, c])}
            for r, c in zip(rows, cols)
        ],
    }


def _check_index(H: NetworkHamiltonian, i: int) -> None:
    if not 0 <= i < H.n:
        raise InputError(f"Site index {i} is out of range for {H.n} sites")
