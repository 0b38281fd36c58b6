"""
Cospectrality of site pairs and latent-symmetry structure.

Two sites are cospectral when deleting either of them leaves subgraphs with the
same characteristic polynomial.
"""

import itertools

import networkx as nx
import numpy as np
from loguru import logger

from latentsym.config import DEFAULT_TOL
from latentsym.data_model.network import (
    CospectralReport,
    NetworkHamiltonian,
    SingletReport,
    TrimerConditions,
)
from latentsym.exceptions import InputError
from latentsym.network.hamiltonian import _check_index, delete_vertex
from latentsym.numerics import char_poly, cluster_roots, poly_roots


def is_cospectral(
    H: NetworkHamiltonian, i: int, j: int, tol: float = DEFAULT_TOL
) -> CospectralReport:
    """
    Compare char_poly(H without i) with char_poly(H without j) coefficient-wise.

    The verdict uses the absolute deviation of the monic polynomials against
    tol scaled by the largest coefficient magnitude (at least 1).
    """
    _check_index(H, i)
    _check_index(H, j)
    if i == j:
        raise InputError(f"Cospectrality needs two distinct sites, got ({i}, {j})")
    poly_i = char_poly(delete_vertex(H, i).matrix)
    poly_j = char_poly(delete_vertex(H, j).matrix)
    deviation = float(np.max(np.abs(poly_i.coeffs - poly_j.coeffs)))
    scale = max(
        1.0,
        float(np.max(np.abs(poly_i.coeffs))),
        float(np.max(np.abs(poly_j.coeffs))),
    )
    threshold = tol * scale
    return CospectralReport(
        pair=(i, j),
        poly_i=poly_i,
        poly_j=poly_j,
        max_coeff_deviation=deviation,
        threshold=threshold,
        cospectral=bool(deviation <= threshold),
    )


def check_trimer_conditions(
    H: NetworkHamiltonian, tol: float = DEFAULT_TOL
) -> TrimerConditions:
    """
    Check Omega_1 = Omega_2 and g13 g31 = g23 g32 for a three-site network
    (sites 0 and 1 against site 2 in 0-based indexing).

    Deleting site k leaves a 2x2 block with char poly
    lambda^2 - (Omega_k + Omega_3) lambda + Omega_k Omega_3 - g_k3 g_3k, so the
    onsite deviation is the deviation of the linear coefficients. Both
    conditions use the threshold of `is_cospectral`, and `latent_symmetric` is
    its verdict.
    """
    if H.n != 3:
        raise InputError(f"Trimer conditions need exactly 3 sites, got {H.n}")
    report = is_cospectral(H, 0, 1, tol)
    g = H.couplings
    onsite_dev = float(abs(report.poly_i.coeffs[1] - report.poly_j.coeffs[1]))
    product_dev = float(abs(g[0, 2] * g[2, 0] - g[1, 2] * g[2, 1]))
    return TrimerConditions(
        equal_onsite=bool(onsite_dev <= report.threshold),
        product_match=bool(product_dev <= report.threshold),
        latent_symmetric=report.cospectral,
        onsite_deviation=onsite_dev,
        product_deviation=product_dev,
        nondegenerate_spectrum=_nondegenerate(H),
    )


def _nondegenerate(H: NetworkHamiltonian) -> bool:
    roots = poly_roots(char_poly(H.matrix))
    return all(len(members) == 1 for members in cluster_roots(roots))


def support_graph(H: NetworkHamiltonian) -> nx.Graph:
    """
    Undirected graph with an edge wherever g_ij or g_ji is nonzero.
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(H.n))
    rows, cols = np.nonzero(H.couplings)
    graph.add_edges_from((int(r), int(c)) for r, c in zip(rows, cols))
    return graph


def singlet_report(H: NetworkHamiltonian, pair: tuple[int, int]) -> SingletReport:
    """
    Breadth-first distances from both members of the pair. Sites unreachable
    from both are reported as disconnected and are never singlets.
    """
    i, j = pair
    _check_index(H, i)
    _check_index(H, j)
    if i == j:
        raise InputError(f"Singlet sites need two distinct sites, got ({i}, {j})")
    graph = support_graph(H)
    dist_i = nx.single_source_shortest_path_length(graph, i)
    dist_j = nx.single_source_shortest_path_length(graph, j)
    singlets: list[int] = []
    disconnected: list[int] = []
    distances: dict[int, tuple[float, float]] = {}
    for k in range(H.n):
        if k in (i, j):
            continue
        d_i = float(dist_i.get(k, float("inf")))
        d_j = float(dist_j.get(k, float("inf")))
        distances[k] = (d_i, d_j)
        if np.isinf(d_i) and np.isinf(d_j):
            disconnected.append(k)
        elif d_i == d_j:
            singlets.append(k)
    if disconnected:
        logger.warning(f"Sites {disconnected} are disconnected from pair {pair}")
    return SingletReport(
        pair=(i, j), singlets=singlets, disconnected=disconnected, distances=distances
    )


def singlet_sites(H: NetworkHamiltonian, pair: tuple[int, int]) -> list[int]:
    """
    Sites k outside the pair with dist(k, i) = dist(k, j) on the support graph.
    """
    return singlet_report(H, pair).singlets


def cospectral_classes(
    H: NetworkHamiltonian, tol: float = DEFAULT_TOL
) -> list[list[int]]:
    """
    Equivalence classes (size >= 2) of mutually cospectral sites.
    """
    parent = list(range(H.n))

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for i, j in itertools.combinations(range(H.n), 2):
        if is_cospectral(H, i, j, tol).cospectral:
            parent[find(j)] = find(i)
    classes: dict[int, list[int]] = {}
    for k in range(H.n):
        classes.setdefault(find(k), []).append(k)
    return [members for members in classes.values() if len(members) > 1]
