import itertools

import numpy as np
from loguru import logger

from latentsym.config import (
    DEFAULT_CLUSTER_TOL,
    DEFAULT_CONDITION_CAP,
    DEFAULT_RANK_TOL,
    DEFAULT_ROOT_TOL,
    DEFAULT_TOL,
)
from latentsym.data_model.numerics import SpectralDecomposition
from latentsym.exceptions import InputError
from latentsym.numerics.matrix import as_matrix, overlap
from latentsym.numerics.polynomial import (
    char_poly,
    cluster_roots,
    poly_roots,
    scaled_residuals,
)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """
    Unit norm with the largest component real and positive.
    """
    v = v / np.linalg.norm(v)
    pivot = v[np.argmax(np.abs(v))]
    return v * (np.conj(pivot) / abs(pivot))


def null_vectors(a: np.ndarray, count: int, rank_tol: float) -> np.ndarray:
    """
    Right singular directions of the smallest singular values of a, as rows.
    At least one and at most `count` directions are returned; only directions
    with singular value <= rank_tol count beyond the first.
    """
    _, s, vh = np.linalg.svd(a)
    geometric = int(np.sum(s <= rank_tol))
    geometric = min(max(geometric, 1), count)
    return vh[-geometric:].conj()


def eigen(
    M,
    tol: float = DEFAULT_TOL,
    condition_cap: float = DEFAULT_CONDITION_CAP,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> SpectralDecomposition:
    """
    Eigenvalues from the characteristic polynomial and right eigenvectors from
    null-space solves of (M - lambda I).

    A cluster of m equal eigenvalues gets as many independent eigenvectors as
    (M - lambda I) has numerically zero singular values; missing ones are
    filled with copies, so a defective cluster shows overlap 1.

    Args:
        M: Square matrix.
        tol: Overlap tolerance; a pair inside a cluster with overlap > 1 - tol
            marks the matrix defective.
        condition_cap: Eigenvector condition number above which the matrix is
            reported defective.
        cluster_tol: Relative distance under which eigenvalues are repeated.

    Returns:
        The spectral decomposition.
    """
    a = as_matrix(M)
    n = a.shape[0]
    p = char_poly(a)
    eigenvalues = poly_roots(p, tol=DEFAULT_ROOT_TOL, cluster_tol=cluster_tol)
    clusters = cluster_roots(eigenvalues, cluster_tol)
    norm = max(1.0, float(np.linalg.norm(a, 2)))
    identity = np.eye(n, dtype=np.complex128)

    vectors = np.zeros((n, n), dtype=np.complex128)
    defective = False
    for members in clusters:
        lam = eigenvalues[members].mean()
        # an m-fold eigenvalue carries an error of order residual^(1/m)
        error = float(scaled_residuals(p, lam)[0]) ** (1.0 / len(members))
        rank_tol = norm * max(DEFAULT_RANK_TOL, error)
        basis = null_vectors(a - lam * identity, len(members), rank_tol)
        for k, idx in enumerate(members):
            vectors[:, idx] = _fix_phase(basis[min(k, len(basis) - 1)])
        for i, j in itertools.combinations(members, 2):
            if overlap(vectors[:, i], vectors[:, j]) > 1.0 - tol:
                defective = True
        if len(basis) < len(members):
            logger.debug(
                f"Eigenvalue {lam} has algebraic multiplicity {len(members)} "
                f"but geometric multiplicity {len(basis)}"
            )

    max_overlap = max(
        (
            overlap(vectors[:, i], vectors[:, j])
            for i, j in itertools.combinations(range(n), 2)
        ),
        default=0.0,
    )
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        condition = float(np.linalg.cond(vectors))
    if not np.isfinite(condition):
        condition = float("inf")
    if condition > condition_cap:
        defective = True

    return SpectralDecomposition(
        eigenvalues=eigenvalues,
        right_eigenvectors=vectors,
        defective=defective,
        eigenvector_condition=condition,
        max_overlap=max_overlap,
        multiplicities=[len(members) for members in clusters],
    )


def match_multisets(a, b) -> float:
    """
    Smallest achievable maximum distance over pairings of two equally sized
    multisets of complex numbers.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise InputError(f"Multisets differ in size: {a.shape} vs {b.shape}")
    if len(a) == 0:
        return 0.0
    if len(a) <= 7:
        return float(
            min(
                np.max(np.abs(a - b[list(perm)]))
                for perm in itertools.permutations(range(len(b)))
            )
        )
    remaining = list(b)
    worst = 0.0
    for z in a:
        k = int(np.argmin([abs(z - w) for w in remaining]))
        worst = max(worst, abs(z - remaining.pop(k)))
    return float(worst)
