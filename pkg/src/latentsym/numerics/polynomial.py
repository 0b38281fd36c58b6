"""
Characteristic polynomials and polynomial roots.

Roots of degree one and two are solved in closed form. Higher degrees use the
Aberth-Ehrlich simultaneous iteration, with a deflate-and-solve fallback when
the iteration stalls. Approximations of an m-fold root are merged and the
merged value is refined by Newton on the (m-1)-th derivative, where the root
is simple; each approximation on its own is only good to eps^(1/m).
"""

import cmath
from math import comb, factorial

import numpy as np
import numpy.polynomial.polynomial as npoly
from loguru import logger

from latentsym.config import (
    DEFAULT_ABERTH_MAX_ITER,
    DEFAULT_CLUSTER_TOL,
    DEFAULT_ROOT_TOL,
)
from latentsym.data_model.numerics import Polynomial
from latentsym.exceptions import InputError, NumericError
from latentsym.numerics.matrix import as_matrix

EPS = np.finfo(np.float64).eps

# Loose radius for candidate multiple-root clusters; a triple root is only
# resolved to ~eps^(1/3).
CANDIDATE_CLUSTER_TOL = 1e-4


def char_poly(M) -> Polynomial:
    """
    Monic characteristic polynomial det(lambda I - M) by the Faddeev-LeVerrier
    recurrence.
    """
    a = as_matrix(M)
    n = a.shape[0]
    identity = np.eye(n, dtype=np.complex128)
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = 1.0
    m_k = np.zeros_like(a)
    for k in range(1, n + 1):
        m_k = a @ m_k + coeffs[n - k + 1] * identity
        coeffs[n - k] = -np.trace(a @ m_k) / k
    if not np.all(np.isfinite(coeffs)):
        raise NumericError("Characteristic polynomial has non-finite coefficients")
    return Polynomial(coeffs=coeffs, monic=True)


def scaled_residuals(p: Polynomial, roots) -> np.ndarray:
    """
    |p(r)| divided by the scale of p near r.
    """
    roots = np.atleast_1d(np.asarray(roots, dtype=np.complex128))
    values = np.abs(p(roots))
    scales = np.array([p.scale_at(r) for r in roots])
    return values / scales


def _solve_quadratic(c0: complex, c1: complex) -> np.ndarray:
    # lambda^2 + c1 lambda + c0, cancellation-free form
    disc = cmath.sqrt(c1 * c1 - 4.0 * c0)
    if abs(c1 + disc) < abs(c1 - disc):
        disc = -disc
    q = -(c1 + disc) / 2.0
    if q == 0:
        return np.zeros(2, dtype=np.complex128)
    return np.array([q, c0 / q], dtype=np.complex128)


def _initial_guesses(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    center = -coeffs[n - 1] / n
    radius = max(abs(coeffs[k]) ** (1.0 / (n - k)) for k in range(n))
    radius = max(radius, abs(center), 1.0)
    # offset angle avoids starting on a symmetry axis of real polynomials
    angles = 2.0 * np.pi * np.arange(n) / n + 0.4
    return center + radius * np.exp(1j * angles)


def _aberth(p: Polynomial, max_iter: int) -> tuple[np.ndarray, int]:
    coeffs = p.coeffs
    deriv = npoly.polyder(coeffs)
    z = _initial_guesses(coeffs)
    n = len(z)
    for iteration in range(1, max_iter + 1):
        pv = npoly.polyval(z, coeffs)
        dpv = npoly.polyval(z, deriv)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        sums = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            ratio = pv / dpv
            delta = ratio / (1.0 - ratio * sums)
        delta = np.where(np.isfinite(delta), delta, 0.0)
        z = z - delta
        small_step = np.all(np.abs(delta) <= 4.0 * EPS * np.maximum(np.abs(z), 1.0))
        at_floor = np.all(scaled_residuals(p, z) <= 8.0 * n * EPS)
        if small_step or at_floor:
            return z, iteration
    return z, max_iter


def cluster_roots(roots, rel_tol: float = DEFAULT_CLUSTER_TOL) -> list[list[int]]:
    """
    Group root indices whose distance is within rel_tol relative to
    max(1, |r|), closed under chaining. Clusters are ordered by first member.
    """
    roots = np.asarray(roots, dtype=np.complex128)
    clusters: list[list[int]] = []
    assigned = [False] * len(roots)
    for i in range(len(roots)):
        if assigned[i]:
            continue
        members = [i]
        assigned[i] = True
        frontier = [i]
        while frontier:
            k = frontier.pop()
            for j in range(len(roots)):
                if assigned[j]:
                    continue
                scale = max(1.0, abs(roots[k]), abs(roots[j]))
                if abs(roots[k] - roots[j]) <= rel_tol * scale:
                    assigned[j] = True
                    members.append(j)
                    frontier.append(j)
        clusters.append(sorted(members))
    return clusters


def _taylor_coeffs(p: Polynomial, c: complex, order: int) -> list[complex]:
    coeffs = p.coeffs
    return [
        complex(npoly.polyval(c, npoly.polyder(coeffs, k)) / factorial(k))
        if k <= p.degree
        else 0j
        for k in range(order + 1)
    ]


def is_multiple_root(
    p: Polynomial, c: complex, m: int, rel_tol: float = DEFAULT_CLUSTER_TOL
) -> bool:
    """
    Whether c is an m-fold root of p: the first m Taylor coefficients at c are
    either those of m roots within rel_tol of c or at the rounding-noise floor.
    """
    s = max(1.0, abs(c))
    taylor = _taylor_coeffs(p, c, m)
    lead = abs(taylor[m])
    abs_coeffs = np.abs(p.coeffs)
    for k in range(m):
        noise = (
            16.0
            * p.degree
            * EPS
            * sum(
                abs_coeffs[j] * comb(j, k) * s ** (j - k)
                for j in range(k, p.degree + 1)
            )
        )
        bound = max(comb(m, k) * (rel_tol * s) ** (m - k) * lead, noise)
        if abs(taylor[k]) > bound:
            return False
    return True


def merge_multiple_roots(
    p: Polynomial, roots, rel_tol: float = DEFAULT_CLUSTER_TOL
) -> np.ndarray:
    """
    Replace approximations of a multiple root by one refined value.
    """
    roots = np.asarray(roots, dtype=np.complex128)
    merged = np.array(roots)
    for members in cluster_roots(roots, CANDIDATE_CLUSTER_TOL):
        if len(members) < 2:
            continue
        center = roots[members].mean()
        if is_multiple_root(p, center, len(members), rel_tol):
            center = polish_multiple_root(p, center, len(members))
            logger.debug(f"Merged {len(members)} roots into multiple root {center}")
            merged[members] = center
            continue
        for sub in cluster_roots(roots[members], rel_tol):
            if len(sub) > 1:
                idx = [members[k] for k in sub]
                merged[idx] = roots[idx].mean()
    return merged


def poly_roots(
    p: Polynomial,
    tol: float = DEFAULT_ROOT_TOL,
    max_iter: int = DEFAULT_ABERTH_MAX_ITER,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> np.ndarray:
    """
    All roots of p with multiplicity.

    Args:
        p: Polynomial of degree >= 1. Non-monic input is normalized.
        tol: Bound on |p(r)| relative to the scale of p near r.
        max_iter: Iteration cap for the Aberth-Ehrlich iteration.
        cluster_tol: Relative distance under which roots are treated as one
            multiple root.

    Returns:
        Complex array of the degree-many roots.
    """
    if p.degree < 1:
        raise InputError("poly_roots needs a polynomial of degree >= 1")
    if not p.monic:
        p = p.to_monic()
    coeffs = p.coeffs
    if p.degree == 1:
        roots = np.array([-coeffs[0]], dtype=np.complex128)
    elif p.degree == 2:
        roots = _solve_quadratic(coeffs[0], coeffs[1])
    else:
        roots, iterations = _aberth(p, max_iter)
        logger.debug(f"Aberth-Ehrlich finished after {iterations} iterations")
        if np.max(scaled_residuals(p, roots)) > tol:
            logger.warning(
                "Aberth-Ehrlich iteration did not converge, "
                "falling back to deflation with closed-form solves"
            )
            roots = _deflation_fallback(p, roots)

    roots = merge_multiple_roots(p, roots, cluster_tol)
    residuals = scaled_residuals(p, roots)
    if np.max(residuals) > tol:
        raise NumericError(
            f"Root finding did not converge: max scaled residual {np.max(residuals):.3e}",
            residuals=residuals.tolist(),
        )
    return roots


def _deflation_fallback(p: Polynomial, approx: np.ndarray) -> np.ndarray:
    """
    Peel off the best approximated root by synthetic division until a quadratic
    remains, then solve it in closed form.
    """
    coeffs = np.array(p.coeffs)
    approx = list(approx)
    found = []
    while len(coeffs) - 1 > 2:
        current = Polynomial(coeffs=coeffs)
        residuals = scaled_residuals(current, approx)
        best = int(np.argmin(residuals))
        root = _newton_polish(current, approx.pop(best))
        found.append(root)
        quotient, _ = npoly.polydiv(coeffs, np.array([-root, 1.0]))
        coeffs = np.asarray(quotient, dtype=np.complex128)
    found.extend(_solve_quadratic(coeffs[0] / coeffs[2], coeffs[1] / coeffs[2]))
    return np.array(found, dtype=np.complex128)


def _newton_polish(p: Polynomial, z: complex, steps: int = 8) -> complex:
    deriv = npoly.polyder(p.coeffs)
    for _ in range(steps):
        dp = npoly.polyval(z, deriv)
        if dp == 0:
            break
        z = z - npoly.polyval(z, p.coeffs) / dp
    return complex(z)


def polish_multiple_root(
    p: Polynomial, c: complex, m: int, steps: int = 8
) -> complex:
    """
    Newton on p^(m-1), where an m-fold root of p is simple. The start value is
    kept if the iteration leaves the candidate cluster.
    """
    target = npoly.polyder(p.coeffs, m - 1)
    deriv = npoly.polyder(target)
    z = complex(c)
    for _ in range(steps):
        dp = npoly.polyval(z, deriv)
        if dp == 0:
            break
        step = npoly.polyval(z, target) / dp
        z = z - step
        if abs(step) <= EPS * max(1.0, abs(z)):
            break
    if not np.isfinite(z) or abs(z - c) > CANDIDATE_CLUSTER_TOL * max(1.0, abs(c)):
        return complex(c)
    return complex(z)
