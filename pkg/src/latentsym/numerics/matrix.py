import numpy as np

from latentsym.exceptions import InputError


def as_matrix(M) -> np.ndarray:
    """
    Validate and coerce a square finite matrix to complex128.
    """
    mat = np.asarray(M, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise InputError(f"Matrix must be square, got shape {mat.shape}")
    if mat.shape[0] < 1:
        raise InputError("Matrix must have dimension at least 1")
    if not np.all(np.isfinite(mat)):
        raise InputError("Matrix entries must be finite")
    return mat


def one_norm(a: np.ndarray) -> float:
    """
    Maximum absolute column sum.
    """
    return float(np.max(np.sum(np.abs(a), axis=0)))


def overlap(v1: np.ndarray, v2: np.ndarray) -> float:
    """
    Normalized overlap |<v1|v2>| / (|v1| |v2|).
    """
    denom = np.linalg.norm(v1) * np.linalg.norm(v2)
    if denom == 0.0:
        return 0.0
    return float(abs(np.vdot(v1, v2)) / denom)
