"""
Matrix exponential by scaling and squaring with Pade approximants.

Adapted from Higham, "The scaling and squaring method for the matrix
exponential revisited" (2005), algorithm 2.3. No eigendecomposition is used,
so defective (Jordan-block) inputs are handled like any other matrix.
"""

import numpy as np
from loguru import logger

from latentsym.exceptions import NumericError
from latentsym.numerics.matrix import as_matrix, one_norm

# Pade numerator coefficients b_0..b_m of each order, algorithm 2.3.
B3 = (120, 60, 12, 1)
B5 = (30240, 15120, 3360, 420, 30, 1)
B7 = (17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1)
B9 = (
    17643225600,
    8821612800,
    2075673600,
    302702400,
    30270240,
    2162160,
    110880,
    3960,
    90,
    1,
)
B13 = (
    64764752532480000,
    32382376266240000,
    7771770303897600,
    1187353796428800,
    129060195264000,
    10559470521600,
    670442572800,
    33522128640,
    1323241920,
    40840800,
    960960,
    16380,
    182,
    1,
)


def pade3(a, i):
    b = B3
    a2 = a @ a
    u = a @ (b[3] * a2 + b[1] * i)
    v = b[2] * a2 + b[0] * i
    return u, v


def pade5(a, i):
    b = B5
    a2 = a @ a
    a4 = a2 @ a2
    u = a @ (b[5] * a4 + b[3] * a2 + b[1] * i)
    v = b[4] * a4 + b[2] * a2 + b[0] * i
    return u, v


def pade7(a, i):
    b = B7
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * i)
    v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * i
    return u, v


def pade9(a, i):
    b = B9
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    a8 = a2 @ a6
    u = a @ (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * i)
    v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * i
    return u, v


def pade13(a, i):
    b = B13
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (
        a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
        + b[7] * a6
        + b[5] * a4
        + b[3] * a2
        + b[1] * i
    )
    v = (
        a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
        + b[6] * a6
        + b[4] * a4
        + b[2] * a2
        + b[0] * i
    )
    return u, v


# Largest 1-norm for which each order is accurate to unit roundoff, table 2.3.
PADE = (
    (3, 1.495585217958292e-2, pade3),
    (5, 2.539398330063230e-1, pade5),
    (7, 9.504178996162932e-1, pade7),
    (9, 2.097847961257068, pade9),
    (13, 5.371920351148152, pade13),
)


def expm(M) -> np.ndarray:
    """
    Compute e^M.

    Args:
        M: Square finite matrix.

    Returns:
        The matrix exponential as a complex128 array.

    Raises:
        NumericError: if the squaring phase leaves the representable range.
    """
    a = as_matrix(M)
    identity = np.eye(a.shape[0], dtype=np.complex128)
    norm = one_norm(a)

    scale = 0
    approximant = None
    for _, theta, fn in PADE:
        if norm <= theta:
            approximant = fn
            break
    if approximant is None:
        approximant = pade13
        scale = max(0, int(np.ceil(np.log2(norm / PADE[-1][1]))))
        a = a * (2.0**-scale)

    u, v = approximant(a, identity)
    r = np.linalg.solve(v - u, v + u)

    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(scale):
            r = r @ r
            if not np.all(np.isfinite(r)):
                logger.warning(f"expm overflow at squaring step {step + 1}/{scale}")
                raise NumericError(
                    f"Matrix exponential overflowed (1-norm of argument {norm:.3e})"
                )
    if not np.all(np.isfinite(r)):
        raise NumericError(
            f"Matrix exponential is not finite (1-norm of argument {norm:.3e})"
        )
    return r
