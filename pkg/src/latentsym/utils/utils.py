import math

import numpy as np


def complex_to_dict(z: complex) -> dict[str, float]:
    """
    JSON form of a complex scalar.
    """
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def principal_sqrt(z: complex) -> complex:
    """
    Principal square root: nonnegative real part, nonnegative imaginary part on
    the negative real axis.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real < 0.0:
        return complex(0.0, math.sqrt(-z.real))
    return complex(np.sqrt(z))
