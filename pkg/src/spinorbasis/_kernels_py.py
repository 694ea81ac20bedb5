"""Pure numpy kernels: normalized Legendre and generalized Laguerre tables.

Both kernels evaluate a three-term recurrence over a 1-D array of points.
The compiled module ``_ckernels`` implements the same signatures.
"""

import numpy as np


def legendre_table(lmax, x):
    """Normalized associated Legendre values, shape ``(lmax+1, lmax+1, npts)``.

    Entry ``[l, m]`` (``m <= l``) is ``N_lm P_l^m(x)`` without the
    Condon-Shortley phase, scaled so that ``N_lm P_l^m(cos t) exp(i m p)``
    has unit norm on the sphere.  Entries with ``m > l`` are zero.
    """
    x = np.ascontiguousarray(x, dtype=np.float64).ravel()
    lmax = int(lmax)
    if lmax < 0:
        raise ValueError("lmax must be nonnegative")
    out = np.zeros((lmax + 1, lmax + 1, x.size))
    sint = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    pmm = np.full(x.size, 0.5 / np.sqrt(np.pi))
    for m in range(lmax + 1):
        if m > 0:
            pmm = pmm * np.sqrt((2.0 * m + 1.0) / (2.0 * m)) * sint
        out[m, m] = pmm
        if m + 1 <= lmax:
            out[m + 1, m] = np.sqrt(2.0 * m + 3.0) * x * pmm
        for l in range(m + 2, lmax + 1):
            a = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            out[l, m] = a * (x * out[l - 1, m] - b * out[l - 2, m])
    return out


def laguerre_table(pmax, alpha, x):
    """Generalized Laguerre ``L_p^(alpha)(x)`` for ``p = 0..pmax``, shape ``(pmax+1, npts)``."""
    x = np.ascontiguousarray(x, dtype=np.float64).ravel()
    pmax = int(pmax)
    alpha = float(alpha)
    out = np.zeros((max(pmax, 0) + 1, x.size))
    if pmax < 0:
        return out[:0]
    out[0] = 1.0
    if pmax >= 1:
        out[1] = 1.0 + alpha - x
    for k in range(1, pmax):
        out[k + 1] = ((2.0 * k + 1.0 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) / (k + 1.0)
    return out
