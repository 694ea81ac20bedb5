"""Radial factors: Slater functions and the Laguerre-based psi^alpha family.

With ``x = 2*zeta*r``, ``beta = 2l + 2 - alpha`` and ``p = n - l - 1``::

    R^a_nl(r)    = N x**l exp(-x/2) L_p^(beta)(x)
    N**2         = (2 zeta)**3 p! / ((2n)**a (n+l+1-a)!)
    Rbar^a_nl(r) = (2n)**a x**(-a) R^a_nl(r)

so that ``int Rbar_nl R_n'l r^2 dr = delta_nn'``.  Every radial function
is identically zero when ``l >= n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact as ex
from .exact import ExactComplex
from .kernels import laguerre_table

__all__ = [
    "RadialParameterError",
    "RadialFamily",
    "sto_radial",
    "sto_radial_deriv",
    "psi_alpha_norm",
    "psi_alpha_dual_constant",
    "psi_alpha_radial",
    "psi_alpha_radial_deriv",
    "psi_alpha_dual_radial",
    "normalization_N",
    "sto_overlap",
]


class RadialParameterError(ValueError):
    """Radial parameters outside the family's domain."""


def _check_nz(n, zeta):
    if int(n) != n or n < 1:
        raise RadialParameterError(f"n must be a positive integer, got {n}")
    if not zeta > 0:
        raise RadialParameterError(f"zeta must be positive, got {zeta}")


def sto_radial(n: int, zeta: float, r):
    """Normalized Slater radial ``(2z)^(n+1/2)/sqrt((2n)!) r^(n-1) exp(-z r)``."""
    _check_nz(n, zeta)
    r = np.asarray(r, dtype=float)
    lognorm = (n + 0.5) * math.log(2.0 * zeta) - 0.5 * math.lgamma(2 * n + 1)
    return math.exp(lognorm) * r ** (n - 1) * np.exp(-zeta * r)


def sto_radial_deriv(n: int, zeta: float, r):
    """``dR_n/dr = ((n-1)/r - zeta) R_n``, written without the 1/r singularity."""
    _check_nz(n, zeta)
    r = np.asarray(r, dtype=float)
    lognorm = (n + 0.5) * math.log(2.0 * zeta) - 0.5 * math.lgamma(2 * n + 1)
    lead = (n - 1) * r ** (n - 2) if n > 1 else np.zeros_like(r)
    return math.exp(lognorm) * (lead - zeta * r ** (n - 1)) * np.exp(-zeta * r)


def sto_overlap(n1: int, n2: int) -> float:
    """Closed form ``(n+n')!/sqrt((2n)!(2n')!)`` for equal exponents."""
    return math.exp(
        math.lgamma(n1 + n2 + 1) - 0.5 * (math.lgamma(2 * n1 + 1) + math.lgamma(2 * n2 + 1))
    )


def _check_alpha(alpha, n, l):
    _check_nz(n, 1.0)
    if int(alpha) != alpha or alpha > 2:
        raise RadialParameterError(f"alpha must be an integer <= 2, got {alpha}")
    if int(l) != l or l < 0:
        raise RadialParameterError(f"l must be a nonnegative integer, got {l}")
    if 2 * l + 2 - alpha <= 0:
        raise RadialParameterError(
            f"Laguerre parameter 2l+2-alpha = {2 * l + 2 - alpha} must be positive"
        )


def psi_alpha_norm(alpha: int, n: int, l: int, zeta: float) -> float:
    """Normalization constant ``N^alpha_nl``."""
    _check_alpha(alpha, n, l)
    p = n - l - 1
    logn = 1.5 * math.log(2.0 * zeta) + 0.5 * (
        math.lgamma(p + 1) - alpha * math.log(2.0 * n) - math.lgamma(n + l + 2 - alpha)
    )
    return math.exp(logn)


def psi_alpha_dual_constant(alpha: int, n: int) -> Fraction:
    """Dual weight constant ``c = (2n)**alpha`` (exact rational)."""
    return Fraction(2 * n) ** int(alpha)


def psi_alpha_radial(alpha: int, n: int, l: int, zeta: float, r):
    """Primal radial ``R^alpha_nl(zeta, r)``; zero when ``l >= n``."""
    _check_alpha(alpha, n, l)
    if not zeta > 0:
        raise RadialParameterError(f"zeta must be positive, got {zeta}")
    r = np.asarray(r, dtype=float)
    if l >= n:
        return np.zeros_like(r)
    x = 2.0 * zeta * r
    p = n - l - 1
    L = laguerre_table(p, 2 * l + 2 - alpha, x)[p].reshape(x.shape)
    return psi_alpha_norm(alpha, n, l, zeta) * x**l * np.exp(-0.5 * x) * L


def psi_alpha_radial_deriv(alpha: int, n: int, l: int, zeta: float, r):
    """Analytic ``dR^alpha_nl/dr`` via ``d/dx L_p^(b) = -L_(p-1)^(b+1)``."""
    _check_alpha(alpha, n, l)
    if not zeta > 0:
        raise RadialParameterError(f"zeta must be positive, got {zeta}")
    r = np.asarray(r, dtype=float)
    if l >= n:
        return np.zeros_like(r)
    x = 2.0 * zeta * r
    p = n - l - 1
    b = 2 * l + 2 - alpha
    L = laguerre_table(p, b, x)[p].reshape(x.shape)
    dL = -laguerre_table(p - 1, b + 1, x)[p - 1].reshape(x.shape) if p > 0 else 0.0
    # d/dx [x^l e^{-x/2} L] = e^{-x/2} [l x^(l-1) L + x^l (dL - L/2)]
    lead = l * x ** (l - 1) * L if l > 0 else 0.0
    val = np.exp(-0.5 * x) * (lead + x**l * (dL - 0.5 * L))
    return 2.0 * zeta * psi_alpha_norm(alpha, n, l, zeta) * val


def psi_alpha_dual_radial(alpha: int, n: int, l: int, zeta: float, r):
    """Dual radial ``(2n)**alpha (2 zeta r)**(-alpha) R^alpha_nl``."""
    _check_alpha(alpha, n, l)
    if not zeta > 0:
        raise RadialParameterError(f"zeta must be positive, got {zeta}")
    r = np.asarray(r, dtype=float)
    if l >= n:
        return np.zeros_like(r)
    x = 2.0 * zeta * r
    p = n - l - 1
    L = laguerre_table(p, 2 * l + 2 - alpha, x)[p].reshape(x.shape)
    c = float(psi_alpha_dual_constant(alpha, n))
    with np.errstate(divide="ignore", invalid="ignore"):
        powx = x ** (l - alpha)
    return c * psi_alpha_norm(alpha, n, l, zeta) * powx * np.exp(-0.5 * x) * L


@dataclass(frozen=True)
class RadialFamily:
    """Radial family selector: ``kind`` is ``"sto"`` or ``"psi_alpha"``."""

    kind: str = "psi_alpha"
    alpha: int = 1
    zeta: float = 1.0

    def __post_init__(self):
        if self.kind not in ("sto", "psi_alpha"):
            raise RadialParameterError(f"unknown radial kind {self.kind!r}")
        if not self.zeta > 0:
            raise RadialParameterError(f"zeta must be positive, got {self.zeta}")
        if self.kind == "psi_alpha" and (int(self.alpha) != self.alpha or self.alpha > 2):
            raise RadialParameterError(f"alpha must be an integer <= 2, got {self.alpha}")

    def value(self, n: int, l: int, r, dual: bool = False):
        """``R_nl(r)``; the Slater family ignores ``l`` apart from the ``l >= n`` zero."""
        r = np.asarray(r, dtype=float)
        if self.kind == "sto":
            if l >= n:
                return np.zeros_like(r)
            return sto_radial(n, self.zeta, r)
        if dual:
            return psi_alpha_dual_radial(self.alpha, n, l, self.zeta, r)
        return psi_alpha_radial(self.alpha, n, l, self.zeta, r)

    def deriv(self, n: int, l: int, r):
        r = np.asarray(r, dtype=float)
        if self.kind == "sto":
            if l >= n:
                return np.zeros_like(r)
            return sto_radial_deriv(n, self.zeta, r)
        return psi_alpha_radial_deriv(self.alpha, n, l, self.zeta, r)


def normalization_N(n: int, ltilde: int) -> ExactComplex:
    """``1/sqrt(2)`` when ``0 <= ltilde <= n-1``, else 1."""
    if n < 1 or ltilde < 0:
        raise RadialParameterError("need n >= 1 and ltilde >= 0")
    return ex.sqrt(Fraction(1, 2)) if ltilde <= n - 1 else ex.ONE
