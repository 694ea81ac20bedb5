"""Tensor-product quadrature on the sphere and the half line.

Angular rule: Gauss-Legendre in ``cos(theta)`` times the trapezoid rule in
``phi`` (exact for trigonometric polynomials of degree below ``n_phi``).
Radial rule: Gauss-Laguerre in ``x = r_scale * r`` with the ``exp(x)``
factor folded into the weights, so integrands decaying like
``exp(-r_scale r)`` are integrated with polynomial exactness.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_laguerre

__all__ = [
    "QuadratureWarning",
    "GridSpec",
    "angular_nodes",
    "radial_nodes",
    "angular_inner",
    "radial_inner",
    "inner3d",
]


class QuadratureWarning(UserWarning):
    """Grid is likely too coarse for the requested integrand."""


@dataclass(frozen=True)
class GridSpec:
    n_theta: int = 64
    n_phi: int = 64
    n_r: int = 64
    r_scale: float = 2.0

    def __post_init__(self):
        if self.n_theta < 8 or self.n_phi < 8:
            raise ValueError("angular node counts must be >= 8")
        if self.n_r < 16:
            raise ValueError("radial node count must be >= 16")
        if not self.r_scale > 0:
            raise ValueError("r_scale must be positive")


@lru_cache(maxsize=32)
def _leg(n):
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


@lru_cache(maxsize=32)
def _lag(n):
    # scipy's nodes and weights are markedly more accurate than laggauss at large n
    x, w = roots_laguerre(n)
    # fold exp(x) into the weights in log space to avoid overflow
    with np.errstate(divide="ignore"):
        w = np.exp(np.log(w) + x)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def angular_nodes(grid: GridSpec):
    """``(theta, phi, weight)`` flattened over the tensor grid; weights sum to 4 pi."""
    x, w = _leg(grid.n_theta)
    phi = 2.0 * np.pi * np.arange(grid.n_phi) / grid.n_phi
    wphi = np.full(grid.n_phi, 2.0 * np.pi / grid.n_phi)
    th = np.arccos(x)
    T, P = np.meshgrid(th, phi, indexing="ij")
    W = np.outer(w, wphi)
    return T.ravel(), P.ravel(), W.ravel()


def radial_nodes(grid: GridSpec):
    """``(r, weight)`` for ``int_0^inf g(r) dr``."""
    x, w = _lag(grid.n_r)
    return x / grid.r_scale, w / grid.r_scale


def _max_degree(f):
    return getattr(f, "max_degree", None)


def angular_inner(f, g, grid: GridSpec = GridSpec()) -> complex:
    """``sum_i int conj(f_i) g_i dOmega`` for component stacks.

    ``f`` and ``g`` are callables ``(theta, phi) -> array (ncomp, npts)``.
    A :class:`QuadratureWarning` is issued when an argument advertises a
    ``max_degree`` attribute too large for the grid.
    """
    for h in (f, g):
        deg = _max_degree(h)
        if deg is not None and (2 * deg >= 2 * grid.n_theta or 2 * deg >= grid.n_phi):
            warnings.warn("angular grid may be too small", QuadratureWarning, stacklevel=2)
    th, ph, w = angular_nodes(grid)
    F = np.atleast_2d(f(th, ph))
    G = np.atleast_2d(g(th, ph))
    if F.shape != G.shape:
        raise ValueError("component stacks differ in length")
    return complex(np.sum(np.conj(F) * G * w))


def radial_inner(f, g, weight_power: int = 0, zeta_eff: float | None = None,
                 grid: GridSpec = GridSpec()) -> float:
    """``int_0^inf f(r) g(r) r^(2+weight_power) dr`` by mapped Gauss-Laguerre.

    ``zeta_eff`` sets the mapping ``x = zeta_eff * r``; it should match the
    combined decay rate of ``f g``.  It overrides ``grid.r_scale``.
    """
    if zeta_eff is not None:
        grid = GridSpec(grid.n_theta, grid.n_phi, grid.n_r, float(zeta_eff))
    r, w = radial_nodes(grid)
    val = np.asarray(f(r)) * np.asarray(g(r)) * r ** (2 + weight_power)
    if not np.all(np.isfinite(val)):
        warnings.warn("non-finite radial integrand values", QuadratureWarning, stacklevel=2)
    return float(np.sum(val * w))


def inner3d(f, g, grid: GridSpec = GridSpec(), chunk: int = 8) -> complex:
    """``int f^dagger g d^3x`` for callables ``(r, theta, phi) -> (ncomp, npts)``.

    Radial nodes are processed ``chunk`` at a time to bound memory.
    """
    th, ph, wa = angular_nodes(grid)
    r, wr = radial_nodes(grid)
    total = 0.0 + 0.0j
    for i0 in range(0, r.size, chunk):
        rr = r[i0 : i0 + chunk]
        R = np.repeat(rr, th.size)
        T = np.tile(th, rr.size)
        P = np.tile(ph, rr.size)
        W = np.repeat(wr[i0 : i0 + chunk] * rr**2, th.size) * np.tile(wa, rr.size)
        F = np.atleast_2d(f(R, T, P))
        G = np.atleast_2d(g(R, T, P))
        total += np.sum(np.conj(F) * G * W)
    return complex(total)
