"""Gradient coefficients, coupling coefficients and the sigma.p expansion.

For a radial ``f`` and ``rho_k = f' + (delta_{k,-1} - k l) f / r``::

    d/dz      (f beta_m Y_lm) = sum_k rho_k b_k^lm beta_m     Y_{l+k,m}
    (dx - idy)(f beta_m Y_lm) = sum_k rho_k d_k^lm beta_{m-1} Y_{l+k,m-1}
    (dx + idy)(f beta_m Y_lm) = sum_k rho_k c_k^lm beta_{m+1} Y_{l+k,m+1}

with ``k`` in ``{-1, +1}``.  Units are ``hbar = c = 1``; the ``c*hbar``
prefactor of a sigma.p term is carried as :data:`UNIT_TAG`.

Two evaluation modes exist for b/c/d.  ``formal=False`` (physical) returns
zero whenever ``|m| > l`` or the target label is out of range.
``formal=True`` applies the closed forms to any ``(l, m)``; the square
root of a negative radicand then produces ``i``.  The tabulated coupling
coefficients follow the formal reading.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exact as ex
from .angular import (
    LabelError,
    SpinLabels,
    TensorHarmonic,
    HarmonicTerm,
    harmonic_table,
    modified_cg,
    phase_beta,
    tensor_harmonic_lambda,
    tensor_harmonic_omega,
)
from .exact import ExactComplex
from .radial import RadialFamily

__all__ = [
    "UNIT_TAG",
    "KS",
    "grad_coeff_b",
    "grad_coeff_c",
    "grad_coeff_d",
    "radial_bracket",
    "DerivTerm",
    "apply_cartesian_derivative",
    "eval_derivative_expansion",
    "coupling_coeffs",
    "shifted_harmonics",
    "kappa",
    "HarmonicSum",
    "SigmaPExpansion",
    "sigma_p_apply",
    "sigma_p_printed",
    "eval_expansion",
]

UNIT_TAG = "c*hbar"
KS = (-1, 1)


def _check_k(k):
    if k not in KS:
        raise ValueError(f"k must be -1 or +1, got {k}")


def _den(k: int, l: int) -> int:
    return (2 * (l + 1) + k) * (2 * l + k)


def _in_range(l, m) -> bool:
    return l >= 0 and abs(m) <= l


def grad_coeff_b(k: int, l: int, m, formal: bool = False) -> ExactComplex:
    """``b_k^lm = sqrt((l+m+d)(l-m+d) / ((2(l+1)+k)(2l+k)))``, ``d = delta_k1``."""
    _check_k(k)
    m = Fraction(m)
    if not formal and (not _in_range(l, m) or not _in_range(l + k, m)):
        return ex.ZERO
    d1 = 1 if k == 1 else 0
    den = _den(k, l)
    if den == 0:
        return ex.ZERO
    return ex.sqrt((l + m + d1) * (l - m + d1) / Fraction(den))


def grad_coeff_d(k: int, l: int, m, formal: bool = False) -> ExactComplex:
    """``d_k^lm = -k sqrt((l-km+2d)(l-k(m-1)) / ((2(l+1)+k)(2l+k)))``."""
    _check_k(k)
    m = Fraction(m)
    if not formal and (not _in_range(l, m) or not _in_range(l + k, m - 1)):
        return ex.ZERO
    d2 = 2 if k == 1 else 0
    den = _den(k, l)
    if den == 0:
        return ex.ZERO
    return -k * ex.sqrt((l - k * m + d2) * (l - k * (m - 1)) / Fraction(den))


def grad_coeff_c(k: int, l: int, m, formal: bool = False) -> ExactComplex:
    """``c_k^lm = k sqrt((l+km+2d)(l+k(m+1)) / ((2(l+1)+k)(2l+k))) = -d_k^{l,-m}``."""
    _check_k(k)
    m = Fraction(m)
    if not formal and (not _in_range(l, m) or not _in_range(l + k, m + 1)):
        return ex.ZERO
    d2 = 2 if k == 1 else 0
    den = _den(k, l)
    if den == 0:
        return ex.ZERO
    return k * ex.sqrt((l + k * m + d2) * (l + k * (m + 1)) / Fraction(den))


def radial_bracket(k: int, l: int, f, df, r):
    """``f'(r) + (delta_{k,-1} - k l) f(r) / r``."""
    _check_k(k)
    r = np.asarray(r, float)
    return df + ((1 if k == -1 else 0) - k * l) * f / r


@dataclass(frozen=True)
class DerivTerm:
    """One term ``coeff * rho_k(l) * Y_{l+k, m'}`` of a derivative expansion.

    ``coeff`` already includes the ``beta_m beta_m'`` phases, so the
    input is ``f Y_lm`` (not ``f beta_m Y_lm``).
    """

    k: int
    radial_l: int
    coeff: ExactComplex
    l: int
    m: int


_AXES = ("z", "minus", "plus")


def apply_cartesian_derivative(axis: str, l: int, m: int, coeff=ex.ONE):
    """Expand ``D_axis [f(r) * coeff * Y_lm]`` into :class:`DerivTerm`.

    ``axis`` is ``"z"``, ``"minus"`` (d/dx - i d/dy) or ``"plus"``
    (d/dx + i d/dy).  The radial operator of each term is
    :func:`radial_bracket` with index ``k`` and degree ``l``.
    """
    if axis not in _AXES:
        raise ValueError(f"axis must be one of {_AXES}, got {axis!r}")
    coeff = ex.exact(coeff)
    out = []
    if coeff.is_zero() or not _in_range(l, m):
        return out
    bm = phase_beta(m)
    for k in KS:
        if axis == "z":
            g, mp = grad_coeff_b(k, l, m), m
        elif axis == "minus":
            g, mp = grad_coeff_d(k, l, m), m - 1
        else:
            g, mp = grad_coeff_c(k, l, m), m + 1
        if g.is_zero() or not _in_range(l + k, mp):
            continue
        out.append(DerivTerm(k, l, coeff * bm * g * phase_beta(mp), l + k, mp))
    return out


def eval_derivative_expansion(terms, f, df, r, theta, phi):
    """Numeric value of a list of :class:`DerivTerm` for radial values ``f``, ``df``."""
    r, theta, phi = np.broadcast_arrays(
        np.asarray(r, float), np.asarray(theta, float), np.asarray(phi, float)
    )
    lmax = max([t.l for t in terms] + [0])
    table = harmonic_table(lmax, theta, phi)
    out = np.zeros(r.shape, dtype=complex)
    for t in terms:
        out += complex(t.coeff) * radial_bracket(t.k, t.radial_l, f, df, r) * table[(t.l, t.m)]
    return out


def kappa(labels: SpinLabels) -> Fraction:
    """``kappa = t (j + 1/2)``: ``l+1`` for ``t = +1``, ``-l`` for ``t = -1``."""
    return labels.kappa


def coupling_coeffs(k: int, labels: SpinLabels, lam: int, formal: bool = True):
    """``(kA, kB, kC, kD)`` for block index ``lam``.

    A and B use the orbital index ``l``; C and D use ``ltilde`` and the
    coefficient indices ``2s - lam`` and ``2s - (lam + 1)``.  ``formal``
    selects the b/c/d reading (see module docstring); it only matters for
    C and D.
    """
    _check_k(k)
    if lam % 2 or lam < 0 or lam > 2 * labels.s - 1:
        raise LabelError(f"lambda must be even in 0..2s-1, got {lam}")
    s2 = int(2 * labels.s)
    l, lt = labels.l, labels.ltilde
    m0, m1 = labels.m_of(lam), labels.m_of(lam + 1)
    a0, a1 = modified_cg(labels, lam), modified_cg(labels, lam + 1)
    A = a0 * grad_coeff_b(k, l, m0, formal) - a1 * grad_coeff_d(k, l, m1, formal)
    B = a1 * grad_coeff_b(k, l, m1, formal) + a0 * grad_coeff_c(k, l, m0, formal)
    at0 = modified_cg(labels, s2 - lam, l=lt)
    at1 = modified_cg(labels, s2 - lam - 1, l=lt)
    C = at1 * grad_coeff_d(k, lt, m1, formal) + at0 * grad_coeff_b(k, lt, m0, formal)
    D = at0 * grad_coeff_c(k, lt, m0, formal) - at1 * grad_coeff_b(k, lt, m1, formal)
    return A, B, C, D


def _hterm(coeff, l, m):
    m = int(m)
    if l < 0 or abs(m) > l:
        return HarmonicTerm(ex.ZERO, l, m)
    return HarmonicTerm(coeff, l, m)


def shifted_harmonics(k: int, labels: SpinLabels, lam: int, formal: bool = True):
    """Two-spinors ``(k Omega^{s lam}, k Lambda^{s, 2s-lam})`` of degree ``l+k``.

    Entries are :class:`HarmonicTerm` with the beta phase folded in.
    """
    A, B, C, D = coupling_coeffs(k, labels, lam, formal)
    eta = labels.eta
    L = labels.l + k
    m0, m1 = labels.m_of(lam), labels.m_of(lam + 1)
    kom = (
        _hterm(eta * A * phase_beta(m0), L, m0),
        _hterm(-eta * B * phase_beta(m1), L, m1),
    )
    klam = (
        _hterm(-ex.I * C * phase_beta(m1), L, m1),
        _hterm(-ex.I * D * phase_beta(m0), L, m0),
    )
    return kom, klam


@dataclass
class HarmonicSum:
    """Sparse map ``(l, m) -> coefficient`` for one scalar component."""

    terms: dict = field(default_factory=dict)

    def add(self, l, m, c):
        key = (int(l), int(m))
        v = self.terms.get(key, ex.ZERO) + c
        if v.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = v

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, HarmonicSum) and self.terms == other.terms


@dataclass
class SigmaPExpansion:
    """``sigma.p [R_{n L} X] = UNIT_TAG * sum_k rho_k(L) * parts[k]``.

    ``parts[k]`` holds one :class:`HarmonicSum` per scalar component of the
    block (``2s+1`` entries); ``radial_l`` is ``L``.
    """

    block: str
    labels: SpinLabels
    radial_l: int
    parts: dict

    def evaluate(self, family: RadialFamily, n: int, r, theta, phi) -> np.ndarray:
        return eval_expansion(self.parts, self.radial_l, family, n, r, theta, phi)


def eval_expansion(parts, radial_l, family, n, r, theta, phi):
    """Numeric ``sum_k rho_k * parts[k]``, shape ``(ncomp,) + shape(r)``."""
    r, theta, phi = np.broadcast_arrays(
        np.asarray(r, float), np.asarray(theta, float), np.asarray(phi, float)
    )
    f = family.value(n, radial_l, r)
    df = family.deriv(n, radial_l, r)
    lmax = max([l for comps in parts.values() for h in comps for l, _ in h.terms] + [0])
    table = harmonic_table(lmax, theta, phi)
    ncomp = len(next(iter(parts.values())))
    out = np.zeros((ncomp,) + r.shape, dtype=complex)
    for k, comps in parts.items():
        rho = radial_bracket(k, radial_l, f, df, r)
        for i, h in enumerate(comps):
            for (l, m), c in h.terms.items():
                out[i] += complex(c) * rho * table[(l, m)]
    return out


def _pauli_pair(u: HarmonicTerm, v: HarmonicTerm):
    """``-i sigma.grad`` on the two-spinor ``(u, v)``, split by k."""
    out = {k: (HarmonicSum(), HarmonicSum()) for k in KS}
    mi = -ex.I

    def push(axis, term, slot, sign):
        if term.is_zero():
            return
        for dt in apply_cartesian_derivative(axis, term.l, term.m, term.coeff):
            out[dt.k][slot].add(dt.l, dt.m, mi * sign * dt.coeff)

    # upper = d_z u + d_- v ; lower = d_+ u - d_z v
    push("z", u, 0, 1)
    push("minus", v, 0, 1)
    push("plus", u, 1, 1)
    push("z", v, 1, -1)
    return out


def sigma_p_apply(block: str, labels: SpinLabels) -> SigmaPExpansion:
    """Exact expansion of ``sigma.p`` acting on ``R Omega^s`` or ``R Lambda^s``.

    ``block`` is ``"upper"`` (Omega, radial degree ``l``) or ``"lower"``
    (Lambda, radial degree ``ltilde``).  The Pauli operator acts on each
    consecutive pair of scalar components, and every Cartesian derivative
    is expanded with the b/c/d coefficients.
    """
    if block == "upper":
        h: TensorHarmonic = tensor_harmonic_omega(labels)
    elif block == "lower":
        h = tensor_harmonic_lambda(labels)
    else:
        raise ValueError("block must be 'upper' or 'lower'")
    comps = h.components
    parts = {k: [HarmonicSum() for _ in comps] for k in KS}
    for i in range(0, len(comps) - 1, 2):
        res = _pauli_pair(comps[i], comps[i + 1])
        for k in KS:
            for slot in (0, 1):
                for (l, m), c in res[k][slot].terms.items():
                    parts[k][i + slot].add(l, m, c)
    return SigmaPExpansion(block, labels, h.orbital_l, parts)


def sigma_p_printed(block: str, labels: SpinLabels, formal: bool = True) -> SigmaPExpansion:
    """The tabulated-coefficient form of the sigma.p relations.

    Upper: ``sigma.p [R_nl Omega^{s lam}] = sum_k rho_k(l) kLambda^{s,2s-lam}``
    with ``kLambda`` built from C and D.  Lower:
    ``sigma.p [R_{n ltilde} Lambda^{s,2s-lam}] = -sum_k rho_k(ltilde) kOmega^{s lam}``
    with A and B evaluated at ``ltilde`` on harmonics of degree ``ltilde+k``.
    """
    ncomp = labels.ncomp
    parts = {k: [HarmonicSum() for _ in range(ncomp)] for k in KS}
    if block == "upper":
        for lam in labels.lambdas():
            for k in KS:
                _, klam = shifted_harmonics(k, labels, lam, formal)
                for slot, t in enumerate(klam):
                    if not t.is_zero():
                        parts[k][lam + slot].add(t.l, t.m, t.coeff)
        return SigmaPExpansion("upper", labels, labels.l, parts)
    if block != "lower":
        raise ValueError("block must be 'upper' or 'lower'")
    twin = SpinLabels(labels.s, labels.ltilde, labels.j, labels.m) if _valid_twin(labels) else None
    for lam in labels.lambdas():
        for k in KS:
            if twin is None:
                continue
            kom, _ = shifted_harmonics(k, twin, lam, formal)
            kom = (_hterm(ex.exact(labels.eta) * twin.eta * t.coeff, t.l, t.m) for t in kom)
            for slot, t in enumerate(kom):
                if not t.is_zero():
                    parts[k][lam + slot].add(t.l, t.m, -t.coeff)
    return SigmaPExpansion("lower", labels, labels.ltilde, parts)


def _valid_twin(labels: SpinLabels) -> bool:
    try:
        SpinLabels(labels.s, labels.ltilde, labels.j, labels.m)
    except LabelError:
        return False
    return True
