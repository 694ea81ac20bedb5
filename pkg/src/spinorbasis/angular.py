"""Clebsch-Gordan coefficients, scalar harmonics and tensor harmonics.

Half-integer quantum numbers are :class:`fractions.Fraction` values
throughout; :func:`half` parses the ``"p/2"`` strings used by the CLI.

Phase conventions
-----------------
The scalar harmonic used here is the Condon-Shortley one times
``i**(|m|+m)``, which makes ``conj(Y_lm) == Y_l,-m``.  Equivalently it is
``N_lm P_l^|m|(cos theta) exp(i m phi)`` with the positive associated
Legendre function.  Each harmonic inside a tensor harmonic carries the
extra sign ``beta_m = (-1)**((|m|-m)/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exact as ex
from .exact import ExactComplex
from .kernels import legendre_table

__all__ = [
    "LabelError",
    "half",
    "fmt_half",
    "SpinLabels",
    "spin_labels",
    "clebsch_gordan",
    "modified_cg",
    "phase_beta",
    "scalar_harmonic",
    "harmonic_table",
    "HarmonicTerm",
    "TensorHarmonic",
    "tensor_harmonic_omega",
    "tensor_harmonic_lambda",
    "eval_tensor_harmonic",
]


class LabelError(ValueError):
    """Quantum-number labels violate a selection rule or are malformed."""


def half(x) -> Fraction:
    """Parse an integer or half-integer (``"3/2"``, ``"-1/2"``, ``2``)."""
    if isinstance(x, str):
        try:
            v = Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise LabelError(f"not a half-integer: {x!r}") from None
    elif isinstance(x, float):
        v = Fraction(x).limit_denominator(2)
        if float(v) != x:
            raise LabelError(f"not a half-integer: {x!r}")
    else:
        v = Fraction(x)
    if (2 * v).denominator != 1:
        raise LabelError(f"not a half-integer: {x!r}")
    return v


def fmt_half(x: Fraction) -> str:
    """Format as ``"p/2"`` or an integer string."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int(x: Fraction) -> int:
    if x.denominator != 1:
        raise LabelError(f"expected an integer, got {fmt_half(x)}")
    return x.numerator


@dataclass(frozen=True)
class SpinLabels:
    """Quantum numbers ``(s, l, j, m)`` of one tensor harmonic.

    ``t``, ``ltilde``, ``eta`` and ``kappa`` are derived.  For ``s == 0``
    the only allowed coupling is ``j == l`` with ``t == 0``.
    """

    s: Fraction
    l: int
    j: Fraction
    m: Fraction

    def __post_init__(self):
        s, j, m = half(self.s), half(self.j), half(self.m)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "m", m)
        if int(self.l) != self.l or self.l < 0:
            raise LabelError(f"l must be a nonnegative integer, got {self.l}")
        object.__setattr__(self, "l", int(self.l))
        if s < 0:
            raise LabelError("s must be nonnegative")
        if (j - self.l - s).denominator != 1:
            raise LabelError("j, l and s are not compatible half-integers")
        if (m - j).denominator != 1 or abs(m) > j:
            raise LabelError(f"m={fmt_half(m)} outside -j..j for j={fmt_half(j)}")
        if s == 0:
            if j != self.l:
                raise LabelError("s=0 requires j == l")
            return
        if (2 * s).denominator != 1 or (2 * s).numerator % 2 != 1:
            raise LabelError("s must be a positive half-odd integer or 0")
        if j < s:
            raise LabelError(f"j={fmt_half(j)} < s={fmt_half(s)} is excluded")
        t = 2 * (j - self.l)
        if t.denominator != 1 or t.numerator % 2 == 0 or abs(t) > 2 * s:
            raise LabelError(f"t=2(j-l)={t} must be odd with |t| <= 2s")

    @property
    def t(self) -> int:
        return _int(2 * (self.j - self.l))

    @property
    def ltilde(self) -> int:
        return _int(2 * self.j - self.l)

    @property
    def eta(self) -> int:
        t = self.t
        return 0 if t == 0 else (1 if t > 0 else -1)

    @property
    def kappa(self) -> Fraction:
        return self.t * (self.j + Fraction(1, 2))

    @property
    def ncomp(self) -> int:
        """Number of scalar components in one tensor harmonic (2s+1)."""
        return _int(2 * self.s) + 1

    def m_of(self, lam: int) -> Fraction:
        """``m(lambda) = m - s + lambda``."""
        return self.m - self.s + lam

    def lambdas(self) -> range:
        """Even block indices ``0, 2, ..., 2s-1``."""
        return range(0, _int(2 * self.s), 2)

    def partner(self) -> "SpinLabels":
        """Labels with ``l`` replaced by ``ltilde`` (same s, j, m)."""
        return SpinLabels(self.s, self.ltilde, self.j, self.m)

    def __str__(self):
        return (
            f"s={fmt_half(self.s)} l={self.l} j={fmt_half(self.j)} "
            f"m={fmt_half(self.m)}"
        )


def spin_labels(s, l, j, m) -> SpinLabels:
    return SpinLabels(half(s), int(l), half(j), half(m))


def _fact(x: Fraction) -> int:
    return math.factorial(_int(x))


@lru_cache(maxsize=65536)
def _cg_cached(j1, m1, j2, m2, J, M) -> ExactComplex:
    if M != m1 + m2:
        return ex.ZERO
    if abs(m1) > j1 or abs(m2) > j2 or abs(M) > J:
        return ex.ZERO
    if J < abs(j1 - j2) or J > j1 + j2:
        return ex.ZERO
    for a, b in ((j1, m1), (j2, m2), (J, M)):
        if (a - b).denominator != 1:
            return ex.ZERO
    if (j1 + j2 + J).denominator != 1:
        return ex.ZERO
    pre = Fraction(
        (2 * J + 1).numerator
        * _fact(J + j1 - j2)
        * _fact(J - j1 + j2)
        * _fact(j1 + j2 - J)
        * _fact(J + M)
        * _fact(J - M)
        * _fact(j1 - m1)
        * _fact(j1 + m1)
        * _fact(j2 - m2)
        * _fact(j2 + m2),
        _fact(j1 + j2 + J + 1),
    )
    total = Fraction(0)
    kmin = max(0, _int(j2 - J - m1), _int(j1 - J + m2))
    kmax = min(_int(j1 + j2 - J), _int(j1 - m1), _int(j2 + m2))
    for k in range(kmin, kmax + 1):
        den = (
            math.factorial(k)
            * _fact(j1 + j2 - J - k)
            * _fact(j1 - m1 - k)
            * _fact(j2 + m2 - k)
            * _fact(J - j2 + m1 + k)
            * _fact(J - j1 - m2 + k)
        )
        total += Fraction((-1) ** k, den)
    if total == 0:
        return ex.ZERO
    return ex.sqrt(pre) * total


def clebsch_gordan(l, s, m_l, m_s, j, m) -> ExactComplex:
    """Exact ``<l m_l; s m_s | j m>`` in the Condon-Shortley convention.

    Racah's single-sum formula with exact integer factorials.  Returns zero
    when a selection rule fails; raises :class:`LabelError` when the labels
    are not consistent half-integers.
    """
    args = [half(x) for x in (l, m_l, s, m_s, j, m)]
    j1, m1, j2, m2, J, M = args
    if j1 < 0 or j2 < 0 or J < 0:
        raise LabelError("angular momenta must be nonnegative")
    return _cg_cached(j1, m1, j2, m2, J, M)


def modified_cg(labels: SpinLabels, lam: int, l: int | None = None) -> ExactComplex:
    """``a^{s lam}_{l j m} = <l m(lam); s s-lam | j m>``.

    ``l`` overrides the orbital index (the lower block uses ``ltilde``).
    For ``s == 0`` this is ``delta_{lam,0}`` because ``j == l`` and
    ``m == m_l``.
    """
    ll = labels.l if l is None else l
    s = labels.s
    if lam < 0 or lam > 2 * s:
        return ex.ZERO
    return clebsch_gordan(ll, s, labels.m_of(lam), s - lam, labels.j, labels.m)


def phase_beta(m) -> ExactComplex:
    """``beta_m = (-1)**((|m|-m)/2)``: +1 for m >= 0, (-1)**|m| otherwise."""
    m = half(m)
    e = (abs(m) - m) / 2
    if e.denominator != 1:
        raise LabelError(f"beta undefined for m={fmt_half(m)}")
    return ex.ONE if e.numerator % 2 == 0 else -ex.ONE


def beta_float(m) -> float:
    m = Fraction(m)
    return 1.0 if m >= 0 or int(abs(m)) % 2 == 0 else -1.0


def harmonic_table(lmax: int, theta, phi) -> dict:
    """All ``Y_lm`` with ``l <= lmax`` on the given points.

    Returns a dict ``(l, m) -> complex array`` broadcast to the shape of
    ``theta``/``phi``.
    """
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    shape = theta.shape
    x = np.cos(theta).ravel()
    P = legendre_table(lmax, x)
    ph = phi.ravel()
    out = {}
    for m in range(0, lmax + 1):
        e = np.exp(1j * m * ph)
        for l in range(m, lmax + 1):
            v = (P[l, m] * e).reshape(shape)
            out[(l, m)] = v
            if m:
                out[(l, -m)] = np.conj(v)
    return out


def scalar_harmonic(l: int, m: int, theta, phi):
    """``Y_lm(theta, phi)`` with ``conj(Y_lm) == Y_l,-m``."""
    if l < 0 or abs(m) > l:
        raise LabelError(f"|m| > l in Y_{l},{m}")
    return harmonic_table(l, theta, phi)[(l, m)]


@dataclass(frozen=True)
class HarmonicTerm:
    """One scalar component: ``coeff * Y_{l, m}`` (coefficient includes beta)."""

    coeff: ExactComplex
    l: int
    m: int

    def is_zero(self) -> bool:
        return self.coeff.is_zero() or abs(self.m) > self.l or self.l < 0


@dataclass(frozen=True)
class TensorHarmonic:
    """Symbolic stack of ``2s+1`` scalar components.

    ``components`` are flattened in stacking order: for Omega the two-spinors
    for lambda = 0, 2, ..., 2s-1; for Lambda the reversed order, starting
    with the ``a^{s,2s}`` component.
    """

    kind: str
    labels: SpinLabels
    orbital_l: int
    components: tuple

    def two_spinors(self):
        c = self.components
        return [(c[i], c[i + 1]) for i in range(0, len(c) - 1, 2)]

    def __len__(self):
        return len(self.components)


def _term(coeff: ExactComplex, l: int, m: Fraction) -> HarmonicTerm:
    m = _int(m)
    if abs(m) > l:
        return HarmonicTerm(ex.ZERO, l, m)
    return HarmonicTerm(coeff, l, m)


def tensor_harmonic_omega(labels: SpinLabels) -> TensorHarmonic:
    """Omega^s_{ljm}: component ``lam'`` is ``(+/-) eta a^{lam'} beta Y_{l m(lam')}``.

    The sign is minus on the second entry of each two-spinor.  For
    ``s == 0`` the single component is ``beta_m Y_{lm}``.
    """
    if labels.s == 0:
        return TensorHarmonic(
            "omega", labels, labels.l,
            (_term(phase_beta(labels.m), labels.l, labels.m),),
        )
    eta = labels.eta
    comps = []
    for lp in range(labels.ncomp):
        mm = labels.m_of(lp)
        sign = eta if lp % 2 == 0 else -eta
        if abs(mm) > labels.l:
            comps.append(_term(ex.ZERO, labels.l, mm))
            continue
        c = modified_cg(labels, lp) * phase_beta(mm) * sign
        comps.append(_term(c, labels.l, mm))
    return TensorHarmonic("omega", labels, labels.l, tuple(comps))


def tensor_harmonic_lambda(labels: SpinLabels) -> TensorHarmonic:
    """Lambda^s_{ltilde jm}: components ``-i a^{lam'}_{ltilde} beta Y_{ltilde m(lam')}``.

    Ordered ``lam' = 2s, 2s-1, ..., 0``.  For ``s == 0`` the single
    component is ``-i beta_m Y_{lm}``.
    """
    if labels.s == 0:
        return TensorHarmonic(
            "lambda", labels, labels.l,
            (_term(-ex.I * phase_beta(labels.m), labels.l, labels.m),),
        )
    lt = labels.ltilde
    comps = []
    for lp in range(labels.ncomp - 1, -1, -1):
        mm = labels.m_of(lp)
        if abs(mm) > lt:
            comps.append(_term(ex.ZERO, lt, mm))
            continue
        c = -ex.I * modified_cg(labels, lp, l=lt) * phase_beta(mm)
        comps.append(_term(c, lt, mm))
    return TensorHarmonic("lambda", labels, lt, tuple(comps))


def eval_tensor_harmonic(h: TensorHarmonic, theta, phi, table=None) -> np.ndarray:
    """Numeric components, shape ``(2s+1,) + shape(theta)``.

    ``table`` may be a precomputed :func:`harmonic_table` covering the
    needed degrees.
    """
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    if table is None:
        lmax = max([c.l for c in h.components] + [0])
        table = harmonic_table(lmax, theta, phi)
    out = np.zeros((len(h.components),) + theta.shape, dtype=complex)
    for i, c in enumerate(h.components):
        if not c.is_zero():
            out[i] = complex(c.coeff) * table[(c.l, c.m)]
    return out
