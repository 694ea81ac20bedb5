import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate
from scipy.special import eval_genlaguerre

from spinorbasis import exact as ex
from spinorbasis.quad import GridSpec, radial_inner
from spinorbasis.radial import (
    RadialFamily,
    RadialParameterError,
    normalization_N,
    psi_alpha_dual_constant,
    psi_alpha_dual_radial,
    psi_alpha_norm,
    psi_alpha_radial,
    psi_alpha_radial_deriv,
    sto_overlap,
    sto_radial,
    sto_radial_deriv,
)

R = np.linspace(0.05, 12.0, 97)


def test_sto_spot_value():
    assert abs(sto_radial(1, 1.0, 1.0) - 2 * math.exp(-1)) < 1e-15
    assert abs(sto_radial(1, 1.0, 1.0) - 0.7357588823428847) < 1e-15


def test_sto_overlap_closed_form():
    assert abs(sto_overlap(2, 3) - 120 / math.sqrt(17280)) < 1e-15
    for n in range(1, 7):
        assert abs(sto_overlap(n, n) - 1) < 1e-13


@pytest.mark.parametrize("zeta", [0.7, 1.0, 2.3])
def test_sto_overlap_quadrature(zeta):
    for n1 in range(1, 7):
        for n2 in range(1, 7):
            q = radial_inner(lambda r: sto_radial(n1, zeta, r), lambda r: sto_radial(n2, zeta, r),
                             zeta_eff=2 * zeta)
            assert abs(q - sto_overlap(n1, n2)) < 1e-10


def test_psi_alpha_matches_library_laguerre():
    zeta = 1.3
    for alpha in (2, 1, 0, -1, -2):
        for n in range(1, 6):
            for l in range(n):
                if 2 * l + 2 - alpha <= 0:
                    continue
                x = 2 * zeta * R
                want = (psi_alpha_norm(alpha, n, l, zeta) * x**l * np.exp(-x / 2)
                        * eval_genlaguerre(n - l - 1, 2 * l + 2 - alpha, x))
                assert np.allclose(psi_alpha_radial(alpha, n, l, zeta, R), want, rtol=1e-12, atol=1e-14)


def test_empty_shell_is_zero():
    assert np.all(psi_alpha_radial(1, 2, 2, 1.0, R) == 0)
    assert np.all(psi_alpha_dual_radial(0, 1, 3, 1.0, R) == 0)
    assert np.all(RadialFamily("sto").value(2, 2, R) == 0)


@pytest.mark.parametrize("alpha", [1, 0, -1])
def test_biorthonormality(alpha):
    zeta = 0.9
    for l in range(0, 4):
        for n1 in range(l + 1, 6):
            for n2 in range(l + 1, 6):
                q = radial_inner(lambda r: psi_alpha_dual_radial(alpha, n1, l, zeta, r),
                                 lambda r: psi_alpha_radial(alpha, n2, l, zeta, r),
                                 zeta_eff=2 * zeta)
                assert abs(q - (n1 == n2)) < 1e-10


def test_alpha_one_ground_state_is_slater_like():
    ratio = psi_alpha_radial(1, 1, 0, 1.4, R) / sto_radial(1, 1.4, R)
    assert np.ptp(ratio) < 1e-12 * abs(ratio[0])


def test_alpha_zero_dual_is_primal():
    assert psi_alpha_dual_constant(0, 3) == 1
    assert np.allclose(psi_alpha_dual_radial(0, 3, 1, 1.0, R), psi_alpha_radial(0, 3, 1, 1.0, R))


@pytest.mark.parametrize("alpha,n,l", [(1, 3, 1), (0, 4, 2), (-1, 2, 0), (2, 3, 2)])
def test_dual_constant_from_laguerre_norm_integral(alpha, n, l):
    p, b = n - l - 1, 2 * l + 2 - alpha
    val, _ = integrate.quad(lambda x: x**b * np.exp(-x) * eval_genlaguerre(p, b, x) ** 2, 0, np.inf)
    assert abs(val - math.gamma(p + b + 1) / math.factorial(p)) < 1e-9 * val
    zeta = 1.0
    # int Rbar R r^2 dr = c N^2 (2 zeta)^-3 Gamma(p+b+1)/p!
    c = float(psi_alpha_dual_constant(alpha, n))
    assert abs(c * psi_alpha_norm(alpha, n, l, zeta) ** 2 * val / (2 * zeta) ** 3 - 1) < 1e-9


def test_tail_decay():
    for alpha in (1, 0, -1):
        r = np.array([40.0, 60.0])
        assert np.all(abs(psi_alpha_radial(alpha, 4, 1, 1.0, r)) < 1e-12)


def test_derivatives_against_differences():
    h = 1e-6
    for fam in (RadialFamily("psi_alpha", 1, 1.2), RadialFamily("psi_alpha", -1, 0.8),
                RadialFamily("sto", zeta=1.1)):
        for n in range(1, 5):
            for l in range(n):
                fd = (fam.value(n, l, R + h) - fam.value(n, l, R - h)) / (2 * h)
                assert np.allclose(fam.deriv(n, l, R), fd, rtol=1e-7, atol=1e-8)
    assert np.allclose(sto_radial_deriv(1, 1.0, R), -sto_radial(1, 1.0, R))
    assert np.allclose(psi_alpha_radial_deriv(1, 1, 0, 1.0, R), -psi_alpha_radial(1, 1, 0, 1.0, R))


def test_normalization_N():
    assert normalization_N(1, 1) == ex.ONE
    assert normalization_N(2, 1) == ex.sqrt(Fraction(1, 2))
    assert normalization_N(3, 2) == ex.sqrt(Fraction(1, 2))


def test_parameter_errors():
    with pytest.raises(RadialParameterError):
        psi_alpha_radial(2, 1, 0, 1.0, R)
    with pytest.raises(RadialParameterError):
        psi_alpha_radial(3, 2, 1, 1.0, R)
    with pytest.raises(RadialParameterError):
        sto_radial(0, 1.0, R)
    with pytest.raises(RadialParameterError):
        RadialFamily("psi_alpha", 1, -1.0)
