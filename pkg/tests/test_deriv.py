from fractions import Fraction

import numpy as np
import pytest

from spinorbasis import exact as ex
from spinorbasis.angular import LabelError, SpinLabels, harmonic_table
from spinorbasis.deriv import (
    KS,
    apply_cartesian_derivative,
    coupling_coeffs,
    eval_derivative_expansion,
    grad_coeff_b,
    grad_coeff_c,
    grad_coeff_d,
    kappa,
    shifted_harmonics,
    sigma_p_apply,
)
from spinorbasis.verify import gradient_fd_check, sigma_p_fd_check, spin_half_collapse

H = Fraction(1, 2)


def test_b_example():
    assert grad_coeff_b(1, 0, 0) == 1 / ex.sqrt(3)
    assert grad_coeff_b(-1, 0, 0) == ex.ZERO


def test_c_d_antisymmetry():
    for l in range(6):
        for m in range(-l, l + 1):
            for k in KS:
                assert grad_coeff_c(k, l, m) == -grad_coeff_d(k, l, -m)
                assert grad_coeff_c(k, l, m, formal=True) == -grad_coeff_d(k, l, -m, formal=True)


def test_out_of_range_targets_vanish():
    assert grad_coeff_d(-1, 2, -2) == ex.ZERO
    assert grad_coeff_c(-1, 2, 2) == ex.ZERO
    assert grad_coeff_c(1, 2, 2) != ex.ZERO


def test_dz_of_constant_harmonic():
    terms = apply_cartesian_derivative("z", 0, 0)
    assert len(terms) == 1 and terms[0].k == 1 and terms[0].coeff == 1 / ex.sqrt(3)


def test_raising_derivative_of_top_harmonic():
    terms = apply_cartesian_derivative("plus", 3, 3)
    assert [(t.k, t.l, t.m) for t in terms] == [(1, 4, 4)]


def test_fd_single_example():
    rng = np.random.default_rng(3)
    r, th, ph = rng.uniform(0.5, 3, 50), rng.uniform(0.2, 3.0, 50), rng.uniform(0, 6.2, 50)
    f = lambda rr: np.exp(-rr)

    def val(x, y, z):
        rr = np.sqrt(x * x + y * y + z * z)
        return f(rr) * harmonic_table(1, np.arccos(z / rr), np.arctan2(y, x))[(1, 0)]

    x, y, z = r * np.sin(th) * np.cos(ph), r * np.sin(th) * np.sin(ph), r * np.cos(th)
    h = 1e-5
    fd = (val(x, y, z + h) - val(x, y, z - h)) / (2 * h)
    an = eval_derivative_expansion(apply_cartesian_derivative("z", 1, 0), f(r), -f(r), r, th, ph)
    assert np.max(abs(an - fd)) / np.max(abs(fd)) < 1e-7


def test_fd_all_expansions():
    assert gradient_fd_check(lmax=3, points=50).passed


def test_coupling_examples():
    A, B, C, D = coupling_coeffs(1, SpinLabels(H, 0, H, H), 0)
    assert (A, B, C, D) == (1 / ex.sqrt(3), ex.sqrt(Fraction(2, 3)),
                            ex.sqrt(Fraction(2, 5)), ex.sqrt(Fraction(3, 5)))
    A, B, C, D = coupling_coeffs(1, SpinLabels(H, 1, Fraction(3, 2), Fraction(3, 2)), 0)
    assert (A, B, C, D) == (1 / ex.sqrt(5), 2 / ex.sqrt(5),
                            ex.sqrt(Fraction(2, 7)), ex.sqrt(Fraction(5, 7)))
    A, B, _, _ = coupling_coeffs(1, SpinLabels(Fraction(3, 2), 0, Fraction(3, 2), Fraction(3, 2)), 0)
    assert (A, B) == (1 / ex.sqrt(3), ex.sqrt(Fraction(2, 3)))


def test_coupling_lambda_validation():
    with pytest.raises(LabelError):
        coupling_coeffs(1, SpinLabels(H, 0, H, H), 1)
    with pytest.raises(ValueError):
        coupling_coeffs(0, SpinLabels(H, 0, H, H), 0)


def test_spin_half_only_k_equal_t_survives():
    for l in range(4):
        for j in (l - H, l + H):
            if j < 0:
                continue
            lab = SpinLabels(H, l, j, H)
            kom, _ = shifted_harmonics(-lab.t, lab, 0)
            assert all(t.is_zero() for t in kom)
            kom, _ = shifted_harmonics(lab.t, lab, 0)
            assert any(not t.is_zero() for t in kom)


def test_kappa():
    for l in range(5):
        assert kappa(SpinLabels(H, l, l + H, H)) == l + 1
        if l:
            assert kappa(SpinLabels(H, l, l - H, H)) == -l


def test_spin_half_collapse():
    checks = spin_half_collapse()
    assert checks[0].passed and checks[1].passed


def test_sigma_p_spec_case_fd():
    # s=3/2, l=1, j=3/2 covered with all other labels up to l=3
    assert sigma_p_fd_check("3/2").passed
    assert sigma_p_fd_check("1/2").passed


def test_sigma_p_upper_spin_half_single_term():
    lab = SpinLabels(H, 2, Fraction(5, 2), -Fraction(3, 2))
    exp = sigma_p_apply("upper", lab)
    assert all(hs.is_zero() for hs in exp.parts[-1])
    assert not all(hs.is_zero() for hs in exp.parts[1])
    with pytest.raises(ValueError):
        sigma_p_apply("middle", lab)
