from fractions import Fraction

import numpy as np
import pytest
from scipy.special import sph_harm_y

from spinorbasis import exact as ex
from spinorbasis.angular import (
    LabelError,
    SpinLabels,
    clebsch_gordan,
    eval_tensor_harmonic,
    half,
    harmonic_table,
    modified_cg,
    phase_beta,
    scalar_harmonic,
    tensor_harmonic_lambda,
    tensor_harmonic_omega,
)
from spinorbasis.quad import GridSpec, angular_inner, angular_nodes

H = Fraction(1, 2)


def test_label_validation():
    lab = SpinLabels(H, 1, Fraction(3, 2), H)
    assert (lab.t, lab.ltilde, lab.eta, lab.kappa) == (1, 2, 1, 2)
    assert SpinLabels(H, 1, H, H).kappa == -1
    for bad in ((H, 1, Fraction(5, 2), H), (H, 0, H, Fraction(3, 2)), (Fraction(3, 2), 1, H, H)):
        with pytest.raises(LabelError):
            SpinLabels(*bad)
    with pytest.raises(LabelError):
        half("0.3")


def test_m_of_lambda():
    lab = SpinLabels(Fraction(3, 2), 2, Fraction(5, 2), H)
    assert [lab.m_of(k) for k in range(4)] == [-1, 0, 1, 2]


def test_cg_examples():
    assert clebsch_gordan(0, H, 0, H, H, H) == ex.ONE
    assert clebsch_gordan(1, H, 0, H, Fraction(3, 2), H) == ex.sqrt(Fraction(2, 3))


def _jsq_matrix(l, s):
    """J^2 = Jz^2 + Jz + J-J+ on the product basis |m_l, m_s>."""
    ml = [Fraction(l) - i for i in range(2 * l + 1)]
    ms = [s - i for i in range(int(2 * s) + 1)]
    basis = [(a, b) for a in ml for b in ms]
    idx = {b: i for i, b in enumerate(basis)}
    n = len(basis)
    J = np.zeros((n, n))

    def lad(jj, mm, up):
        return np.sqrt(float(jj * (jj + 1) - mm * (mm + (1 if up else -1))))

    for i, (a, b) in enumerate(basis):
        J[i, i] += float((a + b) ** 2 + a + b)
        # diagonal of L-L+ + S-S+
        J[i, i] += float(l * (l + 1) - a * (a + 1)) + float(s * (s + 1) - b * (b + 1))
        # L+S- and L-S+
        if a + 1 <= l and b - 1 >= -s:
            k = idx[(a + 1, b - 1)]
            J[k, i] += lad(Fraction(l), a, True) * lad(s, b, False)
        if a - 1 >= -l and b + 1 <= s:
            k = idx[(a - 1, b + 1)]
            J[k, i] += lad(Fraction(l), a, False) * lad(s, b, True)
    return basis, J


@pytest.mark.parametrize("l,s", [(1, H), (2, H), (2, Fraction(3, 2)), (3, Fraction(3, 2)),
                                 (2, Fraction(5, 2))])
def test_cg_vectors_are_j2_eigenvectors(l, s):
    basis, J = _jsq_matrix(l, s)
    assert np.allclose(J, J.T)
    j = abs(l - s)
    while j <= l + s:
        m = -j
        while m <= j:
            v = np.array([float(clebsch_gordan(l, s, a, b, j, m)) if a + b == m else 0.0
                          for a, b in basis])
            assert abs(np.linalg.norm(v) - 1) < 1e-13
            assert np.allclose(J @ v, float(j * (j + 1)) * v, atol=1e-12)
            m += 1
        j += 1


def test_cg_brute_force_example():
    # <2 1; 1/2 -1/2 | 5/2 1/2> from the J^2 eigenvector with the stretched-sign fix
    l, s = 2, H
    basis, J = _jsq_matrix(l, s)
    sel = [i for i, (a, b) in enumerate(basis) if a + b == H]
    w, V = np.linalg.eigh(J[np.ix_(sel, sel)])
    v = V[:, np.argmin(abs(w - 35 / 4))]
    sub = [basis[i] for i in sel]
    v *= np.sign(v[sub.index((0, H))]) * np.sign(float(clebsch_gordan(2, H, 0, H, Fraction(5, 2), H)))
    want = v[sub.index((1, -H))]
    assert abs(float(clebsch_gordan(2, H, 1, -H, Fraction(5, 2), H)) - want) < 1e-13


def test_cg_orthogonality():
    l, s = 3, Fraction(3, 2)
    rows = []
    for ti in range(int(2 * s) + 1):
        j = l + s - ti
        rows.append([float(clebsch_gordan(l, s, H - b, b, j, H)) for b in (Fraction(3, 2), H, -H, -Fraction(3, 2))])
    M = np.array(rows)
    assert np.allclose(M @ M.T, np.eye(4), atol=1e-14)


def test_modified_cg_examples():
    assert modified_cg(SpinLabels(0, 2, 2, 1), 0) == ex.ONE
    assert modified_cg(SpinLabels(H, 1, Fraction(3, 2), Fraction(3, 2)), 0) == ex.ONE
    assert modified_cg(SpinLabels(Fraction(3, 2), 1, Fraction(3, 2), Fraction(3, 2)), 0) == -ex.sqrt(Fraction(3, 5))


def test_phase_beta():
    assert phase_beta(2) == ex.ONE
    assert phase_beta(-1) == -ex.ONE
    assert phase_beta(-2) == ex.ONE


def test_y00():
    v = scalar_harmonic(0, 0, 0.3, 1.1)
    assert abs(v - 1 / np.sqrt(4 * np.pi)) < 1e-15


def test_conjugation_symmetry():
    rng = np.random.default_rng(1)
    th, ph = rng.uniform(0, np.pi, 20), rng.uniform(0, 2 * np.pi, 20)
    assert np.allclose(np.conj(scalar_harmonic(2, 1, th, ph)), scalar_harmonic(2, -1, th, ph), atol=1e-15)


def test_phase_against_condon_shortley_library():
    rng = np.random.default_rng(2)
    th, ph = rng.uniform(0, np.pi, 30), rng.uniform(0, 2 * np.pi, 30)
    tab = harmonic_table(6, th, ph)
    for l in range(7):
        for m in range(-l, l + 1):
            ref = sph_harm_y(l, m, th, ph)
            phase = (-1) ** m if m > 0 else 1
            assert np.allclose(tab[(l, m)], phase * ref, atol=1e-13)


def test_scalar_orthonormality():
    th, ph, w = angular_nodes(GridSpec(n_theta=16, n_phi=16))
    tab = harmonic_table(4, th, ph)
    keys = sorted(tab)
    Y = np.array([tab[k] for k in keys])
    G = (np.conj(Y) * w) @ Y.T
    assert np.max(abs(G - np.eye(len(keys)))) < 1e-12


def test_scalar_case_harmonics():
    lab = SpinLabels(0, 2, 2, -1)
    om, la = tensor_harmonic_omega(lab), tensor_harmonic_lambda(lab)
    assert om.components[0].coeff == phase_beta(-1)
    assert la.components[0].coeff == -ex.I * phase_beta(-1)


def test_spin_half_stack_pattern():
    lab = SpinLabels(H, 0, H, H)
    om, la = tensor_harmonic_omega(lab), tensor_harmonic_lambda(lab)
    h = ex.sqrt(H)
    coeffs = [h * c.coeff for c in om.components + la.components]
    assert coeffs[1] == ex.ZERO
    assert coeffs[2] == -ex.I * ex.sqrt(Fraction(2, 6))
    assert coeffs[3] == ex.I * ex.sqrt(Fraction(1, 6))


def test_component_count():
    lab = SpinLabels(Fraction(3, 2), 1, Fraction(3, 2), H)
    assert len(tensor_harmonic_omega(lab)) + len(tensor_harmonic_lambda(lab)) == 8


def test_zero_stack_evaluates_to_zero():
    lab = SpinLabels(Fraction(3, 2), 0, Fraction(3, 2), Fraction(3, 2))
    v = eval_tensor_harmonic(tensor_harmonic_omega(lab), np.array([0.4]), np.array([0.2]))
    assert np.all(v[1:] == 0)


def test_quadrature_examples():
    a = SpinLabels(H, 1, Fraction(3, 2), H)
    b = SpinLabels(H, 1, H, H)
    f = lambda lab: (lambda th, ph: eval_tensor_harmonic(tensor_harmonic_omega(lab), th, ph))
    assert abs(angular_inner(f(a), f(a)) - 1) < 1e-12
    assert abs(angular_inner(f(a), f(b))) < 1e-12
