import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ere_stability.linalg import (J2, J4, Spectrum4, SymplecticMatrix, eig4,
                                  phi_embed, psi_embed, quartic_roots,
                                  rotation, s_matrix, symplectic_defect)

finite = st.floats(min_value=-10.0, max_value=10.0,
                   allow_nan=False, allow_infinity=False)


def _cplx(draw_re, draw_im):
    return complex(draw_re, draw_im)


@given(finite, finite, finite, finite)
@settings(max_examples=50)
def test_phi_is_multiplicative(a, b, c, d):
    z, w = complex(a, b), complex(c, d)
    assert np.allclose(phi_embed(z) @ phi_embed(w), phi_embed(z * w), atol=1e-9)


@given(finite, finite)
@settings(max_examples=50)
def test_phi_conjugate_is_transpose(a, b):
    z = complex(a, b)
    assert np.allclose(phi_embed(np.conj(z)), phi_embed(z).T)


@given(finite, finite)
@settings(max_examples=50)
def test_psi_symmetric_and_involutive(a, b):
    z = complex(a, b)
    p = psi_embed(z)
    assert np.allclose(p, p.T)
    assert np.allclose(p @ p, abs(z) ** 2 * np.eye(2), atol=1e-9)


@given(st.floats(min_value=-10.0, max_value=10.0, allow_nan=False))
@settings(max_examples=50)
def test_rotation_orthogonal_and_s_traceless(t):
    r = rotation(t)
    assert np.allclose(r @ r.T, np.eye(2), atol=1e-12)
    s = s_matrix(t)
    assert abs(np.trace(s)) < 1e-12
    assert np.allclose(s, s.T)


def test_j_matrices():
    assert np.allclose(J2 @ J2, -np.eye(2))
    assert np.allclose(J4 @ J4, -np.eye(4))
    assert np.allclose(J4.T, -J4)


@given(st.lists(finite, min_size=16, max_size=16))
@settings(max_examples=30, deadline=None)
def test_symplectic_defect_zero_on_symplectic(entries):
    from scipy.linalg import expm
    a = np.array(entries).reshape(4, 4) * 0.2
    m = expm(J4 @ (a + a.T) / 2.0)  # exponential of a Hamiltonian matrix
    assert symplectic_defect(m) < 1e-10
    SymplecticMatrix.from_matrix(m)


def test_symplectic_defect_detects_nonsymplectic():
    m = np.diag([2.0, 1.0, 1.0, 1.0])
    assert symplectic_defect(m) > 1e-2
    with pytest.raises(ValueError):
        SymplecticMatrix.from_matrix(m)


def test_eig4_rotation_spectrum():
    m = np.zeros((4, 4))
    m[:2, :2] = rotation(0.7)
    m[2:, 2:] = rotation(1.9)
    spec = eig4(m)
    assert isinstance(spec, Spectrum4)
    assert spec.unit_flags.all()
    assert spec.max_modulus() == pytest.approx(1.0, abs=1e-12)
    angles = np.sort(np.abs(np.angle(spec.eigenvalues)))
    assert np.allclose(angles, [0.7, 0.7, 1.9, 1.9], atol=1e-12)


def test_eig4_rejects_wrong_shape():
    with pytest.raises(ValueError):
        eig4(np.eye(3))


@given(finite, finite, st.floats(min_value=0.1, max_value=5.0,
                                 allow_nan=False))
@settings(max_examples=60)
def test_quartic_residual_property(c0, c2, c4):
    roots = quartic_roots(c0, 0.0, c2, 0.0, c4)
    coeffs = np.array([c4, 0.0, c2, 0.0, c0])
    scale = max(1.0, np.max(np.abs(coeffs)), np.max(np.abs(roots)) ** 4)
    assert np.max(np.abs(np.polyval(coeffs, roots))) <= 1e-10 * scale


def test_quartic_zero_constant_term():
    # regression: x^4 + c2 x^2 has the double root 0 and must keep +-sqrt(-c2)
    roots = quartic_roots(0.0, 0.0, -4.0, 0.0, 1.0)
    expected = np.array([0.0, 0.0, 2.0, -2.0])
    assert np.allclose(np.sort(roots.real), np.sort(expected), atol=1e-10)
    assert np.max(np.abs(roots.imag)) < 1e-12


def test_quartic_general_fallback():
    roots = quartic_roots(-6.0, 11.0, -6.0, 1.0, 1.0)  # has root x = 1 etc.
    vals = np.polyval([1.0, 1.0, -6.0, 11.0, -6.0], roots)
    assert np.max(np.abs(vals)) < 1e-9


def test_quartic_rejects_degenerate_leading():
    with pytest.raises(ValueError):
        quartic_roots(1.0, 0.0, 1.0, 0.0, 0.0)
