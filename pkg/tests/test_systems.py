import numpy as np
import pytest
from scipy.linalg import expm

from ere_stability.analytic import nonconvex_charpoly
from ere_stability.linalg import J4, quartic_roots
from ere_stability.systems import (BETA_MAX, EssentialSystem, beta_to_tilde,
                                   build_B, integrate_monodromy, rotated_path)


def test_beta_to_tilde_endpoints():
    assert beta_to_tilde(0.0) == pytest.approx(3.0)
    assert beta_to_tilde(BETA_MAX) == pytest.approx(1.5)
    with pytest.raises(ValueError):
        beta_to_tilde(-0.1)
    with pytest.raises(ValueError):
        beta_to_tilde(BETA_MAX + 0.1)


def test_case_constructors_fix_lambdas():
    sys_n = EssentialSystem.nonconvex(5.0, 0.1)
    bt = beta_to_tilde(5.0)
    assert sys_n.lambda3 == pytest.approx((9.0 + 3.0 * bt) / 2.0)
    assert sys_n.lambda4 == pytest.approx(-bt)

    sys_c = EssentialSystem.convex(5.0, 0.1)
    assert sys_c.lambda3 == pytest.approx((9.0 - 3.0 * bt) / 2.0)
    assert sys_c.lambda4 == pytest.approx(bt)

    sys_l = EssentialSystem.lagrange(5.0, 0.1)
    assert sys_l.lambda3 + sys_l.lambda4 == pytest.approx(3.0)


def test_ecc_validation():
    with pytest.raises(ValueError):
        EssentialSystem.convex(1.0, 1.0)
    with pytest.raises(ValueError):
        EssentialSystem.convex(1.0, -0.01)
    with pytest.raises(ValueError):
        EssentialSystem.nonconvex_tilde(-2.0, 0.0)


def test_build_B_symmetric():
    sys = EssentialSystem.nonconvex_tilde(1.3, 0.4)
    for t in (0.0, 1.0, 3.0):
        b = build_B(sys, t)
        assert np.allclose(b, b.T)


def test_monodromy_matches_expm_at_e0():
    # autonomous at e = 0: gamma(2 pi) = exp(2 pi J B)
    sys = EssentialSystem.nonconvex_tilde(0.8, 0.0)
    mono = integrate_monodromy(sys)
    exact = expm(2.0 * np.pi * J4 @ build_B(sys, 0.0))
    scale = np.max(np.abs(exact))
    assert np.max(np.abs(mono.gamma2pi.m - exact)) < 1e-10 * scale


def test_monodromy_multipliers_match_charpoly_at_e0():
    bt = 1.7
    sys = EssentialSystem.nonconvex_tilde(bt, 0.0)
    mult = integrate_monodromy(sys).multipliers().eigenvalues
    roots = quartic_roots(*nonconvex_charpoly(bt))
    expected = np.exp(2.0 * np.pi * roots)
    got = np.sort_complex(mult)
    want = np.sort_complex(expected)
    assert np.max(np.abs(got - want)) < 1e-8 * max(1.0, np.max(np.abs(want)))


def test_monodromy_spectral_symmetry():
    # symplectic: eigenvalues come in reciprocal pairs, det = 1
    sys = EssentialSystem.convex(3.0, 0.35)
    mono = integrate_monodromy(sys)
    assert mono.defect < 1e-8
    vals = mono.multipliers().eigenvalues
    assert np.prod(vals).real == pytest.approx(1.0, abs=1e-8)
    for lam in vals:
        assert np.min(np.abs(vals - 1.0 / lam)) < 1e-6 * max(1.0, abs(lam))


def test_rotated_path_endpoints():
    sys = EssentialSystem.convex(2.0, 0.2)
    ts, xi = rotated_path(sys, nsamples=9)
    assert ts[0] == 0.0 and ts[-1] == pytest.approx(2.0 * np.pi)
    assert np.allclose(xi[0], np.eye(4), atol=1e-10)
    mono = integrate_monodromy(sys)
    assert np.max(np.abs(xi[-1] - mono.gamma2pi.m)) < 1e-8
