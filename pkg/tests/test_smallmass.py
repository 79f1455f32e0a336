import numpy as np
import pytest

from ere_stability.reduction import build_ccdata, essential_parameters
from ere_stability.smallmass import (Z_L4, SmallMassFamily,
                                     asymptotic_positions, hessian_V2,
                                     limit_parameters, separation_angle,
                                     solve_cc_newton)


def test_family_validation():
    with pytest.raises(ValueError):
        SmallMassFamily(m=0.0, tau=1.0, eps=1e-4, branch="convex")
    with pytest.raises(ValueError):
        SmallMassFamily(m=0.3, tau=1.5, eps=1e-4, branch="convex")
    with pytest.raises(ValueError):
        SmallMassFamily(m=0.3, tau=1.0, eps=0.9, branch="convex")
    with pytest.raises(ValueError):
        SmallMassFamily(m=0.3, tau=1.0, eps=1e-4, branch="concave")
    fam = SmallMassFamily(m=0.3, tau=0.5, eps=1e-4, branch="nonconvex")
    assert fam.masses().sum() == pytest.approx(1.0)


def test_hessian_eigenstructure():
    for m in (0.2, 0.5, 0.8):
        mat, deltas, vecs = hessian_V2(m)
        for i in range(2):
            res = mat @ vecs[:, i] - deltas[i] * vecs[:, i]
            assert np.max(np.abs(res)) < 1e-12
        beta = 27.0 * m * (1.0 - m)
        s = np.sqrt(9.0 - beta)
        alpha0 = (m * (1.0 - m)) ** -0.5
        assert deltas[0] * alpha0 ** 3 == pytest.approx((3.0 + s) / 2.0)
        assert deltas[1] * alpha0 ** 3 == pytest.approx((3.0 - s) / 2.0)


def test_limit_parameters_closed_forms():
    lim = limit_parameters(SmallMassFamily(m=0.3, tau=1.0, eps=1e-4,
                                           branch="nonconvex"))
    s = np.sqrt(9.0 - lim.beta)
    assert lim.beta == pytest.approx(27.0 * 0.3 * 0.7)
    assert lim.lambda3 == pytest.approx((9.0 + 3.0 * s) / 2.0)
    assert lim.lambda4 == pytest.approx(-s)
    assert lim.beta2_0 == pytest.approx(lim.lambda1)
    # separation direction: non-convex branch is steeper than 60 degrees
    theta = abs(lim.theta34)
    assert min(theta, np.pi - theta) > np.pi / 3.0


def test_beta22_limit_finite_at_half():
    # m = 1/2 non-convex is the removable 0/0 of the unsimplified bracket
    lim = limit_parameters(SmallMassFamily(m=0.5, tau=1.0, eps=1e-4,
                                           branch="nonconvex"))
    assert np.isfinite(lim.beta22_0)
    s = np.sqrt(9.0 - lim.beta)
    assert lim.beta22_0 == pytest.approx(0.75 * (-1.0 - 3.0 * (3.0 + s) / (2.0 * s)))
    assert lim.beta22_0.imag == pytest.approx(0.0, abs=1e-15)


def test_asymptotic_positions_straddle_l4():
    fam = SmallMassFamily(m=0.4, tau=0.7, eps=1e-4, branch="convex")
    q3, q4 = asymptotic_positions(fam)
    lim = limit_parameters(fam)
    # mass-weighted center of the pair (masses eps and tau eps) sits at L4
    center = (q3 + fam.tau * q4) / (1.0 + fam.tau)
    assert abs(center - Z_L4) < 1e-14
    d = ((1.0 + fam.tau) * fam.eps / lim.lambda2) ** (1.0 / 3.0)
    assert abs(q4 - q3) == pytest.approx(d, rel=1e-12)


@pytest.mark.parametrize("branch", ["nonconvex", "convex"])
def test_solve_cc_newton_converges(branch):
    fam = SmallMassFamily(m=0.35, tau=0.6, eps=1e-4, branch=branch)
    sys = solve_cc_newton(fam)
    from ere_stability.reduction import cc_residual
    assert cc_residual(sys) < 1e-10
    theta = abs(separation_angle(sys))
    theta = min(theta, np.pi - theta)
    if branch == "nonconvex":
        assert theta > np.pi / 3.0
    else:
        assert theta < np.pi / 3.0


def test_solve_cc_newton_guards_eps():
    fam = SmallMassFamily(m=0.35, tau=0.6, eps=5e-2, branch="convex")
    with pytest.raises(ValueError):
        solve_cc_newton(fam)


def test_short_ladder_converges_to_limit():
    fam_kind = dict(m=0.5, tau=1.0, branch="convex")
    errs = []
    for eps in (1e-3, 1e-4, 1e-5):
        fam = SmallMassFamily(eps=eps, **fam_kind)
        lim = limit_parameters(fam)
        params = essential_parameters(build_ccdata(solve_cc_newton(fam)))
        errs.append(abs(params.beta2 - lim.beta2_0))
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] < 1e-3
