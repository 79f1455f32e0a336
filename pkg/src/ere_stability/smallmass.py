"""The two-infinitesimal-mass family near the equilateral point L4.

Bodies 1 and 2 carry masses m and 1 - m - (1+tau) eps; bodies 3 and 4 carry
eps and tau eps and collapse onto L4 as eps -> 0.  The family splits into a
non-convex and a convex branch according to which eigenvector of the
effective potential Hessian the small pair separates along.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .reduction import BodySystem, cc_residual, normalize

Z_L4 = 0.5 + 0.5j * np.sqrt(3.0)

BRANCHES = ("nonconvex", "convex")


@dataclass(frozen=True)
class SmallMassFamily:
    m: float
    tau: float
    eps: float
    branch: str

    def __post_init__(self):
        if not 0.0 < self.m < 1.0:
            raise ValueError("m must lie in (0, 1)")
        if not 0.0 < self.tau <= 1.0:
            raise ValueError("tau must lie in (0, 1]")
        if self.eps <= 0.0 or (1.0 + self.tau) * self.eps >= 1.0 - self.m:
            raise ValueError("need 0 < (1+tau) eps < 1 - m")
        if self.branch not in BRANCHES:
            raise ValueError(f"branch must be one of {BRANCHES}")

    def masses(self) -> np.ndarray:
        return np.array([self.m, 1.0 - self.m - (1.0 + self.tau) * self.eps,
                         self.eps, self.tau * self.eps])


@dataclass(frozen=True)
class LimitData:
    """Closed-form eps -> 0 limits for a small-mass family."""

    alpha0: float
    mu0: float
    beta: float
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    beta2_0: float
    beta22_0: complex
    theta34: float
    hessian_eigs: np.ndarray


def hessian_V2(m: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Hessian of the effective potential of the small pair at L4.

    Returns (matrix, eigenvalues (delta1, delta2), unit eigenvectors as
    columns), with delta_i = lambda_i / alpha0^3 and
    lambda_{1,2} = (3 +- sqrt(9 - beta)) / 2.
    """
    if not 0.0 < m < 1.0:
        raise ValueError("m must lie in (0, 1)")
    alpha0 = (m * (1.0 - m)) ** -0.5
    off = -0.75 * np.sqrt(3.0) * (1.0 - 2.0 * m)
    mat = alpha0 ** -3 * np.array([[0.75, off], [off, 2.25]])
    beta = 27.0 * m * (1.0 - m)
    s = np.sqrt(9.0 - beta)
    deltas = np.array([(3.0 + s) / 2.0, (3.0 - s) / 2.0]) * alpha0 ** -3
    vecs = np.empty((2, 2))
    for idx, d in enumerate(deltas):
        v = np.array([mat[0, 1], d - mat[0, 0]])
        n = np.linalg.norm(v)
        if n < 1e-14:  # diagonal Hessian (m = 1/2)
            v = np.array([0.0, 1.0]) if idx == 0 else np.array([1.0, 0.0])
            n = 1.0
        vecs[:, idx] = v / n
    return mat, deltas, vecs


def limit_parameters(fam: SmallMassFamily) -> LimitData:
    m = fam.m
    alpha0 = (m * (1.0 - m)) ** -0.5
    mu0 = alpha0 ** -3
    beta = 27.0 * m * (1.0 - m)
    s = np.sqrt(9.0 - beta)
    lambda1 = (3.0 + s) / 2.0
    lambda2 = (3.0 - s) / 2.0
    if fam.branch == "nonconvex":
        lam_i = lambda1
        lambda3, lambda4 = (9.0 + 3.0 * s) / 2.0, -s
    else:
        lam_i = lambda2
        lambda3, lambda4 = (9.0 - 3.0 * s) / 2.0, s
    # -1 + 3 lam_i (9 - 4 lam_i) / (27 - 2 beta - 6 lam_i), simplified with
    # beta = 9 - s^2 so the removable 0/0 at s = 3/2 (m = 1/2, first branch)
    # never occurs: the ratio equals -3(3+s)/(2s) resp. 3(3-s)/(2s).
    if fam.branch == "nonconvex":
        bracket = -1.0 - 3.0 * (3.0 + s) / (2.0 * s)
    else:
        bracket = -1.0 + 3.0 * (3.0 - s) / (2.0 * s)
    # the conjugation (+i, not -i) matches the Richardson-extrapolated limit
    # of the finite-eps family; |beta22_0| and hence lambda3/lambda4 do not
    # depend on it
    beta22_0 = 0.75 * (1.0 + np.sqrt(3.0) * (1.0 - 2.0 * m) * 1j) * bracket
    _, _, vecs = hessian_V2(m)
    direction = vecs[:, 0] if fam.branch == "nonconvex" else vecs[:, 1]
    theta34 = float(np.arctan2(direction[1], direction[0]))
    hessian_eigs = mu0 * np.array([lambda1, lambda2, lambda3, lambda4])
    return LimitData(alpha0=float(alpha0), mu0=float(mu0), beta=float(beta),
                     lambda1=float(lambda1), lambda2=float(lambda2),
                     lambda3=float(lambda3), lambda4=float(lambda4),
                     beta2_0=float(lam_i), beta22_0=complex(beta22_0),
                     theta34=theta34, hessian_eigs=hessian_eigs)


def asymptotic_positions(fam: SmallMassFamily) -> tuple[complex, complex]:
    """Leading-order positions q3, q4 of the small pair (primaries at 0, 1).

    The pair straddles L4 along the Hessian eigenvector of its branch, with
    separation ((1+tau) eps / lambda_i)^(1/3) and the mass-weighted center
    at L4.
    """
    lim = limit_parameters(fam)
    lam_i = lim.lambda1 if fam.branch == "nonconvex" else lim.lambda2
    d = ((1.0 + fam.tau) * fam.eps / lam_i) ** (1.0 / 3.0)
    u = complex(np.cos(lim.theta34), np.sin(lim.theta34))
    q3 = Z_L4 - fam.tau / (1.0 + fam.tau) * d * u
    q4 = Z_L4 + 1.0 / (1.0 + fam.tau) * d * u
    return q3, q4


def separation_angle(sys: BodySystem) -> float:
    """Angle of z4 - z3 with respect to the horizontal, in [-pi, pi]."""
    d = sys.positions[3] - sys.positions[2]
    return float(np.arctan2(d.imag, d.real))


def _cc_equations(masses: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Central-configuration residual in the gauge q1 = 0, q2 = 1.

    Unknowns u = (q3x, q3y, q4x, q4y, lam); equations are
    sum_j m_j (q_j - q_i)/|q_i - q_j|^3 - lam (q_i - qc) = 0 for all i.
    Fixing q2 (rather than only Im q2 = 0) also pins the scale invariance
    (q, lam) -> (c q, lam / c^3), so the solution is isolated and the
    Jacobian has full column rank.
    """
    q = np.array([0.0 + 0.0j, 1.0 + 0.0j, u[0] + 1j * u[1], u[2] + 1j * u[3]])
    lam = u[4]
    qc = np.sum(masses * q)
    out = np.empty(8)
    for i in range(4):
        acc = 0.0 + 0.0j
        for j in range(4):
            if j != i:
                acc += masses[j] * (q[j] - q[i]) / abs(q[i] - q[j]) ** 3
        acc -= lam * (q[i] - qc)
        out[2 * i] = acc.real
        out[2 * i + 1] = acc.imag
    return out


def solve_cc_newton(fam: SmallMassFamily, tol: float = 1e-12, max_iter: int = 80,
                    initial: np.ndarray | None = None) -> BodySystem:
    """Least-squares solve for an actual central configuration at finite eps.

    Starts from the asymptotic positions, fixes the gauge q1 = 0, q2 = 1,
    and solves the over-determined residual (two components are identities
    by translation invariance).  The result is normalized and the branch is
    certified by the separation-angle test |theta34| >= pi/3 for the
    non-convex branch, <= pi/3 for the convex branch.
    """
    if fam.eps > 1e-2:
        raise ValueError("eps above the continuation basin guard 1e-2")
    masses = fam.masses()
    if initial is None:
        q3, q4 = asymptotic_positions(fam)
        u = np.array([q3.real, q3.imag, q4.real, q4.imag, -1.0])
    else:
        u = np.asarray(initial, dtype=float).copy()

    sol = optimize.least_squares(lambda v: _cc_equations(masses, v), u,
                                 method="lm", xtol=tol, ftol=tol, gtol=tol,
                                 max_nfev=200 * max_iter)
    u = sol.x
    res = _cc_equations(masses, u)
    if np.max(np.abs(res)) > 1e-10:
        raise RuntimeError(f"Newton did not converge; last residual {np.max(np.abs(res)):.3e}")

    q = np.array([0.0 + 0.0j, 1.0 + 0.0j, u[0] + 1j * u[1], u[2] + 1j * u[3]])
    sys = normalize(masses, q)
    res_cc = cc_residual(sys)
    if res_cc > 1e-10:
        raise RuntimeError(f"converged point is not a CC: residual {res_cc:.3e}")
    theta = abs(separation_angle(sys))
    theta = min(theta, np.pi - theta)  # line direction, sign-free
    if fam.branch == "nonconvex" and theta < np.pi / 3.0 - 1e-6:
        raise RuntimeError("branch flip: separation angle below pi/3 on the non-convex branch")
    if fam.branch == "convex" and theta > np.pi / 3.0 + 1e-6:
        raise RuntimeError("branch flip: separation angle above pi/3 on the convex branch")
    return sys
