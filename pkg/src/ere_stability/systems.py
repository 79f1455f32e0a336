"""Essential 2-degree-of-freedom linearized systems and their monodromy.

An essential system is the 4x4 linear Hamiltonian system

    zeta'(t) = J B(t) zeta(t),

parametrized by (lambda3, lambda4, e), that remains after symplectic
reduction.  The non-convex / convex / Lagrange cases fix (lambda3, lambda4)
in terms of the mass parameter beta = 27 m (1 - m).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .linalg import J4, SymplecticMatrix, Spectrum4, eig4, rotation

BETA_MAX = 27.0 / 4.0

#: eccentricities above this make the default step-error control misleading
ECC_CAP = 0.99


def beta_to_tilde(beta: float) -> float:
    """The substitution beta_tilde = sqrt(9 - beta)."""
    if not 0.0 <= beta <= BETA_MAX:
        raise ValueError(f"beta must lie in [0, 27/4], got {beta}")
    return float(np.sqrt(9.0 - beta))


def _check_ecc(e: float) -> float:
    e = float(e)
    if not 0.0 <= e <= ECC_CAP:
        raise ValueError(f"eccentricity must lie in [0, {ECC_CAP}], got {e}")
    return e


@dataclass(frozen=True)
class EssentialSystem:
    """Reduced linearized system parametrized by (lambda3, lambda4, e)."""

    lambda3: float
    lambda4: float
    e: float
    case_tag: str = "custom"
    param: float | None = None  # beta for tagged cases; beta_tilde for "nonconvex"

    @classmethod
    def custom(cls, lambda3: float, lambda4: float, e: float) -> "EssentialSystem":
        return cls(float(lambda3), float(lambda4), _check_ecc(e))

    @classmethod
    def nonconvex(cls, beta: float, e: float) -> "EssentialSystem":
        return cls.nonconvex_tilde(beta_to_tilde(beta), e)

    @classmethod
    def nonconvex_tilde(cls, beta_tilde: float, e: float) -> "EssentialSystem":
        """Non-convex family in the analytically extended range beta_tilde >= -9/5."""
        bt = float(beta_tilde)
        if bt < -9.0 / 5.0:
            raise ValueError(f"beta_tilde must be >= -9/5, got {bt}")
        return cls((9.0 + 3.0 * bt) / 2.0, -bt, _check_ecc(e), "nonconvex", bt)

    @classmethod
    def convex(cls, beta: float, e: float) -> "EssentialSystem":
        s = beta_to_tilde(beta)
        return cls((9.0 - 3.0 * s) / 2.0, s, _check_ecc(e), "convex", float(beta))

    @classmethod
    def lagrange(cls, beta: float, e: float) -> "EssentialSystem":
        s = beta_to_tilde(beta)
        return cls((3.0 + s) / 2.0, (3.0 - s) / 2.0, _check_ecc(e), "lagrange", float(beta))


def build_B(sys: EssentialSystem, t: float) -> np.ndarray:
    """The symmetric coefficient matrix B(t) of the essential system."""
    rp = 1.0 / (1.0 + sys.e * np.cos(t))
    return np.array([
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, -1.0, 0.0],
        [0.0, -1.0, 1.0 - sys.lambda3 * rp, 0.0],
        [1.0, 0.0, 0.0, 1.0 - sys.lambda4 * rp],
    ])


@dataclass(frozen=True)
class Monodromy:
    """Fundamental solution at 2*pi with integration diagnostics."""

    gamma2pi: SymplecticMatrix
    steps: int
    defect: float
    tol_used: float

    def multipliers(self) -> Spectrum4:
        return eig4(self.gamma2pi.m)


def _rhs(sys: EssentialSystem):
    e = sys.e
    l3, l4 = sys.lambda3, sys.lambda4
    jb0 = J4 @ np.array([
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, -1.0, 0.0],
        [0.0, -1.0, 1.0, 0.0],
        [1.0, 0.0, 0.0, 1.0],
    ])

    def fun(t, y):
        rp = 1.0 / (1.0 + e * np.cos(t))
        jb = jb0.copy()
        # J B perturbs rows 1 and 2 of J4 @ diag-correction; write directly:
        jb[0, 2] -= -l3 * rp  # (J B)[0, 2] = -B[2, 2] correction
        jb[1, 3] -= -l4 * rp
        g = y.reshape(4, 4)
        return (jb @ g).reshape(16)

    return fun


def integrate_monodromy(sys: EssentialSystem, tol: float = 1e-12,
                        defect_tol: float = 1e-6) -> Monodromy:
    """Integrate zeta' = J B(t) zeta over one period with an adaptive
    Dormand-Prince 8(7) pair; returns gamma(2*pi) with diagnostics."""
    fun = _rhs(sys)
    y0 = np.eye(4).reshape(16)
    sol = solve_ivp(fun, (0.0, 2.0 * np.pi), y0, method="DOP853",
                    rtol=max(tol, 1e-13), atol=tol * 1e-2)
    if not sol.success:
        raise RuntimeError(
            f"monodromy integration failed ({sol.message}); "
            "try a looser tolerance or smaller eccentricity")
    m = sol.y[:, -1].reshape(4, 4)
    gamma = SymplecticMatrix.from_matrix(m, tol=defect_tol)
    return Monodromy(gamma2pi=gamma, steps=int(sol.t.size - 1),
                     defect=gamma.defect, tol_used=tol)


def r4(t: float) -> np.ndarray:
    """The block rotation diag(R(t), R(t))."""
    r = rotation(t)
    out = np.zeros((4, 4))
    out[:2, :2] = r
    out[2:, 2:] = r
    return out


def rotated_rhs(sys: EssentialSystem, t: float) -> np.ndarray:
    """Coefficient matrix of the rotated path xi(t) = R4(t) gamma(t).

    xi solves xi' = [R4 (K4 + J B(t)) R4^T] xi with K4 = diag(J2, J2).
    """
    k4 = np.zeros((4, 4))
    k4[0, 1], k4[1, 0] = -1.0, 1.0
    k4[2, 3], k4[3, 2] = -1.0, 1.0
    r = r4(t)
    return r @ (k4 + J4 @ build_B(sys, t)) @ r.T


def rotated_path(sys: EssentialSystem, tol: float = 1e-12,
                 nsamples: int = 65) -> tuple[np.ndarray, np.ndarray]:
    """Samples of the rotated path xi(t) = R4(t) gamma(t) on [0, 2*pi].

    xi(0) = I and xi(2*pi) = gamma(2*pi) because R(2*pi) = I.
    """
    fun = _rhs(sys)
    ts = np.linspace(0.0, 2.0 * np.pi, nsamples)
    y0 = np.eye(4).reshape(16)
    sol = solve_ivp(fun, (0.0, 2.0 * np.pi), y0, method="DOP853",
                    rtol=max(tol, 1e-13), atol=tol * 1e-2, t_eval=ts)
    if not sol.success:
        raise RuntimeError(f"path integration failed ({sol.message})")
    xi = np.array([r4(t) @ sol.y[:, i].reshape(4, 4) for i, t in enumerate(ts)])
    return ts, xi
