"""Small dense linear-algebra primitives shared by every module.

Complex-to-real 2x2 embeddings, the standard symplectic form, spectra of
4x4 matrices with unit-circle bookkeeping, and quartic root solving with a
closed-form shortcut for biquadratic polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: default tolerance for "eigenvalue on the unit circle"
UNIT_CIRCLE_TOL = 1e-7

#: default admissible symplectic defect of a fundamental solution
SYMPLECTIC_DEFECT_TOL = 1e-8

J2 = np.array([[0.0, -1.0], [1.0, 0.0]])

J4 = np.block([[np.zeros((2, 2)), -np.eye(2)], [np.eye(2), np.zeros((2, 2))]])


def rotation(t: float) -> np.ndarray:
    """Planar rotation matrix R(t)."""
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, -s], [s, c]])


def s_matrix(t: float) -> np.ndarray:
    """Symmetric traceless matrix S(t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]."""
    c, s = np.cos(2.0 * t), np.sin(2.0 * t)
    return np.array([[c, s], [s, -c]])


def phi_embed(z: complex) -> np.ndarray:
    """Embed z = x + iy as the conformal matrix [[x, -y], [y, x]].

    Satisfies phi(z) phi(w) = phi(z w) and phi(conj(z)) = phi(z)^T.
    """
    z = complex(z)
    return np.array([[z.real, -z.imag], [z.imag, z.real]])


def psi_embed(z: complex) -> np.ndarray:
    """Embed z = x + iy as the symmetric traceless matrix [[x, y], [y, -x]].

    Satisfies psi(z)^T = psi(z) and psi(z) psi(z) = |z|^2 I.
    """
    z = complex(z)
    return np.array([[z.real, z.imag], [z.imag, -z.real]])


def symplectic_defect(m: np.ndarray) -> float:
    """Normalized defect ||M^T J M - J||_F / max(1, ||M||^2).

    Zero iff M is symplectic; the normalization keeps the measure meaningful
    for strongly hyperbolic monodromies, whose entries (and hence the raw
    residual of any floating-point representation) grow like e^(c/tol).
    """
    m = np.asarray(m, dtype=float)
    scale = max(1.0, float(np.linalg.norm(m, 2)) ** 2)
    return float(np.linalg.norm(m.T @ J4 @ m - J4)) / scale


@dataclass(frozen=True)
class SymplecticMatrix:
    """A 4x4 real matrix together with its measured symplectic defect."""

    m: np.ndarray
    defect: float

    @classmethod
    def from_matrix(cls, m: np.ndarray, tol: float = SYMPLECTIC_DEFECT_TOL) -> "SymplecticMatrix":
        m = np.asarray(m, dtype=float)
        if m.shape != (4, 4) or not np.all(np.isfinite(m)):
            raise ValueError("expected a finite 4x4 real matrix")
        defect = symplectic_defect(m)
        if defect > tol:
            raise ValueError(f"symplectic defect {defect:.3e} exceeds tolerance {tol:.1e}")
        return cls(m=m, defect=defect)


@dataclass(frozen=True)
class Spectrum4:
    """Four complex eigenvalues with per-eigenvalue unit-circle flags."""

    eigenvalues: np.ndarray
    unit_flags: np.ndarray
    unit_tol: float = UNIT_CIRCLE_TOL

    def unit_margins(self) -> np.ndarray:
        """| |lambda| - 1 | for each eigenvalue."""
        return np.abs(np.abs(self.eigenvalues) - 1.0)

    def max_modulus(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))


def eig4(m: np.ndarray, residual_tol: float = 1e-10, unit_tol: float = UNIT_CIRCLE_TOL) -> Spectrum4:
    """Eigenvalues of a 4x4 matrix with a per-pair residual check.

    Raises if any eigenpair residual ||m v - lambda v|| exceeds
    residual_tol * ||m||.
    """
    m = np.asarray(m)
    if m.shape != (4, 4):
        raise ValueError("eig4 expects a 4x4 matrix")
    vals, vecs = np.linalg.eig(m)
    scale = max(np.linalg.norm(m, 2), 1.0)
    for lam, v in zip(vals, vecs.T):
        res = np.linalg.norm(m @ v - lam * v)
        if res > residual_tol * scale:
            raise ArithmeticError(f"eigenpair residual {res:.3e} above {residual_tol:.1e} * ||m||")
    flags = np.abs(np.abs(vals) - 1.0) <= unit_tol
    return Spectrum4(eigenvalues=vals, unit_flags=flags, unit_tol=unit_tol)


def _quadratic_roots(a: float, b: float, c: float) -> tuple[complex, complex]:
    """Numerically stable roots of a x^2 + b x + c."""
    disc = complex(b * b - 4.0 * a * c) ** 0.5
    if (np.conj(disc) * b).real < 0.0:
        disc = -disc
    q = -0.5 * (b + disc)
    r1 = q / a
    r2 = c / q if q != 0 else -b / a - r1
    return complex(r1), complex(r2)


def quartic_roots(c0: float, c1: float, c2: float, c3: float, c4: float) -> np.ndarray:
    """Roots of c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0.

    Biquadratic polynomials (c3 = c1 = 0) are solved in closed form through
    the quadratic in alpha = x^2; the general case falls back to the
    companion-matrix eigensolver.  Each returned root r satisfies
    |p(r)| <= 1e-10 * scale.
    """
    if c4 == 0.0:
        raise ValueError("degenerate leading coefficient")
    if c3 == 0.0 and c1 == 0.0:
        a1, a2 = _quadratic_roots(c4, c2, c0)
        roots = []
        for alpha in (a1, a2):
            r = np.sqrt(complex(alpha))
            roots.extend([r, -r])
        roots = np.array(roots)
    else:
        roots = np.roots([c4, c3, c2, c1, c0])
    coeffs = np.array([c4, c3, c2, c1, c0])
    scale = max(1.0, float(np.max(np.abs(coeffs))), float(np.max(np.abs(roots)) ** 4))
    vals = np.polyval(coeffs, roots)
    if np.max(np.abs(vals)) > 1e-10 * scale:
        raise ArithmeticError("quartic root residual above tolerance")
    return roots
