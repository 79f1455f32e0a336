"""Symplectic reduction of the planar four-body problem at a central
configuration.

Starting from a normalized central configuration (CC) this module builds the
weighted eigenbasis v1..v4 of the regularized Hessian D, the scalar
parameters (beta2, beta11, beta12, beta22) that survive reduction, and the
12x12 linearized Hamiltonian coefficient matrix in true anomaly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .linalg import J2, phi_embed, psi_embed  # noqa: F401  (phi kept for block assembly)

_PAIRS = list(combinations(range(4), 2))


@dataclass(frozen=True)
class BodySystem:
    """Four masses and planar positions (as complex numbers), normalized so
    that sum(m) = 1, sum(m z) = 0 and sum(m |z|^2) = 1."""

    masses: np.ndarray
    positions: np.ndarray

    def validate(self, tol: float = 1e-10) -> None:
        m, z = self.masses, self.positions
        if m.shape != (4,) or z.shape != (4,):
            raise ValueError("expected 4 masses and 4 positions")
        if np.any(m <= 0):
            raise ValueError("masses must be positive")
        if abs(m.sum() - 1.0) > tol:
            raise ValueError("masses must sum to 1")
        if abs(np.sum(m * z)) > tol:
            raise ValueError("mass center must be at the origin")
        if abs(np.sum(m * np.abs(z) ** 2) - 1.0) > tol:
            raise ValueError("moment of inertia must be normalized to 1")
        for i, j in _PAIRS:
            if abs(z[i] - z[j]) < 1e-12:
                raise ValueError(f"positions {i} and {j} coincide")

    def to_json(self) -> str:
        return json.dumps({
            "schema": "body-system/1",
            "masses": list(map(float, self.masses)),
            "positions": [[float(z.real), float(z.imag)] for z in self.positions],
        })

    @classmethod
    def from_json(cls, text: str) -> "BodySystem":
        data = json.loads(text)
        if data.get("schema") != "body-system/1":
            raise ValueError("unsupported body-system schema")
        masses = np.array(data["masses"], dtype=float)
        positions = np.array([complex(re, im) for re, im in data["positions"]])
        sys = cls(masses=masses, positions=positions)
        sys.validate(tol=1e-8)
        return sys


def normalize(masses, positions) -> BodySystem:
    """Scale masses to unit total, move the mass center to the origin and
    scale positions to unit moment of inertia.  No rotation is applied."""
    m = np.asarray(masses, dtype=float)
    z = np.asarray(positions, dtype=complex)
    if m.shape != (4,) or z.shape != (4,):
        raise ValueError("expected 4 masses and 4 positions")
    if np.any(m <= 0):
        raise ValueError("masses must be positive")
    for i, j in _PAIRS:
        if abs(z[i] - z[j]) == 0.0:
            raise ValueError(f"positions {i} and {j} coincide")
    m = m / m.sum()
    z = z - np.sum(m * z)
    z = z / np.sqrt(np.sum(m * np.abs(z) ** 2))
    sys = BodySystem(masses=m, positions=z)
    sys.validate(tol=1e-8)
    return sys


def mu_of(sys: BodySystem) -> float:
    """The normalized potential mu = sum_{i<j} m_i m_j / |z_i - z_j|."""
    m, z = sys.masses, sys.positions
    return float(sum(m[i] * m[j] / abs(z[i] - z[j]) for i, j in _PAIRS))


def cc_residual(sys: BodySystem) -> float:
    """Max deviation from the central-configuration identity
    sum_{j != i} m_j (z_j - z_i)/|z_i - z_j|^3 = -mu z_i."""
    m, z = sys.masses, sys.positions
    mu = mu_of(sys)
    worst = 0.0
    for i in range(4):
        acc = 0.0 + 0.0j
        for j in range(4):
            if j != i:
                acc += m[j] * (z[j] - z[i]) / abs(z[i] - z[j]) ** 3
        worst = max(worst, abs(acc + mu * z[i]))
    return worst


def signed_area(zi: complex, zj: complex, zk: complex) -> float:
    """Signed area of the triangle (zi, zj, zk)."""
    det = (zj - zi) * np.conj(zk - zi) - np.conj(zj - zi) * (zk - zi)
    return float((0.25j * det).real)


@dataclass(frozen=True)
class CCData:
    """Weighted-unitary eigenbasis data of D = mu I + M^-1 B at a CC."""

    system: BodySystem
    mu: float
    D: np.ndarray
    trace_D: float
    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray
    v4: np.ndarray
    k: float
    l: complex
    c: np.ndarray
    rho: float

    def basis_gram_defect(self) -> float:
        """Deviation of conj(v_i)^T M v_j from the identity."""
        vs = np.column_stack([self.v1, self.v2, self.v3, self.v4])
        gram = vs.conj().T @ np.diag(self.system.masses) @ vs
        return float(np.max(np.abs(gram - np.eye(4))))


def build_ccdata(sys: BodySystem, tol: float = 1e-8) -> CCData:
    res = cc_residual(sys)
    if res > tol:
        raise ValueError(f"not a central configuration: residual {res:.3e}")
    m, z = sys.masses, sys.positions
    mu = mu_of(sys)

    areas = [abs(signed_area(z[i], z[j], z[k]))
             for i, j, k in combinations(range(4), 3)]
    if max(areas) < 1e-10:
        raise ValueError("collinear configuration: the collinear reduction is not supported")

    b_mat = np.zeros((4, 4))
    for i, j in _PAIRS:
        b_mat[i, j] = b_mat[j, i] = m[i] * m[j] / abs(z[i] - z[j]) ** 3
    np.fill_diagonal(b_mat, -b_mat.sum(axis=1))
    d_mat = mu * np.eye(4) + np.diag(1.0 / m) @ b_mat
    # the trace from the explicit off-diagonal sums avoids cancellation
    trace_d = 4.0 * mu - sum((m[i] + m[j]) / abs(z[i] - z[j]) ** 3 for i, j in _PAIRS)

    s2 = np.sum(m * np.conj(z) ** 2)
    if abs(s2) >= 1.0 - 1e-12:
        raise ValueError("degenerate configuration: |sum m conj(z)^2| >= 1")
    k = 1.0 / np.sqrt(1.0 - abs(s2) ** 2)
    l = -k * s2

    v1 = np.ones(4, dtype=complex)
    v2 = z.copy()
    v3 = k * np.conj(z) + l * z

    rho = float(np.sqrt(np.prod(m)))
    d234 = signed_area(z[1], z[2], z[3])
    d134 = signed_area(z[0], z[2], z[3])
    d124 = signed_area(z[0], z[1], z[3])
    d123 = signed_area(z[0], z[1], z[2])
    c = np.array([
        4.0 * k * rho / m[0] * d234,
        -4.0 * k * rho / m[1] * d134,
        4.0 * k * rho / m[2] * d124,
        -4.0 * k * rho / m[3] * d123,
    ])
    v4 = c.astype(complex)

    return CCData(system=sys, mu=mu, D=d_mat, trace_D=trace_d,
                  v1=v1, v2=v2, v3=v3, v4=v4, k=float(k), l=complex(l),
                  c=c, rho=rho)


@dataclass(frozen=True)
class EssentialParameters:
    """Scalar parameters of the reduced linearized Hamiltonian."""

    beta1: float
    beta2: float
    beta11: complex
    beta12: complex
    beta22: complex

    def to_json(self) -> str:
        def c(v):
            return [float(v.real), float(v.imag)]
        return json.dumps({
            "schema": "essential-parameters/1",
            "beta1": float(self.beta1),
            "beta2": float(self.beta2),
            "beta11": c(self.beta11),
            "beta12": c(self.beta12),
            "beta22": c(self.beta22),
        })

    @classmethod
    def from_json(cls, text: str) -> "EssentialParameters":
        data = json.loads(text)
        if data.get("schema") != "essential-parameters/1":
            raise ValueError("unsupported essential-parameters schema")
        return cls(beta1=float(data["beta1"]), beta2=float(data["beta2"]),
                   beta11=complex(*data["beta11"]),
                   beta12=complex(*data["beta12"]),
                   beta22=complex(*data["beta22"]))


def _pair_sum(m, a, u, v, mu) -> complex:
    acc = 0.0 + 0.0j
    for i, j in _PAIRS:
        da = a[i] - a[j]
        acc += m[i] * m[j] * da ** 2 * np.conj(u[i] - u[j]) * np.conj(v[i] - v[j]) / abs(da) ** 5
    return 1.5 / mu * acc


def essential_parameters(cc: CCData) -> EssentialParameters:
    m, a = cc.system.masses, cc.system.positions
    beta2 = 1.0 - cc.trace_D / cc.mu
    b, c = cc.v3, cc.v4
    return EssentialParameters(
        beta1=0.0,
        beta2=float(beta2),
        beta11=_pair_sum(m, a, b, b, cc.mu),
        beta12=_pair_sum(m, a, b, c, cc.mu),
        beta22=_pair_sum(m, a, c, c, cc.mu),
    )


@dataclass(frozen=True)
class LinearizedBlocks:
    """The 12x12 linearized Hamiltonian coefficient matrix and its
    essential 4x4 sub-blocks at a fixed true anomaly."""

    full: np.ndarray
    zz: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    coupling: np.ndarray


def assemble_linearized(params: EssentialParameters, e: float, theta: float) -> LinearizedBlocks:
    if not 0.0 <= e < 1.0:
        raise ValueError("eccentricity must lie in [0, 1)")
    rp = 1.0 / (1.0 + e * np.cos(theta))
    h_zz = np.diag([-(2.0 - e * np.cos(theta)) * rp, 1.0])
    h_w = []
    for beta_i, beta_ii in ((params.beta1, params.beta11), (params.beta2, params.beta22)):
        h_w.append(np.eye(2) - rp * ((3.0 + beta_i) / 2.0 * np.eye(2) + psi_embed(beta_ii)))
    h_12 = -rp * psi_embed(params.beta12)

    h6 = np.zeros((6, 6))
    h6[0:2, 0:2] = h_zz
    h6[2:4, 2:4] = h_w[0]
    h6[4:6, 4:6] = h_w[1]
    h6[2:4, 4:6] = h_12
    h6[4:6, 2:4] = h_12.T

    j6 = np.kron(np.eye(3), J2)
    full = np.block([[np.eye(6), -j6], [j6, h6]])

    def sub(h):
        return np.block([[np.eye(2), -J2], [J2, h]])

    return LinearizedBlocks(full=full, zz=sub(h_zz), w1=sub(h_w[0]),
                            w2=sub(h_w[1]), coupling=h_12)
