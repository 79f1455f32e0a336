"""Spectral indices of essential systems.

Contains the unit-circle bookkeeping of a monodromy matrix (nullities,
determinant indicator, Krein signatures, normal-form classification,
splitting numbers) and the Hill/Fourier discretization of the associated
second-order operator

    A = -d^2/dt^2 - I + R(t) diag(lambda3, lambda4) R(t)^T / (1 + e cos t)

on omega-twisted 2*pi domains, whose Morse index equals the omega-index of
the monodromy path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .linalg import J4, UNIT_CIRCLE_TOL, eig4, rotation, s_matrix
from .systems import EssentialSystem

TWO_PI = 2.0 * np.pi

#: default kernel threshold of the Hill eigenvalue counts
EPS_KER = 1e-6

#: default Fourier truncation (|k| <= N)
DEFAULT_N = 64


def _unit_complex(omega) -> complex:
    w = complex(omega)
    if abs(abs(w) - 1.0) > 1e-9:
        raise ValueError(f"omega must lie on the unit circle, got |omega| = {abs(w)}")
    return w / abs(w)


def nu_omega(m: np.ndarray, omega, tol: float = UNIT_CIRCLE_TOL) -> int:
    """dim ker (M - omega I) via small singular values.

    The threshold scales with sqrt(||M||): kernel vectors of unit-circle
    eigenvalues live at O(1) scale, so their singular values are polluted by
    roughly rtol * ||M|| integration noise, while the spurious near-kernel
    directions of a strongly hyperbolic M sit many orders above that; the
    geometric mean separates the two regimes.
    """
    m = np.asarray(m, dtype=float)
    w = _unit_complex(omega)
    sv = np.linalg.svd(m - w * np.eye(m.shape[0]), compute_uv=False)
    scale = np.sqrt(max(1.0, float(np.linalg.norm(m, 2))))
    return int(np.sum(sv <= tol * scale))


def d_omega(m: np.ndarray, omega) -> float:
    """The real degeneracy indicator -conj(omega)^2 det(M - omega I) (n = 2).

    Real-valued on the unit circle; its sign changes bracket omega-degenerate
    parameters for omega = +-1.
    """
    m = np.asarray(m, dtype=float)
    w = _unit_complex(omega)
    val = -np.conj(w) ** 2 * np.linalg.det(m - w * np.eye(4))
    if abs(val.imag) > 1e-8 * max(1.0, abs(val.real)):
        raise ArithmeticError(f"degeneracy indicator not real: {val}")
    return float(val.real)


def _krein_sign(m: np.ndarray, lam: complex, tol: float = UNIT_CIRCLE_TOL) -> int:
    """Sign of the Hermitian form v* (-i J) v on the eigenvector of lam."""
    m = np.asarray(m, dtype=float)
    vals, vecs = np.linalg.eig(m)
    scale = max(1.0, abs(lam))
    hits = np.where(np.abs(vals - lam) <= 10.0 * tol * scale)[0]
    if hits.size == 0:
        raise ValueError(f"{lam} is not an eigenvalue of M")
    if hits.size > 1:
        raise ArithmeticError(f"eigenvalue {lam} is not simple")
    if abs(lam.imag) <= tol:
        raise ValueError("Krein signature undefined for real eigenvalues")
    v = vecs[:, hits[0]]
    q = (v.conj() @ ((-1j) * J4) @ v).real
    if abs(q) < 1e-8 * (v.conj() @ v).real:
        raise ArithmeticError("Krein form numerically degenerate")
    return 1 if q > 0 else -1


def krein_signature(m: np.ndarray, lam: complex, tol: float = UNIT_CIRCLE_TOL) -> tuple[int, int]:
    """Krein signature (p, q) of a simple non-real unit eigenvalue."""
    return (1, 0) if _krein_sign(m, lam, tol) > 0 else (0, 1)


def _jordan_sign(m: np.ndarray, pm: float, tol: float = UNIT_CIRCLE_TOL) -> int:
    """Nilpotent-part sign of a 2x2 Jordan block at eigenvalue pm = +-1.

    Restricts J (M - pm I) to the generalized eigenspace; the signature of
    its symmetric part is a symplectic invariant and distinguishes the two
    non-semisimple normal forms at +-1.  Returns 0 when the restriction is
    numerically zero (semisimple case).
    """
    m = np.asarray(m, dtype=float)
    a = m - pm * np.eye(4)
    _, sv, vh = np.linalg.svd(a @ a)
    if sv[1] <= tol * max(1.0, sv[0]):
        raise ArithmeticError("generalized eigenspace at +-1 exceeds dimension 2")
    basis = vh[2:].T  # orthonormal basis of the 2-dim generalized eigenspace
    w = basis.T @ J4 @ a @ basis
    w = 0.5 * (w + w.T)
    ev = np.linalg.eigvalsh(w)
    lead = ev[np.argmax(np.abs(ev))]
    if abs(lead) < 1e-8 * max(1.0, float(np.linalg.norm(m, 2))):
        return 0
    return 1 if lead > 0 else -1


@dataclass(frozen=True)
class NormalFormTag:
    """Basic-normal-form decomposition of a 4x4 symplectic matrix.

    `blocks` lists the 2x2 factors; rotation blocks carry their
    Krein-positive angle in (0, 2*pi) in `angles` (same order).  `tag` is
    the rendered product, or one of the standalone tags 'hyperbolic',
    'complex-saddle', 'N2-suspect'.
    """

    tag: str
    blocks: tuple[str, ...]
    angles: tuple[float, ...]
    nu1: int
    num1: int
    eigenvalues: np.ndarray

    def is_suspect(self) -> bool:
        return self.tag == "N2-suspect"


def _render(blocks: list, nu1: int, num1: int, vals: np.ndarray) -> NormalFormTag:
    """blocks: list of (name, angle_or_None); renders the canonical tag."""
    def key(item):
        name, ang = item
        if name.startswith("D("):
            return (2, name, 0.0)
        if name == "R":
            return (1, name, ang)
        return (0, name, 0.0)

    blocks = sorted(blocks, key=key)
    n_rot = sum(1 for name, _ in blocks if name == "R")
    names, angles = [], []
    seen_rot = 0
    for name, ang in blocks:
        if name == "R":
            seen_rot += 1
            names.append("R(theta)" if n_rot == 1 else f"R(theta{seen_rot})")
            angles.append(float(ang))
        else:
            names.append(name)
    return NormalFormTag(tag="<>".join(names), blocks=tuple(names),
                         angles=tuple(angles), nu1=nu1, num1=num1,
                         eigenvalues=vals)


def classify_normal_form(m: np.ndarray, unit_tol: float = UNIT_CIRCLE_TOL) -> NormalFormTag:
    """Classify a symplectic 4x4 matrix into a product of basic normal forms.

    Falls back to the tag 'N2-suspect' whenever the spectrum sits inside the
    ambiguity band of the unit circle or a defective unit eigenvalue cannot
    be resolved; callers must then refine tolerances instead of trusting a
    silently chosen tag.
    """
    m = np.asarray(m, dtype=float)
    spec = eig4(m, unit_tol=unit_tol)
    vals = spec.eigenvalues
    margins = spec.unit_margins()
    unit = spec.unit_flags
    nu1 = nu_omega(m, 1.0, unit_tol)
    num1 = nu_omega(m, -1.0, unit_tol)

    def suspect() -> NormalFormTag:
        return NormalFormTag(tag="N2-suspect", blocks=("N2-suspect",),
                             angles=(), nu1=nu1, num1=num1, eigenvalues=vals)

    # tie-break: an off-circle pair hugging the circle is indistinguishable
    # from a unit collision at this tolerance
    if unit.any() and (~unit).any() and float(margins[~unit].min()) < 10.0 * unit_tol:
        return suspect()

    is_real = np.abs(vals.imag) <= 1e-9 * (1.0 + np.abs(vals))
    ucount = int(unit.sum())

    if ucount == 0:
        if not is_real.any():
            return NormalFormTag(tag="complex-saddle", blocks=("complex-saddle",),
                                 angles=(), nu1=nu1, num1=num1, eigenvalues=vals)
        if is_real.all():
            pos = vals.real > 0
            if pos.any() and (~pos).any():
                return _render([("D(-2)", None), ("D(2)", None)], nu1, num1, vals)
            return NormalFormTag(tag="hyperbolic", blocks=("hyperbolic",),
                                 angles=(), nu1=nu1, num1=num1, eigenvalues=vals)
        return suspect()  # mixed real/complex off the circle: not symplectic-consistent

    blocks: list = []

    # off-circle part (only a real reciprocal pair is possible alongside a unit pair)
    off = vals[~unit]
    if off.size:
        if off.size != 2 or not is_real[~unit].all():
            return suspect()
        blocks.append(("D(2)" if off.real.mean() > 0 else "D(-2)", None))

    # unit part
    uvals = vals[unit]
    # a defective +-1 eigenvalue splits numerically into a conjugate pair
    # with O(sqrt(eps)) imaginary part; within unit_tol of the real axis the
    # rotation angle is unresolvable anyway, so treat the pair as real
    ureal = np.abs(uvals.imag) <= unit_tol * (1.0 + np.abs(uvals))
    for pm, g in ((1.0, nu1), (-1.0, num1)):
        k = int(np.sum(ureal & (np.sign(uvals.real) == pm)))
        if k == 0:
            continue
        if k != 2:
            return suspect()
        name = "I2" if pm > 0 else "-I2"
        if g >= 2:
            blocks.append((name, None))
        elif g == 1:
            try:
                b = _jordan_sign(m, pm, unit_tol)
            except ArithmeticError:
                return suspect()
            if b == 0:
                blocks.append((name, None))
            else:
                blocks.append((f"N1({int(pm)},{b})", None))
        else:
            return suspect()

    uppers = uvals[~ureal & (uvals.imag > 0)]
    lowers = uvals[~ureal & (uvals.imag < 0)]
    if uppers.size != lowers.size:
        return suspect()
    if uppers.size == 2 and abs(uppers[0] - uppers[1]) < 10.0 * unit_tol:
        return suspect()  # near-collision of two rotation pairs
    for lam in uppers:
        try:
            s = _krein_sign(m, complex(lam), unit_tol)
        except (ArithmeticError, ValueError):
            return suspect()
        ang = float(np.angle(lam) % TWO_PI)
        theta = ang if s > 0 else TWO_PI - ang
        blocks.append(("R", theta))

    if sum(2 for _ in blocks) != 4:
        return suspect()
    return _render(blocks, nu1, num1, vals)


def stability_verdict(nf: NormalFormTag) -> str:
    """Verdict in {strongly-stable, unstable, hyperbolic, boundary}.

    strongly-stable: all multipliers on U, simple, non-degenerate at +-1;
    hyperbolic: spectrum disjoint from U; boundary: degenerate unit
    eigenvalue or unresolved classification; unstable: anything else with a
    multiplier off U.
    """
    if nf.is_suspect():
        return "boundary"
    if nf.tag in ("hyperbolic", "complex-saddle", "D(-2)<>D(2)"):
        return "hyperbolic"
    degenerate = any(b in ("I2", "-I2") or b.startswith("N1(") for b in nf.blocks)
    off_circle = any(b.startswith("D(") for b in nf.blocks)
    if off_circle:
        return "unstable"
    if degenerate:
        return "boundary"
    return "strongly-stable"


# --- splitting numbers ------------------------------------------------------

def splitting_sites(nf: NormalFormTag) -> dict:
    """Map angle phi in [0, 2*pi) -> (S+, S-) summed over the basic blocks."""
    if nf.is_suspect():
        raise ValueError("unsupported: unresolved normal form")
    sites: dict = {}

    def add(phi: float, sp: int, sm: int) -> None:
        phi = float(phi % TWO_PI)
        for known in sites:
            if abs(known - phi) < 1e-8 or abs(abs(known - phi) - TWO_PI) < 1e-8:
                phi = known
                break
        old = sites.get(phi, (0, 0))
        sites[phi] = (old[0] + sp, old[1] + sm)

    angle_iter = iter(nf.angles)
    for b in nf.blocks:
        if b == "I2":
            add(0.0, 1, 1)
        elif b == "-I2":
            add(np.pi, 1, 1)
        elif b.startswith("N1(1,"):
            sgn = int(b[5:-1])
            add(0.0, *((1, 1) if sgn >= 0 else (0, 0)))
        elif b.startswith("N1(-1,"):
            sgn = int(b[6:-1])
            add(np.pi, *((1, 1) if sgn <= 0 else (0, 0)))
        elif b.startswith("R(theta"):
            theta = next(angle_iter)
            add(theta, 0, 1)
            add(TWO_PI - theta, 1, 0)
        # D(2)/D(-2)/hyperbolic/complex-saddle contribute nothing
    return sites


def index_via_splitting(m: np.ndarray, i1: int, omegas) -> list[int]:
    """Propagate i_1 around the unit circle through the splitting numbers.

        i_w0 = i_1 + S+(1) + sum_{0 < phi < phi0} (S+ - S-)(e^{i phi}) - S-(w0).
    """
    nf = classify_normal_form(m)
    sites = splitting_sites(nf)
    out = []
    for omega in omegas:
        w = _unit_complex(omega)
        phi0 = float(np.angle(w) % TWO_PI)
        if phi0 < 1e-8 or TWO_PI - phi0 < 1e-8:
            out.append(int(i1))
            continue
        i = i1 + sites.get(0.0, (0, 0))[0]
        for phi, (sp, sm) in sites.items():
            if 1e-8 < phi < phi0 - 1e-8:
                i += sp - sm
            elif abs(phi - phi0) <= 1e-8:
                i -= sm
        out.append(int(i))
    return out


# --- Hill / Fourier discretization ------------------------------------------

def coefficient_matrix(lambda3: float, lambda4: float, e: float, t: float) -> np.ndarray:
    """The rotated potential R diag(lambda3, lambda4) R^T / (1 + e cos t)."""
    avg = 0.5 * (lambda3 + lambda4)
    dif = 0.5 * (lambda3 - lambda4)
    return (avg * np.eye(2) + dif * s_matrix(t)) / (1.0 + e * np.cos(t))


@dataclass(frozen=True)
class HillOperator:
    """Galerkin matrix of A on the omega-twisted Fourier basis.

    Basis functions are e^{i (k + sigma) t} u_alpha with |k| <= N and
    sigma = arg(omega)/(2*pi); the matrix is Hermitian of dimension
    2 (2N + 1).
    """

    lambda3: float
    lambda4: float
    e: float
    omega: complex
    N: int
    matrix: np.ndarray

    def hermiticity_defect(self) -> float:
        h = self.matrix
        return float(np.max(np.abs(h - h.conj().T)))


def hill_matrix(lambda3: float, lambda4: float, e: float, omega,
                N: int = DEFAULT_N) -> HillOperator:
    if N < 8:
        raise ValueError("truncation N must be at least 8")
    if not 0.0 <= e < 1.0:
        raise ValueError("eccentricity must lie in [0, 1)")
    w = _unit_complex(omega)
    sigma = (np.angle(w) / TWO_PI) % 1.0

    nodes = 8 * N
    t = TWO_PI * np.arange(nodes) / nodes
    f = 1.0 / (1.0 + e * np.cos(t))
    avg = 0.5 * (lambda3 + lambda4)
    dif = 0.5 * (lambda3 - lambda4)
    fh11 = np.fft.fft((avg + dif * np.cos(2.0 * t)) * f) / nodes
    fh12 = np.fft.fft(dif * np.sin(2.0 * t) * f) / nodes
    fh22 = np.fft.fft((avg - dif * np.cos(2.0 * t)) * f) / nodes

    ns = np.arange(-2 * N, 2 * N + 1)
    idx = ns % nodes
    qhat = np.empty((4 * N + 1, 2, 2), dtype=complex)
    qhat[:, 0, 0] = fh11[idx]
    qhat[:, 0, 1] = fh12[idx]
    qhat[:, 1, 0] = fh12[idx]
    qhat[:, 1, 1] = fh22[idx]

    ks = np.arange(-N, N + 1)
    dim = 2 * (2 * N + 1)
    h4 = qhat[(ks[:, None] - ks[None, :]) + 2 * N]  # [j, k] -> Qhat_{j-k}
    h = h4.transpose(0, 2, 1, 3).reshape(dim, dim).copy()
    diag = np.repeat((ks + sigma) ** 2 - 1.0, 2)
    h[np.arange(dim), np.arange(dim)] += diag

    defect = float(np.max(np.abs(h - h.conj().T)))
    scale = max(1.0, float(np.max(np.abs(h))))
    if defect > 1e-12 * scale:
        raise ArithmeticError(f"Hill matrix Hermiticity defect {defect:.3e}")
    h = 0.5 * (h + h.conj().T)
    return HillOperator(lambda3=float(lambda3), lambda4=float(lambda4),
                        e=float(e), omega=w, N=int(N), matrix=h)


@dataclass(frozen=True)
class OmegaIndex:
    omega: complex
    i_omega: int
    nu_omega: int
    truncation_N: int
    stabilized: bool


def morse_index(hill: HillOperator, eps_ker: float = EPS_KER) -> OmegaIndex:
    """Negative-eigenvalue count of the Hill matrix, stabilized by doubling.

    The kernel threshold is eps_ker rescaled by the sup-norm of the bounded
    potential part (not by the matrix norm, which grows like N^2 from the
    differential part and would swallow genuine small eigenvalues).
    """
    scale = max(1.0, (abs(hill.lambda3) + abs(hill.lambda4)) / (1.0 - hill.e))
    thr = eps_ker * scale

    def counts(n: int) -> tuple[int, int]:
        op = hill if n == hill.N else hill_matrix(
            hill.lambda3, hill.lambda4, hill.e, hill.omega, n)
        vals = np.linalg.eigvalsh(op.matrix)
        return int(np.sum(vals < -thr)), int(np.sum(np.abs(vals) <= thr))

    i_base, _ = counts(hill.N)
    i_fine, nu_fine = counts(2 * hill.N)
    return OmegaIndex(omega=hill.omega, i_omega=i_fine, nu_omega=nu_fine,
                      truncation_N=hill.N, stabilized=(i_base == i_fine))


def omega_index(sys: EssentialSystem, omega, N: int = DEFAULT_N,
                eps_ker: float = EPS_KER) -> OmegaIndex:
    """Morse index/nullity of the essential system at boundary twist omega."""
    return morse_index(hill_matrix(sys.lambda3, sys.lambda4, sys.e, omega, N),
                       eps_ker)


# --- quadratic forms and tangent quadratures ---------------------------------

def quadratic_form(lambda3: float, lambda4: float, e: float, x, xdot) -> float:
    """<A x, x> = int |x'|^2 - |x|^2 + x^T Q(t) x dt over one period.

    x and xdot are callables t -> length-2 arrays (real trig polynomials).
    """
    avg = 0.5 * (lambda3 + lambda4)
    dif = 0.5 * (lambda3 - lambda4)

    def integrand(t: float) -> float:
        xv = np.asarray(x(t), dtype=float)
        dv = np.asarray(xdot(t), dtype=float)
        q = (avg * np.eye(2) + dif * s_matrix(t)) / (1.0 + e * np.cos(t))
        return float(dv @ dv - xv @ xv + xv @ (q @ xv))

    val, err = quad(integrand, 0.0, TWO_PI, epsabs=1e-12, epsrel=1e-12, limit=400)
    if err > 1e-10:
        raise ArithmeticError(f"quadrature error estimate {err:.3e} too large")
    return val


#: exact large-e limit of the intersection trial functional
INTERSECTION_LIMIT = 1.5 * np.pi * (3.0 * np.pi ** 2 / 8.0 - 4.0)


def intersection_functional(e: float) -> float:
    """Trial value -3*pi/2 + (9/2) int (cos(t/2) - (pi/4) sin t)^2/(1+e cos t).

    Negative for e close to 1, which forces the first anti-periodic
    degenerate curve of the non-convex family below beta_tilde = 0 and hence
    an intersection with the first periodic curve beta_tilde = 0.
    """
    def integrand(t: float) -> float:
        return (np.cos(0.5 * t) - 0.25 * np.pi * np.sin(t)) ** 2 / (1.0 + e * np.cos(t))

    val, _ = quad(integrand, 0.0, TWO_PI, epsabs=1e-12, epsrel=1e-12, limit=400)
    return -1.5 * np.pi + 4.5 * val


def degenerate_tangent_forms(case: str) -> dict:
    """Quadrature values of the parameter/eccentricity derivative forms on
    the kernel eigenfunction at the first -1-degenerate point (e = 0).

    Returns {'d_param', 'd_e', 'slope'} with slope = -d_e / d_param, the
    common |d beta / d e| of the two branches emanating from the point.
    """
    from .analytic import (BETA_HAT_HALF, BETA_STAR,
                           KERNEL_COEFFICIENT_CONVEX, kernel_coefficient)
    if case == "nonconvex":
        bt = BETA_HAT_HALF
        l3, l4 = (9.0 + 3.0 * bt) / 2.0, -bt
        a = kernel_coefficient(0)
        dl3, dl4 = 1.5, -1.0  # d(lambda)/d(beta_tilde)
    elif case == "convex":
        s = np.sqrt(9.0 - BETA_STAR)
        l3, l4 = (9.0 - 3.0 * s) / 2.0, s
        a = KERNEL_COEFFICIENT_CONVEX
        dl3, dl4 = 3.0 / (4.0 * s), -1.0 / (2.0 * s)  # d(lambda)/d(beta)
    else:
        raise ValueError("case must be 'nonconvex' or 'convex'")

    def u2(t: float) -> tuple[float, float]:
        return (a * np.sin(0.5 * t)) ** 2, np.cos(0.5 * t) ** 2

    d_param, _ = quad(lambda t: dl3 * u2(t)[0] + dl4 * u2(t)[1],
                      0.0, TWO_PI, epsabs=1e-12, epsrel=1e-12)
    d_e, _ = quad(lambda t: -np.cos(t) * (l3 * u2(t)[0] + l4 * u2(t)[1]),
                  0.0, TWO_PI, epsabs=1e-12, epsrel=1e-12)
    return {"d_param": float(d_param), "d_e": float(d_e),
            "slope": float(-d_e / d_param)}


# --- kernel Fourier construction ---------------------------------------------

@dataclass(frozen=True)
class KernelSolution:
    """Fourier construction of the kernel at a 1-degenerate point (bt > 0).

    First solution w1 = R(t)(a0 + sum a_n cos nt, sum d_n sin nt)^T and its
    companion w2 = R(t)(sum a_n sin nt, c0_tilde - sum d_n cos nt)^T, which
    satisfies the mirrored recurrences and certifies even multiplicity.
    """

    beta_tilde: float
    e: float
    N: int
    a: np.ndarray  # a[0..N]
    d: np.ndarray  # d[0] unused (= 0), d[1..N]
    c0_tilde: float
    singular_value: float

    def _series(self, t, mirrored: bool):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        n = np.arange(self.N + 1)
        cn, sn = np.cos(np.outer(t, n)), np.sin(np.outer(t, n))
        if not mirrored:
            x = cn @ self.a
            y = sn @ self.d
            dx = -(sn * n) @ self.a
            dy = (cn * n) @ self.d
            ddx = -(cn * n ** 2) @ self.a
            ddy = -(sn * n ** 2) @ self.d
        else:
            x = sn @ self.a
            y = -cn @ self.d
            y += self.c0_tilde
            dx = (cn * n) @ self.a
            dy = (sn * n) @ self.d
            ddx = -(sn * n ** 2) @ self.a
            ddy = (cn * n ** 2) @ self.d
        return x, y, dx, dy, ddx, ddy

    def _w(self, t, mirrored: bool) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        x, y = self._series(t, mirrored)[:2]
        c, s = np.cos(t), np.sin(t)
        return np.stack([c * x - s * y, s * x + c * y], axis=-1)

    def w1(self, t) -> np.ndarray:
        return self._w(t, mirrored=False)

    def w2(self, t) -> np.ndarray:
        return self._w(t, mirrored=True)

    def operator_residual(self, nsamples: int = 512) -> float:
        """Max residual of the second-order system on both solutions."""
        bt, e = self.beta_tilde, self.e
        l3, l4 = (9.0 + 3.0 * bt) / 2.0, -bt
        t = TWO_PI * np.arange(nsamples) / nsamples
        r = 1.0 + e * np.cos(t)
        worst = 0.0
        for mirrored in (False, True):
            x, y, dx, dy, ddx, ddy = self._series(t, mirrored)
            r1 = r * ddx - 2.0 * r * dy - l3 * x
            r2 = r * ddy + 2.0 * r * dx - l4 * y
            worst = max(worst, float(np.max(np.abs(r1))), float(np.max(np.abs(r2))))
        return worst

    def gram_determinant(self, nsamples: int = 512) -> float:
        t = TWO_PI * np.arange(nsamples) / nsamples
        w1, w2 = self.w1(t), self.w2(t)
        g11 = float(np.mean(np.sum(w1 * w1, axis=-1)))
        g12 = float(np.mean(np.sum(w1 * w2, axis=-1)))
        g22 = float(np.mean(np.sum(w2 * w2, axis=-1)))
        return g11 * g22 - g12 * g12


def kernel_fourier_solution(lambda3: float, lambda4: float, e: float,
                            beta_tilde: float, N: int = DEFAULT_N) -> KernelSolution:
    """Solve the truncated kernel recurrences at a 1-degenerate point.

    The coefficients (a_n, d_n) satisfy, with A_n = -(n/2) [[n, 2], [2, n]]
    and B_n = [[n^2 + lambda3, 2n], [2n, n^2 + lambda4]],

        e A_{n+1} x_{n+1} = B_n x_n - e A_{n-1} x_{n-1},  n >= 1 (A_0 = 0),

    closed by x_{N+1} = 0; the smallest singular vector of the square system
    gives the kernel element.  a_0 follows from
    lambda3 a_0 = -e (d_1 + a_1/2); the companion solution uses the mirrored
    coefficients with c0_tilde = -(e/beta_tilde)(a_1 + d_1/2), which requires
    beta_tilde > 0 (the first periodic curve beta_tilde = 0 is excluded).
    """
    bt = float(beta_tilde)
    if bt <= 0.0:
        raise ValueError("construction unavailable for beta_tilde <= 0")
    if abs(lambda3 - (9.0 + 3.0 * bt) / 2.0) > 1e-8 or abs(lambda4 + bt) > 1e-8:
        raise ValueError("(lambda3, lambda4) inconsistent with beta_tilde")
    if N < 8:
        raise ValueError("truncation N must be at least 8")

    def a_mat(n: int) -> np.ndarray:
        return -(n / 2.0) * np.array([[n, 2.0], [2.0, n]])

    def b_mat(n: int) -> np.ndarray:
        return np.array([[n * n + lambda3, 2.0 * n], [2.0 * n, n * n + lambda4]])

    g = np.zeros((2 * N, 2 * N))
    for n in range(1, N + 1):
        r = 2 * (n - 1)
        g[r:r + 2, r:r + 2] = -b_mat(n)
        if n + 1 <= N:
            g[r:r + 2, r + 2:r + 4] = e * a_mat(n + 1)
        if n - 1 >= 1:
            g[r:r + 2, r - 4 + 2:r] = e * a_mat(n - 1)

    _, sv, vh = np.linalg.svd(g)
    u = vh[-1]
    a = np.empty(N + 1)
    d = np.zeros(N + 1)
    a[1:] = u[0::2]
    d[1:] = u[1::2]
    a[0] = -e * (d[1] + 0.5 * a[1]) / lambda3
    c0t = -(e / bt) * (a[1] + 0.5 * d[1])
    return KernelSolution(beta_tilde=bt, e=float(e), N=int(N), a=a, d=d,
                          c0_tilde=float(c0t), singular_value=float(sv[-1]))
