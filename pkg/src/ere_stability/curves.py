"""Degenerate curves in the (parameter, eccentricity) plane.

A point (beta, e) is omega-degenerate when the monodromy of the essential
system has eigenvalue omega; equivalently the twisted Hill operator has a
kernel.  This module locates such points by bisection on the integer Hill
index (robust across even-multiplicity crossings and tangential touches,
where the determinant indicator d_omega does not change sign), traces the
curves over an eccentricity grid, computes the convex stability boundaries
and classifies regions.
"""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass, field

import numpy as np

from . import analytic
from .index import (DEFAULT_N, EPS_KER, NormalFormTag, classify_normal_form,
                    d_omega, hill_matrix, nu_omega, omega_index,
                    stability_verdict)
from .linalg import UNIT_CIRCLE_TOL
from .systems import EssentialSystem, integrate_monodromy

#: default eccentricity grid of curve tracing
DEFAULT_E_GRID = np.round(np.arange(0.0, 0.951, 0.05), 10)

#: parameter windows per case
WINDOWS = {"nonconvex": (-1.0 + 1e-6, 3.0), "convex": (1e-9, 27.0 / 4.0),
           "lagrange": (1e-9, 27.0 / 4.0)}

BETA_MAX = 27.0 / 4.0


def make_system(case: str, param: float, e: float) -> EssentialSystem:
    """param is beta_tilde for the non-convex case, beta otherwise."""
    if case == "nonconvex":
        return EssentialSystem.nonconvex_tilde(param, e)
    if case == "convex":
        return EssentialSystem.convex(param, e)
    if case == "lagrange":
        return EssentialSystem.lagrange(param, e)
    raise ValueError(f"unknown case {case!r}")


def _fast_n(e: float) -> int:
    """Truncation for bisection probes (certificates re-run at DEFAULT_N)."""
    return 32 if e <= 0.8 else 48


def _fast_index(case: str, param: float, e: float, omega, n: int) -> int:
    """Single-truncation strictly-negative count, used as the bisection
    predicate.

    No kernel threshold here: away from a degenerate point no eigenvalue is
    near zero, so the strict count equals the Morse index, while at the
    point itself the crossing eigenvalue passes through zero exactly -- a
    threshold would bias the bisection root by threshold/slope.
    """
    sys = make_system(case, param, e)
    op = hill_matrix(sys.lambda3, sys.lambda4, e, omega, n)
    vals = np.linalg.eigvalsh(op.matrix)
    return int(np.sum(vals < 0.0))


@dataclass(frozen=True)
class DegeneratePoint:
    case: str
    omega: complex
    e: float
    param: float
    bracket: tuple[float, float]
    nu_hill: int
    nu_monodromy: int
    i_below: int
    i_above: int
    d_sign_change: bool
    stabilized: bool


def _bisect(pred, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """pred is False at lo and True at hi; shrink the bracket to width tol."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def find_degenerate(case: str, omega, e: float, bracket, tol: float = 1e-10,
                    n_fast: int | None = None,
                    n_certify: int = DEFAULT_N) -> list[DegeneratePoint]:
    """All omega-degenerate parameters inside the bracket, with certificates.

    Bisects the integer Hill index, one level at a time; the index is
    monotone in the parameter for both families, so every degenerate point
    is a level crossing.  Points closer than 1e-7 merge into a single point
    (even geometric multiplicity).  Certificates: Hill nullity at the
    default truncation with doubling, monodromy kernel dimension, and the
    sign behaviour of the determinant indicator d_omega for real omega.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValueError("empty bracket")
    n = n_fast if n_fast is not None else _fast_n(e)
    i_lo = _fast_index(case, lo, e, omega, n)
    i_hi = _fast_index(case, hi, e, omega, n)
    if i_lo == i_hi:
        return []

    increasing = i_hi > i_lo
    levels = (range(i_lo + 1, i_hi + 1) if increasing
              else range(i_lo - 1, i_hi - 1, -1))
    raw: list[tuple[float, float]] = []
    for level in levels:
        if increasing:
            pred = lambda x: _fast_index(case, x, e, omega, n) >= level
        else:
            pred = lambda x: _fast_index(case, x, e, omega, n) <= level
        raw.append(_bisect(pred, lo, hi, tol))

    # merge coincident level crossings (multiplicity >= 2)
    groups: list[list[tuple[float, float]]] = []
    for br in sorted(raw, key=lambda b: b[0]):
        if groups and abs(0.5 * sum(br) - 0.5 * sum(groups[-1][-1])) < 1e-7:
            groups[-1].append(br)
        else:
            groups.append([br])

    w = complex(omega)
    is_real_w = abs(w.imag) < 1e-12
    points = []
    for grp in groups:
        p_lo = min(b[0] for b in grp)
        p_hi = max(b[1] for b in grp)
        param = 0.5 * (p_lo + p_hi)
        oi = omega_index(make_system(case, param, e), omega, N=n_certify)
        gamma = integrate_monodromy(make_system(case, param, e))
        nu_mono = nu_omega(gamma.gamma2pi.m, omega)
        d_change = False
        if is_real_w:
            h = max(1e-6, 10.0 * (p_hi - p_lo))
            d_left = d_omega(integrate_monodromy(
                make_system(case, param - h, e)).gamma2pi.m, w.real)
            d_right = d_omega(integrate_monodromy(
                make_system(case, param + h, e)).gamma2pi.m, w.real)
            d_change = d_left * d_right < 0
        i_below = _fast_index(case, p_lo - max(1e-8, tol), e, omega, n)
        i_above = _fast_index(case, p_hi + max(1e-8, tol), e, omega, n)
        points.append(DegeneratePoint(
            case=case, omega=w, e=float(e), param=float(param),
            bracket=(p_lo, p_hi), nu_hill=oi.nu_omega, nu_monodromy=nu_mono,
            i_below=i_below, i_above=i_above, d_sign_change=d_change,
            stabilized=oi.stabilized))
    return points


@dataclass(frozen=True)
class CurveSample:
    e: float
    param: float
    nu: int
    bracket: float  # final bracket width


@dataclass
class DegenerateCurve:
    case: str
    omega: complex
    label: str
    start_param: float
    samples: list[CurveSample] = field(default_factory=list)
    truncated_reason: str | None = None

    def e_values(self) -> np.ndarray:
        return np.array([s.e for s in self.samples])

    def params(self) -> np.ndarray:
        return np.array([s.param for s in self.samples])

    def value_at(self, e: float) -> float | None:
        for s in self.samples:
            if abs(s.e - e) < 1e-12:
                return s.param
        return None


def trace_curve(case: str, omega, start: float, e_grid=None, label: str = "",
                window=None, branch: str | None = None,
                slope_hint: float | None = None,
                tol: float = 1e-10) -> DegenerateCurve:
    """Continuation of one omega-degenerate curve over the eccentricity grid.

    Brackets around a secant prediction (seeded by slope_hint at the start);
    `branch` ('lower'/'upper') disambiguates the two branches emanating from
    a common start point while no secant is available.  Tracing truncates,
    with a reason, when the bracket loses the curve or the new sample jumps
    more than 10x the local secant step.
    """
    e_grid = DEFAULT_E_GRID if e_grid is None else np.asarray(e_grid, float)
    wlo, whi = window if window is not None else WINDOWS[case]
    curve = DegenerateCurve(case=case, omega=complex(omega), label=label,
                            start_param=float(start))
    history: list[tuple[float, float]] = []

    for e in e_grid:
        if e == 0.0:
            pts = find_degenerate(case, omega, 0.0,
                                  (max(wlo, start - 0.05), min(whi, start + 0.05)),
                                  tol=tol)
            pts = [p for p in pts if abs(p.param - start) < 2e-2]
            if not pts:
                curve.truncated_reason = "start point not degenerate"
                break
            best = min(pts, key=lambda p: abs(p.param - start))
            curve.samples.append(CurveSample(0.0, best.param, best.nu_hill,
                                             best.bracket[1] - best.bracket[0]))
            history.append((0.0, best.param))
            continue

        if len(history) >= 2:
            (e1, p1), (e2, p2) = history[-2], history[-1]
            slope = (p2 - p1) / (e2 - e1)
            pred = p2 + slope * (e - e2)
            step = abs(pred - p2)
        elif history:
            e2, p2 = history[-1]
            slope = slope_hint if slope_hint is not None else 0.0
            pred = p2 + slope * (e - e2)
            step = abs(pred - p2)
        else:
            pred, step = start, 0.0

        width = max(5.0 * step, 0.02)
        roots: list[DegeneratePoint] = []
        for attempt in range(3):
            blo = max(wlo, pred - width)
            bhi = min(whi, pred + width)
            if bhi - blo < tol:
                break
            roots = find_degenerate(case, omega, e, (blo, bhi), tol=tol)
            if roots:
                break
            width *= 3.0
        if not roots:
            curve.truncated_reason = f"bracket lost at e = {e:g}"
            break

        if len(history) < 2 and branch is not None and len(roots) > 1:
            best = roots[0] if branch == "lower" else roots[-1]
        else:
            best = min(roots, key=lambda p: abs(p.param - pred))
        guard = 10.0 * max(step, 1e-3)
        if len(history) >= 2 and abs(best.param - pred) > guard:
            curve.truncated_reason = f"jump guard tripped at e = {e:g}"
            break
        curve.samples.append(CurveSample(float(e), best.param, best.nu_hill,
                                         best.bracket[1] - best.bracket[0]))
        history.append((float(e), best.param))
    return curve


# --- figure curve families ----------------------------------------------------

def nonconvex_curve_specs() -> list[dict]:
    """Start data of the non-convex curve family inside the window
    beta_tilde in (-1, 3]: the periodic curves Gamma and the anti-periodic
    curves Xi, labeled by their start points on the e = 0 axis."""
    return [
        dict(label="Gamma_1", omega=1.0, start=0.0, branch=None, slope_hint=0.0),
        dict(label="Gamma_2_3", omega=1.0, start=analytic.beta_hat(1),
             branch=None, slope_hint=None),
        dict(label="Gamma_4_5", omega=1.0, start=analytic.beta_hat(2),
             branch=None, slope_hint=None),
        dict(label="Xi_1", omega=-1.0, start=analytic.BETA_HAT_HALF,
             branch="lower", slope_hint=-analytic.SLOPE_NONCONVEX),
        dict(label="Xi_2", omega=-1.0, start=analytic.BETA_HAT_HALF,
             branch="upper", slope_hint=analytic.SLOPE_NONCONVEX),
        dict(label="Xi_3", omega=-1.0, start=analytic.beta_hat(1.5),
             branch="lower", slope_hint=0.0),
        dict(label="Xi_4", omega=-1.0, start=analytic.beta_hat(1.5),
             branch="upper", slope_hint=0.0),
    ]


def convex_curve_specs() -> list[dict]:
    return [
        dict(label="Gamma_l", omega=-1.0, start=analytic.BETA_STAR,
             branch="lower", slope_hint=-analytic.SLOPE_CONVEX),
        dict(label="Gamma_m", omega=-1.0, start=analytic.BETA_STAR,
             branch="upper", slope_hint=analytic.SLOPE_CONVEX),
    ]


def trace_family(case: str, e_grid=None, tol: float = 1e-10,
                 map_fn=map) -> dict[str, DegenerateCurve]:
    """Trace the full labeled family of a case; map_fn allows a thread pool."""
    specs = nonconvex_curve_specs() if case == "nonconvex" else convex_curve_specs()

    def run(spec: dict) -> DegenerateCurve:
        return trace_curve(case, spec["omega"], spec["start"], e_grid=e_grid,
                           label=spec["label"], branch=spec["branch"],
                           slope_hint=spec["slope_hint"], tol=tol)

    return {c.label: c for c in map_fn(run, specs)}


# --- convex boundaries ---------------------------------------------------------

def is_hyperbolic(sys: EssentialSystem, margin: float = 1e-9) -> bool:
    """Spectrum of the monodromy disjoint from the unit circle."""
    spec = integrate_monodromy(sys).multipliers()
    return bool(np.all(spec.unit_margins() > margin))


@dataclass
class ConvexBoundaries:
    e: np.ndarray
    beta_l: np.ndarray  # first -1-degenerate level (i_{-1} drops 2 -> 1)
    beta_m: np.ndarray  # second -1-degenerate level (i_{-1} drops 1 -> 0)
    beta_r: np.ndarray  # hyperbolicity onset

    def check(self, tol: float = 1e-8) -> None:
        if not (np.all(self.beta_l <= self.beta_m + tol)
                and np.all(self.beta_m <= self.beta_r + tol)):
            raise AssertionError("boundary ordering beta_l <= beta_m <= beta_r violated")
        allv = np.concatenate([self.beta_l, self.beta_m, self.beta_r])
        if np.any(allv < -tol) or np.any(allv > BETA_MAX + tol):
            raise AssertionError("boundary values leave [0, 27/4]")


def convex_boundaries(e_grid=None, tol: float = 1e-10,
                      paranoid: bool = False, map_fn=map) -> ConvexBoundaries:
    """The three convex stability boundaries on the eccentricity grid.

    beta_l/beta_m are the parameters where the anti-periodic index drops
    below 2 and below 1 (they coincide at e = 0); beta_r is found by
    bisection on the hyperbolicity indicator, valid because the hyperbolic
    region is connected.  Paranoid mode re-scans the beta interval to verify
    a single onset.
    """
    e_grid = DEFAULT_E_GRID if e_grid is None else np.asarray(e_grid, float)

    def one(e: float) -> tuple[float, float, float]:
        n = _fast_n(e)
        bl = 0.5 * sum(_bisect(
            lambda x: _fast_index("convex", x, e, -1.0, n) <= 1,
            1e-9, BETA_MAX, tol))
        bm = 0.5 * sum(_bisect(
            lambda x: _fast_index("convex", x, e, -1.0, n) <= 0,
            1e-9, BETA_MAX, tol))
        if is_hyperbolic(make_system("convex", 1e-6, e)):
            raise ArithmeticError("hyperbolic at beta ~ 0: no stable band")
        br = 0.5 * sum(_bisect(
            lambda x: is_hyperbolic(make_system("convex", x, e)),
            1e-6, BETA_MAX, tol))
        if paranoid:
            grid = np.linspace(1e-6, BETA_MAX, 201)
            flags = np.array([is_hyperbolic(make_system("convex", b, e))
                              for b in grid])
            onsets = int(np.sum(np.diff(flags.astype(int)) != 0))
            if onsets != 1:
                raise ArithmeticError(
                    f"hyperbolic region not a single interval at e = {e:g}")
        return bl, bm, br

    rows = list(map_fn(one, [float(e) for e in e_grid]))
    out = ConvexBoundaries(e=np.asarray(e_grid, float),
                           beta_l=np.array([r[0] for r in rows]),
                           beta_m=np.array([r[1] for r in rows]),
                           beta_r=np.array([r[2] for r in rows]))
    out.check()
    return out


# --- region classification -----------------------------------------------------

@dataclass(frozen=True)
class RegionCell:
    case: str
    param: float
    e: float
    tag: NormalFormTag
    verdict: str
    max_modulus: float


def region_classify(case: str, params, eccs) -> list[RegionCell]:
    """Normal form and stability verdict on a parameter grid."""
    cells = []
    for e in np.atleast_1d(eccs):
        for p in np.atleast_1d(params):
            sys = make_system(case, float(p), float(e))
            spec = integrate_monodromy(sys)
            tag = classify_normal_form(spec.gamma2pi.m)
            cells.append(RegionCell(case=case, param=float(p), e=float(e),
                                    tag=tag, verdict=stability_verdict(tag),
                                    max_modulus=spec.multipliers().max_modulus()))
    return cells


# --- ordering verification -----------------------------------------------------

def verify_ordering(curves: dict[str, DegenerateCurve]) -> dict:
    """Check the left-to-right chain Xi_1 <= Xi_2 < Gamma_2_3 < Xi_3 <= Xi_4
    < Gamma_4_5 pointwise on the common eccentricity samples, the double
    multiplicity of the Gamma curves, and the crossing of Xi_1 through the
    first periodic curve beta_tilde = 0."""
    chain = ["Xi_1", "Xi_2", "Gamma_2_3", "Xi_3", "Xi_4", "Gamma_4_5"]
    strict_after = {"Xi_2", "Gamma_2_3", "Xi_4"}  # strict < to the next entry
    violations = []
    present = [c for c in chain if c in curves]
    e_common = None
    for label in present:
        es = set(np.round(curves[label].e_values(), 12))
        e_common = es if e_common is None else (e_common & es)
    e_common = sorted(e_common or [])

    for e in e_common:
        vals = [(label, curves[label].value_at(e)) for label in present]
        for (l1, v1), (l2, v2) in zip(vals, vals[1:]):
            if v1 is None or v2 is None:
                continue
            strict = l1 in strict_after
            ok = v1 < v2 - 1e-9 if strict else v1 <= v2 + 1e-9
            if not ok:
                violations.append(f"{l1} = {v1:.12g} !< {l2} = {v2:.12g} at e = {e:g}")

    for label in ("Gamma_2_3", "Gamma_4_5"):
        if label in curves:
            for s in curves[label].samples:
                if s.nu != 2:
                    violations.append(f"{label} has nu = {s.nu} at e = {s.e:g}")

    xi1_crosses = False
    if "Xi_1" in curves:
        p = curves["Xi_1"].params()
        xi1_crosses = bool(p.size and p.min() < 0.0 < p.max())

    return {"checked_e": e_common, "violations": violations,
            "xi1_crosses_gamma_1": xi1_crosses, "ok": not violations}


# --- CSV export ----------------------------------------------------------------

CSV_HEADER = ["case", "omega", "label", "e", "beta", "nu", "bracket"]


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _fmt_omega(w: complex) -> str:
    if abs(w.imag) < 1e-15:
        return _fmt(w.real)
    return f"{_fmt(w.real)}{'+' if w.imag >= 0 else '-'}{_fmt(abs(w.imag))}j"


def curves_to_csv(curves: dict[str, DegenerateCurve]) -> str:
    """One row per curve sample; the beta column carries beta_tilde for the
    non-convex case."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for label in sorted(curves):
        c = curves[label]
        for s in c.samples:
            writer.writerow([c.case, _fmt_omega(c.omega), c.label,
                             _fmt(s.e), _fmt(s.param), str(s.nu), _fmt(s.bracket)])
    return buf.getvalue()


def boundaries_to_csv(b: ConvexBoundaries) -> str:
    """Convex boundary export; beta_r is not an omega-curve, its omega
    column is written as 0."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for label, omega, arr in (("Gamma_l", -1.0, b.beta_l),
                              ("Gamma_m", -1.0, b.beta_m),
                              ("Gamma_r", 0.0, b.beta_r)):
        for e, val in zip(b.e, arr):
            writer.writerow(["convex", _fmt(omega), label, _fmt(e),
                             _fmt(val), "", ""])
    return buf.getvalue()
