"""Command-line front end.

Subcommands:
  analyze   point analysis of an essential system (JSON report)
  figure    trace the degenerate-curve families of the parameter plane
            (1: non-convex, 2: convex) to CSV with an optional SVG overlay
  cc-limit  finite-mass central configurations against their small-mass
            limits (JSON ladder)

Exit codes: 0 if every requested computation stabilized, 1 otherwise,
2 for usage errors.  A key=value config file can pre-set any flag; explicit
flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .curves import (boundaries_to_csv, convex_boundaries, curves_to_csv,
                     trace_family)
from .index import classify_normal_form, omega_index, stability_verdict
from .reduction import build_ccdata, essential_parameters
from .smallmass import SmallMassFamily, limit_parameters, solve_cc_newton
from .systems import BETA_MAX, EssentialSystem, integrate_monodromy

ENV_THREADS = "ERE_STABILITY_THREADS"


def _sig15(x) -> float:
    return float(f"{float(x):.15g}")


def _json_complex(z: complex) -> list[float]:
    return [_sig15(z.real), _sig15(z.imag)]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _load_config(path: str) -> dict:
    """key=value lines; '#' starts a comment; keys use flag spelling."""
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = val
    return out


def _thread_count(args) -> int:
    if getattr(args, "threads", None):
        return max(1, int(args.threads))
    env = os.environ.get(ENV_THREADS)
    return max(1, int(env)) if env else 1


def _map_fn(args):
    k = _thread_count(args)
    if k == 1:
        return map
    pool = ThreadPoolExecutor(max_workers=k)
    return pool.map  # ordered; assembly stays deterministic


class UsageError(Exception):
    pass


# --- analyze -------------------------------------------------------------------

def _build_system(args) -> EssentialSystem:
    case = args.case
    if case not in ("nonconvex", "convex", "lagrange", "custom"):
        raise UsageError("analyze needs --case {nonconvex|convex|lagrange|custom}")
    if args.ecc is None:
        raise UsageError("analyze needs --ecc")
    try:
        if case == "custom":
            if args.lambda3 is None or args.lambda4 is None:
                raise UsageError("custom case needs --lambda3 and --lambda4")
            return EssentialSystem.custom(args.lambda3, args.lambda4, args.ecc)
        if case == "nonconvex" and args.beta_tilde is not None:
            return EssentialSystem.nonconvex_tilde(args.beta_tilde, args.ecc)
        if args.beta is None:
            raise UsageError(f"case {case} needs --beta")
        return getattr(EssentialSystem, case)(args.beta, args.ecc)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_analyze(args) -> int:
    sys_ = _build_system(args)
    gamma = integrate_monodromy(sys_, tol=args.tol)
    spec = gamma.multipliers()
    tag = classify_normal_form(gamma.gamma2pi.m)
    verdict = stability_verdict(tag)

    stabilized = True
    report = {
        "schema": "analysis/1",
        "case": sys_.case_tag,
        "param": None if sys_.param is None else _sig15(sys_.param),
        "lambda3": _sig15(sys_.lambda3),
        "lambda4": _sig15(sys_.lambda4),
        "ecc": _sig15(sys_.e),
        "multipliers": [_json_complex(z) for z in spec.eigenvalues],
        "max_modulus": _sig15(spec.max_modulus()),
        "verdict": verdict,
        "normal_form": {"tag": tag.tag, "blocks": list(tag.blocks),
                        "angles": [_sig15(a) for a in tag.angles]},
        "symplectic_defect": _sig15(gamma.defect),
    }
    for name, w in (("1", 1.0), ("minus_1", -1.0)):
        oi = omega_index(sys_, w, N=args.hill_n)
        stabilized = stabilized and oi.stabilized
        report[f"i_{name}"] = oi.i_omega
        report[f"nu_{name}"] = oi.nu_omega
    if args.omega is not None:
        w = complex(np.exp(2j * np.pi * args.omega))
        oi = omega_index(sys_, w, N=args.hill_n)
        stabilized = stabilized and oi.stabilized
        report["omega"] = _json_complex(w)
        report["i_omega"] = oi.i_omega
        report["nu_omega"] = oi.nu_omega
    report["stabilized"] = stabilized

    text = _dump(report)
    _write_out(args.out, text)
    return 0 if stabilized else 1


# --- figure --------------------------------------------------------------------

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd",
            "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"]


def write_svg(path: str, polylines: list, xlim, ylim,
              xlabel: str, ylabel: str) -> None:
    """Minimal polyline plot: one path per (label, xs, ys) triple."""
    width, height, margin = 640.0, 480.0, 50.0

    def px(x):
        return margin + (x - xlim[0]) / (xlim[1] - xlim[0]) * (width - 2 * margin)

    def py(y):
        return height - margin - (y - ylim[0]) / (ylim[1] - ylim[0]) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        f'<rect x="{margin}" y="{margin}" width="{width - 2 * margin}" '
        f'height="{height - 2 * margin}" fill="none" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle" '
        f'font-size="14">{xlabel}</text>',
        f'<text x="15" y="{height / 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 15 {height / 2})">{ylabel}</text>',
        f'<text x="{margin}" y="{height - margin + 20}" text-anchor="middle" '
        f'font-size="12">{xlim[0]:g}</text>',
        f'<text x="{width - margin}" y="{height - margin + 20}" text-anchor="middle" '
        f'font-size="12">{xlim[1]:g}</text>',
        f'<text x="{margin - 8}" y="{height - margin}" text-anchor="end" '
        f'font-size="12">{ylim[0]:g}</text>',
        f'<text x="{margin - 8}" y="{margin + 4}" text-anchor="end" '
        f'font-size="12">{ylim[1]:g}</text>',
    ]
    for i, (label, xs, ys) in enumerate(polylines):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                     f'points="{pts}"/>')
        if len(xs):
            parts.append(f'<text x="{px(xs[-1]) + 4:.2f}" y="{py(ys[-1]):.2f}" '
                         f'font-size="11" fill="{color}">{label}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


def cmd_figure(args) -> int:
    if not args.out:
        raise UsageError("figure needs --out PATH")
    if not 0.0 < args.e_max <= 0.99 or not 0.0 < args.step <= args.e_max:
        raise UsageError("need 0 < step <= e-max <= 0.99")
    e_grid = np.round(np.arange(0.0, args.e_max + 1e-12, args.step), 10)
    stabilized = True
    if args.which == "1":
        fam = trace_family("nonconvex", e_grid=e_grid, map_fn=_map_fn(args))
        stabilized = all(c.truncated_reason is None or
                         c.truncated_reason.startswith("bracket lost")
                         for c in fam.values())
        csv_text = curves_to_csv(fam)
        polylines = [(lbl, fam[lbl].params(), fam[lbl].e_values())
                     for lbl in sorted(fam)]
        xlim, xlabel = (-1.0, 3.0), "beta_tilde"
    else:
        bnd = convex_boundaries(e_grid=e_grid, map_fn=_map_fn(args),
                                paranoid=args.paranoid)
        csv_text = boundaries_to_csv(bnd)
        polylines = [("Gamma_l", bnd.beta_l, bnd.e),
                     ("Gamma_m", bnd.beta_m, bnd.e),
                     ("Gamma_r", bnd.beta_r, bnd.e)]
        xlim, xlabel = (0.0, BETA_MAX), "beta"

    _write_out(args.out, csv_text)
    if args.svg:
        write_svg(args.svg, polylines, xlim, (0.0, 1.0), xlabel, "e")
    return 0 if stabilized else 1


# --- cc-limit ------------------------------------------------------------------

def cmd_cc_limit(args) -> int:
    if args.m is None or args.tau is None:
        raise UsageError("cc-limit needs --m and --tau")
    if args.branch not in ("nonconvex", "convex"):
        raise UsageError("cc-limit needs --branch {nonconvex|convex}")
    ladder = [float(s) for s in args.eps_ladder.split(",") if s.strip()]
    if not ladder:
        raise UsageError("empty --eps-ladder")
    rows = []
    for eps in sorted(ladder, reverse=True):
        fam = SmallMassFamily(m=args.m, tau=args.tau, eps=eps, branch=args.branch)
        lim = limit_parameters(fam)
        try:
            body = solve_cc_newton(fam)
        except RuntimeError as exc:
            print(_dump({"schema": "error/1", "error": str(exc),
                         "eps": _sig15(eps)}), file=sys.stderr)
            return 1
        params = essential_parameters(build_ccdata(body))
        rows.append({
            "eps": _sig15(eps),
            "beta2": _sig15(params.beta2),
            "beta12": _json_complex(params.beta12),
            "beta22": _json_complex(params.beta22),
            "beta2_err": _sig15(abs(params.beta2 - lim.beta2_0)),
            "beta12_abs": _sig15(abs(params.beta12)),
            "beta22_err": _sig15(abs(params.beta22 - lim.beta22_0)),
        })
    fam0 = SmallMassFamily(m=args.m, tau=args.tau, eps=min(ladder), branch=args.branch)
    lim = limit_parameters(fam0)
    report = {
        "schema": "cc-limit/1",
        "m": _sig15(args.m), "tau": _sig15(args.tau), "branch": args.branch,
        "limit": {
            "beta": _sig15(lim.beta),
            "beta2_0": _sig15(lim.beta2_0),
            "beta22_0": _json_complex(lim.beta22_0),
            "theta34": _sig15(lim.theta34),
            "hessian_eigenvalues": [_sig15(v) for v in lim.hessian_eigs],
        },
        "ladder": rows,
    }
    _write_out(args.out, _dump(report))
    return 0


# --- plumbing ------------------------------------------------------------------

def _write_out(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ere-stability",
        description="Linear stability of elliptic relative equilibria "
                    "of the planar four-body problem with two small masses.")
    parser.add_argument("--config", help="key=value file pre-setting any flag")
    parser.add_argument("--threads", type=int,
                        help=f"worker pool size (or ${ENV_THREADS})")
    sub = parser.add_subparsers(dest="command", required=True)

    # required-ness is validated in the handlers so that a config file can
    # supply any flag
    def add_config(sp):
        # accept --config after the subcommand too; the pre-parser in main()
        # reads its value, so SUPPRESS keeps it from clobbering the top level
        sp.add_argument("--config", default=argparse.SUPPRESS,
                        help=argparse.SUPPRESS)

    pa = sub.add_parser("analyze", help="point analysis (JSON report)")
    add_config(pa)
    pa.add_argument("--case", choices=["nonconvex", "convex", "lagrange", "custom"])
    pa.add_argument("--beta", type=float)
    pa.add_argument("--beta-tilde", type=float, dest="beta_tilde",
                    help="non-convex parameter in the extended range")
    pa.add_argument("--lambda3", type=float)
    pa.add_argument("--lambda4", type=float)
    pa.add_argument("--ecc", type=float)
    pa.add_argument("--omega", type=float,
                    help="extra twist as a fraction of the circle (0, 1)")
    pa.add_argument("--tol", type=float, default=1e-12)
    pa.add_argument("--hill-n", type=int, default=64, dest="hill_n")
    pa.add_argument("--out")
    pa.set_defaults(fn=cmd_analyze)

    pf = sub.add_parser("figure", help="trace a parameter-plane figure")
    add_config(pf)
    pf.add_argument("which", choices=["1", "2"],
                    help="1: non-convex curves, 2: convex boundaries")
    pf.add_argument("--out", help="CSV output path")
    pf.add_argument("--svg", help="optional SVG overlay path")
    pf.add_argument("--e-max", type=float, default=0.95, dest="e_max")
    pf.add_argument("--step", type=float, default=0.05)
    pf.add_argument("--paranoid", action="store_true",
                    help="re-scan for a non-connected hyperbolic region")
    pf.set_defaults(fn=cmd_figure)

    pc = sub.add_parser("cc-limit", help="finite-mass CCs vs small-mass limit")
    add_config(pc)
    pc.add_argument("--m", type=float)
    pc.add_argument("--tau", type=float)
    pc.add_argument("--branch", choices=["nonconvex", "convex"])
    pc.add_argument("--eps-ladder", default="1e-3,3e-4,1e-4,3e-5,1e-5",
                    dest="eps_ladder")
    pc.add_argument("--out")
    pc.set_defaults(fn=cmd_cc_limit)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()

    # apply config-file defaults first so explicit flags win
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        try:
            cfg = _load_config(known.config)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        for sp in parser._subparsers._group_actions[0].choices.values():  # noqa: SLF001
            sp.set_defaults(**{k: v for k, v in cfg.items()})
        parser.set_defaults(**{k: v for k, v in cfg.items()
                               if k in ("threads",)})

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    # config values arrive as strings; coerce numerics the actions expect
    for action in ("beta", "beta_tilde", "lambda3", "lambda4", "ecc", "omega",
                   "tol", "m", "tau", "e_max", "step", "threads"):
        if hasattr(args, action) and isinstance(getattr(args, action), str):
            try:
                setattr(args, action, float(getattr(args, action)))
            except ValueError:
                print(f"error: flag {action} expects a number", file=sys.stderr)
                return 2
    if hasattr(args, "hill_n") and isinstance(args.hill_n, str):
        args.hill_n = int(float(args.hill_n))

    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
