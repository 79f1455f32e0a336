#!/usr/bin/env python3
"""Convergence report of finite-mass central configurations against their
small-mass limits: one eps-ladder per (m, tau, branch) combination."""

import argparse

from ere_stability.reduction import build_ccdata, essential_parameters
from ere_stability.smallmass import (SmallMassFamily, limit_parameters,
                                     solve_cc_newton)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=float, nargs="+", default=[0.3, 0.5])
    parser.add_argument("--tau", type=float, nargs="+", default=[0.5, 1.0])
    parser.add_argument("--eps-ladder", default="1e-3,3e-4,1e-4,3e-5,1e-5")
    args = parser.parse_args()
    ladder = sorted((float(s) for s in args.eps_ladder.split(",")), reverse=True)

    for m in args.m:
        for tau in args.tau:
            for branch in ("nonconvex", "convex"):
                lim = limit_parameters(SmallMassFamily(
                    m=m, tau=tau, eps=ladder[0], branch=branch))
                print(f"\nm = {m}, tau = {tau}, {branch}: "
                      f"beta2_0 = {lim.beta2_0:.6f}, "
                      f"beta22_0 = {lim.beta22_0:.6f}")
                print(f"{'eps':>10s} {'|beta2 err|':>12s} "
                      f"{'|beta12|':>12s} {'|beta22 err|':>12s}")
                for eps in ladder:
                    fam = SmallMassFamily(m=m, tau=tau, eps=eps, branch=branch)
                    params = essential_parameters(
                        build_ccdata(solve_cc_newton(fam)))
                    print(f"{eps:10.1e} "
                          f"{abs(params.beta2 - lim.beta2_0):12.3e} "
                          f"{abs(params.beta12):12.3e} "
                          f"{abs(params.beta22 - lim.beta22_0):12.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
