#!/usr/bin/env python3
"""Print the e = 0 omega-index tables of both families next to the
closed-form values, as a quick sanity report of the Hill discretization."""

import argparse

import numpy as np

from ere_stability import analytic
from ere_stability.index import omega_index
from ere_stability.systems import EssentialSystem


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-points", type=int, default=20)
    parser.add_argument("--hill-n", type=int, default=64)
    args = parser.parse_args()

    print(f"{'case':10s} {'param':>10s} {'i_1':>4s} {'i_1*':>4s} "
          f"{'i_-1':>5s} {'i_-1*':>5s}  (* = exact)")
    mismatches = 0
    for bt in np.linspace(-0.95, 2.95, args.n_points):
        sys = EssentialSystem.nonconvex_tilde(bt, 0.0)
        i1 = omega_index(sys, 1.0, N=args.hill_n).i_omega
        im1 = omega_index(sys, -1.0, N=args.hill_n).i_omega
        e1, em1 = analytic.i1_nonconvex_e0(bt), analytic.im1_nonconvex_e0(bt)
        mismatches += (i1 != e1) + (im1 != em1)
        print(f"{'nonconvex':10s} {bt:10.4f} {i1:4d} {e1:4d} {im1:5d} {em1:5d}")
    for beta in np.linspace(0.05, 4.95, args.n_points):
        sys = EssentialSystem.convex(beta, 0.0)
        i1 = omega_index(sys, 1.0, N=args.hill_n).i_omega
        im1 = omega_index(sys, -1.0, N=args.hill_n).i_omega
        e1, em1 = analytic.i1_convex_e0(beta), analytic.im1_convex_e0(beta)
        mismatches += (i1 != e1) + (im1 != em1)
        print(f"{'convex':10s} {beta:10.4f} {i1:4d} {e1:4d} {im1:5d} {em1:5d}")
    print(f"\n{mismatches} mismatches")
    return 0 if mismatches == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
