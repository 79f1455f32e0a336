#!/usr/bin/env python3
"""Regenerate both parameter-plane figures (CSV + SVG) into an output
directory.  Thin wrapper over the `ere-stability figure` subcommand."""

import argparse
import pathlib
import sys

from ere_stability.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figures",
                        help="output directory (default: figures/)")
    parser.add_argument("--e-max", type=float, default=0.95)
    parser.add_argument("--step", type=float, default=0.05)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for which in ("1", "2"):
        code = cli_main([
            "--threads", str(args.threads),
            "figure", which,
            "--out", str(outdir / f"figure{which}.csv"),
            "--svg", str(outdir / f"figure{which}.svg"),
            "--e-max", str(args.e_max), "--step", str(args.step),
        ])
        if code != 0:
            print(f"figure {which} did not stabilize (exit {code})",
                  file=sys.stderr)
            return code
        print(f"wrote {outdir / f'figure{which}.csv'} and .svg")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
