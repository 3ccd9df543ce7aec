#!/usr/bin/env python3
"""Regenerate every preset study (CSV + SVG) into an output directory.

Equivalent to running the fig3..fig6 subcommands in sequence; handy as a
single entry point when iterating on the bundled profile.
"""

import argparse
from pathlib import Path

from crossbar_margin.figures import FIGURE_WRITERS
from crossbar_margin.profile_io import load_bundled_profile, load_profile


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--profile", default=None, help="profile JSON (default: bundled 22nm)")
    parser.add_argument("--outdir", default="figures", help="output directory")
    args = parser.parse_args()

    profile = load_bundled_profile() if args.profile is None else load_profile(args.profile)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in sorted(FIGURE_WRITERS):
        for path in FIGURE_WRITERS[name](profile, outdir):
            print(f"wrote {path}")


if __name__ == "__main__":
    main()
