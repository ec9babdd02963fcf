#!/usr/bin/env python3
"""Emit the two-curve weak multifractal spectrum figure (dashed lower-limit
curve above the solid strict curve) for a chosen exponent delta."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cusplab.cli import main as cusplab_main


def run(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--delta", type=float, default=0.75)
    ap.add_argument("--grid", type=int, default=201)
    ap.add_argument("--out", default="out/spectrum")
    args = ap.parse_args(argv)
    rc = cusplab_main(["spectrum", str(args.delta), "--grid", str(args.grid),
                       "--svg", "--out", args.out])
    if rc == 0:
        print(f"wrote {Path(args.out) / 'spectrum.csv'} and the SVG figure")
    return rc


if __name__ == "__main__":
    raise SystemExit(run())
