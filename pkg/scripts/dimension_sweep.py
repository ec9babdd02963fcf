#!/usr/bin/env python3
"""Sweep the dimension of the restricted-digit sets {all a_n >= N} and plot
the slow approach to 1/2.

Writes dim_fn.csv / dim_fn.svg under --out and prints the table."""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cusplab.cli import main as cusplab_main


def run(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", default="2,3,5,10,20,50,100,300,1000")
    ap.add_argument("--out", default="out/dim-sweep")
    ap.add_argument("--ulam", action="store_true", help="add the slower cross-check column")
    args = ap.parse_args(argv)

    cli = ["dim-fn", args.N, "--svg", "--out", args.out, "--nodes", "20", "--tol", "1e-9"]
    if args.ulam:
        cli.append("--ulam")
    t0 = time.time()
    rc = cusplab_main(cli)
    if rc != 0:
        return rc
    csv_path = Path(args.out) / "dim_fn.csv"
    print(csv_path.read_text())
    print(f"wrote {csv_path} and companion SVG in {time.time() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
