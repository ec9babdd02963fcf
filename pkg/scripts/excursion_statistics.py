#!/usr/bin/env python3
"""Excursion statistics over random digit samples: the measured digit/depth
constant, the empirical gap bound, and the limsup-ratio landings for a few
synthesized growth patterns."""

import argparse
import math
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cusplab.contfrac import ContinuedFraction
from cusplab.excursions import (
    excursion_trace,
    gap_bound_estimate,
    jarnik_ratios,
    synthesize_trace,
)


def run(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--traces", type=int, default=200)
    ap.add_argument("--horizon", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    traces, worst = [], 0.0
    for _ in range(args.traces):
        digits = rng.integers(1, 60, size=args.horizon + 8).tolist()
        tr = excursion_trace(ContinuedFraction(digits), args.horizon)
        traces.append(tr)
        for rec in tr.records:
            worst = max(worst, abs(rec.depth - math.log(rec.digit)))
    print(f"digit/depth constant over {args.traces} traces: {worst:.4f}")
    print(f"empirical gap bound kappa*: {gap_bound_estimate(traces):.4f}")

    horizon = 800
    patterns = {
        "slow (theta=0)": [math.log(n + 2) for n in range(horizon)],
        "alpha=5/3 (theta=1/4)": [(5 / 3) ** n * math.log(2) for n in range(1, horizon)],
        "alpha=2 (theta=1/3)": [2.0 ** n * math.log(2) for n in range(1, horizon)],
    }
    for name, depths in patterns.items():
        jr = jarnik_ratios(synthesize_trace(depths, gap=0.3))
        print(f"{name:24s} d/t -> {jr.theta_hat:.4f}   d/(2 sum d) -> {jr.ratio_hat:.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
