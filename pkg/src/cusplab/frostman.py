"""Mass-distribution certificates for digit-restricted sets.

A ``CylinderMeasure`` is a level-wise product measure on continued-fraction
cylinders: at every level an independent digit is drawn from a fixed range
with fixed weights.  The deep-excursion measure uses weights proportional to
1/(a+1) over digits [tau, tau'], where tau' is the smallest upper end making
the normalizing sum exceed e^{kappa/2}; the per-cylinder mass is then the
normalized product of the digit weights.

Ball masses nu(B(xi, r)) are evaluated exactly (up to a documented atom-size
cutoff) as CDF differences; the CDF descends the cylinder tree with exact
rational arithmetic, flipping orientation at every level because the map
digit -> cylinder position alternates direction.

The fitted exponent inf log nu(B) / log r over sampled centers and radii is a
finite-scale Frostman certificate: a measure with nu(B(xi, r)) <= c r^s on
its support witnesses dimension >= s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class CylinderMeasure:
    """Product measure over digit cylinders with digits in [lo, hi]."""

    lo: int
    hi: int
    weights: tuple

    def __post_init__(self):
        if self.lo < 1 or self.hi < self.lo:
            raise ValueError("need 1 <= lo <= hi")
        if len(self.weights) != self.hi - self.lo + 1:
            raise ValueError("one weight per digit required")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        total = math.fsum(self.weights)
        if not math.isfinite(total) or abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1 (within 1e-12), got {total}")

    @classmethod
    def from_rule(cls, lo, hi, rule="inverse_successor"):
        lo, hi = int(lo), int(hi)
        a = np.arange(lo, hi + 1, dtype=float)
        if rule == "inverse_successor":
            raw = 1.0 / (a + 1.0)
        elif rule == "uniform":
            raw = np.ones_like(a)
        else:
            raise ValueError(f"unknown weight rule {rule!r}")
        w = raw / raw.sum()
        return cls(lo, hi, tuple(w))

    def weight(self, digit: int) -> float:
        if self.lo <= digit <= self.hi:
            return self.weights[digit - self.lo]
        return 0.0

    def _suffix(self):
        # mass of digits strictly greater than a given digit, cached lazily
        if not hasattr(self, "_suffix_arr"):
            arr = np.concatenate([np.cumsum(self.weights[::-1])[::-1][1:], [0.0]])
            object.__setattr__(self, "_suffix_arr", arr)
        return self._suffix_arr

    def mass_above(self, digit: int) -> float:
        """Total weight of digits strictly greater than ``digit``."""
        if digit < self.lo:
            return 1.0
        if digit >= self.hi:
            return 0.0
        return float(self._suffix()[digit - self.lo])


def good_weight_range(tau, kappa):
    """Digit range [tau, tau'] and normalizer for the deep-excursion measure:
    tau' is minimal with sum_{a=tau}^{tau'} 1/(a+1) > e^{kappa/2}."""
    tau = int(tau)
    if tau < 1:
        raise ValueError("tau must be >= 1")
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    target = math.exp(0.5 * kappa)
    total, hi = 0.0, tau - 1
    while total <= target:
        hi += 1
        total += 1.0 / (hi + 1.0)
        if hi > 10**9:
            raise ValueError("kappa too large to normalize")
    return tau, hi, total


def good_measure(tau, kappa) -> CylinderMeasure:
    lo, hi, _ = good_weight_range(tau, kappa)
    return CylinderMeasure.from_rule(lo, hi, "inverse_successor")


_ATOM_TOL = 1e-18


def cdf(measure: CylinderMeasure, x, max_depth=64) -> float:
    """Mass of {xi <= x}.  Exact rational descent; the recursion stops once
    the remaining cylinder mass drops below 1e-18 (documented atom cutoff)."""
    x = Fraction(x)
    if x <= 0:
        return 0.0
    if x >= 1:
        return 1.0
    total, scale, flipped = 0.0, 1.0, False
    y = x
    for _ in range(max_depth):
        d = math.floor(1 / y)
        below = measure.mass_above(d)       # digits left of y in local coords
        inside = measure.weight(d)
        if not flipped:
            total += scale * below
        else:
            total += scale * (1.0 - below - inside)
        if inside == 0.0:
            return total
        scale *= inside
        y = 1 / y - d
        if y == 0:
            # x sits exactly on a cylinder endpoint; the child cylinder lies
            # entirely below x iff the child orientation is reversed.
            if not flipped:
                total += scale
            return total
        flipped = not flipped
        if scale < _ATOM_TOL:
            return total + 0.5 * scale
    return total + 0.5 * scale


def ball_mass(measure: CylinderMeasure, center, radius) -> float:
    """nu(B(center, radius)) as an exact CDF difference."""
    c, r = Fraction(center), Fraction(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    return max(cdf(measure, c + r) - cdf(measure, c - r), 0.0)


def sample_point(measure: CylinderMeasure, rng, depth) -> Fraction:
    """Draw digits i.i.d. from the measure and return the depth-th convergent
    of the sampled digit string (a representative of the sampled cylinder)."""
    probs = np.asarray(measure.weights)
    cum = np.cumsum(probs)
    u = rng.random(depth)
    digits = measure.lo + np.searchsorted(cum, u * cum[-1])
    p_prev, q_prev, p_cur, q_cur = 1, 0, 0, 1
    for a in digits:
        p_prev, p_cur = p_cur, int(a) * p_cur + p_prev
        q_prev, q_cur = q_cur, int(a) * q_cur + q_prev
    return Fraction(p_cur, q_cur)


@dataclass(frozen=True)
class FrostmanReport:
    rows: list                 # (sample_id, r, mass, log mass / log r)
    fitted_exponent: float     # inf of the ratio column
    samples: int
    r_grid: tuple
    seed: int


def _resolve_grid(measure, r_grid, depth):
    if r_grid is None:
        # Radii must sit below the finest first-level cylinder of the
        # measure, otherwise coarse balls near the cusp see the heavy digit
        # tail and the inf-ratio certificate degrades.
        r_grid = tuple(10.0 ** (-k) for k in range(8, 13))
    r_grid = tuple(float(r) for r in r_grid)
    if any(not 0 < r < 1 for r in r_grid):
        raise ValueError("radii must lie in (0, 1)")
    if depth is None:
        r_min = min(r_grid)
        depth = int((math.log(1.0 / r_min) + 10.0) / (2.0 * math.log(measure.lo + 1))) + 4
    return r_grid, depth


def sample_rows(measure: CylinderMeasure, seed, idx, r_grid=None, depth=None):
    """Rows (idx, r, mass, log-ratio) for one sampled center.

    The center uses the counter-based stream keyed by (seed, idx), so any
    partition of the index range over threads reproduces the serial result.
    """
    r_grid, depth = _resolve_grid(measure, r_grid, depth)
    rng = np.random.Generator(np.random.Philox(key=[seed, idx]))
    xi = sample_point(measure, rng, depth)
    rows = []
    for r in r_grid:
        mass = ball_mass(measure, xi, Fraction(r))
        if mass <= 0.0:
            mass = _ATOM_TOL
        rows.append((idx, r, mass, math.log(mass) / math.log(r)))
    return rows


def frostman_sampler(measure: CylinderMeasure, samples, r_grid=None, seed=0,
                     depth=None) -> FrostmanReport:
    """Empirical Frostman exponent report for a cylinder measure.

    The fitted exponent is inf over all (sample, r) of log nu(B)/log r, a
    lower-bound certificate for the dimension of the support when the measure
    obeys a power law at these scales.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    r_grid, depth = _resolve_grid(measure, r_grid, depth)
    rows = []
    for idx in range(samples):
        rows.extend(sample_rows(measure, seed, idx, r_grid, depth))
    fitted = min(row[3] for row in rows)
    return FrostmanReport(rows, fitted, samples, r_grid, seed)
