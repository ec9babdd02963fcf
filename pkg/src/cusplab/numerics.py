"""Shared numerical helpers: bracketed root finding and power iteration."""

from __future__ import annotations

import math

import numpy as np


class NumericError(RuntimeError):
    """A numerical routine failed to converge; the message carries diagnostics."""


class InsufficientDigitsError(ValueError):
    """An operation needed more (reliable) continued-fraction digits than available."""


def bracketed_root(f, lo, hi, xtol=1e-10, max_iter=300, flo=None, fhi=None):
    """Root of f in [lo, hi] via the Illinois variant of false position.

    The bracket must be sign-changing.  Every fifth step is forced to plain
    bisection so the bracket width shrinks geometrically no matter how the
    secant steps behave.  Pass flo/fhi to reuse endpoint evaluations.
    """
    fa = f(lo) if flo is None else flo
    fb = f(hi) if fhi is None else fhi
    if fa == 0.0:
        return lo
    if fb == 0.0:
        return hi
    if fa * fb > 0:
        raise ValueError(f"root not bracketed: f({lo})={fa}, f({hi})={fb}")
    a, b = lo, hi
    for it in range(max_iter):
        if abs(b - a) <= xtol:
            break
        if it % 5 == 4:
            c = 0.5 * (a + b)
        else:
            c = (a * fb - b * fa) / (fb - fa)
            width = abs(b - a)
            if not (min(a, b) + 1e-3 * width < c < max(a, b) - 1e-3 * width):
                c = 0.5 * (a + b)
        fc = f(c)
        if fc == 0.0:
            return c
        if fa * fc < 0:
            b, fb = c, fc
        else:
            a, fa = c, fc
            fb *= 0.5  # Illinois trick: keeps the stale endpoint from pinning
    return 0.5 * (a + b)


def power_iteration(mat, tol=1e-12, max_iter=200_000, v0=None):
    """Dominant eigenvalue of a square matrix by plain power iteration.

    Returns (eigenvalue, eigenvector, iterations).  Convergence is declared
    when the Rayleigh quotient moves by less than ``tol * max(1, |lam|)``.
    Raises NumericError with diagnostics if the iteration does not settle.
    """
    n = mat.shape[0]
    v = np.full(n, 1.0 / math.sqrt(n)) if v0 is None else v0 / np.linalg.norm(v0)
    lam_prev = None
    for it in range(1, max_iter + 1):
        w = mat @ v
        nrm = np.linalg.norm(w)
        if nrm == 0.0 or not np.isfinite(nrm):
            raise NumericError(f"power iteration degenerated at step {it} (norm={nrm})")
        lam = float(v @ w)
        v = w / nrm
        if lam_prev is not None and abs(lam - lam_prev) <= tol * max(1.0, abs(lam)):
            return lam, v, it
        lam_prev = lam
    raise NumericError(
        f"power iteration did not converge in {max_iter} steps "
        f"(last eigenvalue estimate {lam_prev!r}, matrix size {n})"
    )
