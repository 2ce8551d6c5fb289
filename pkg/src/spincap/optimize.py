"""Scalar maximization on an interval: dense grid, then golden-section polish."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
GRID_POINTS = 2001


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10):
    """Golden-section search for the maximum of ``f`` on [a, b].

    Returns ``(x, fx, evaluations)`` for the best point evaluated.
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    best = max((fc, c), (fd, d))
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
            best = max(best, (fc, c))
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
            best = max(best, (fd, d))
        evals += 1
    return best[1], best[0], evals


def maximize_interval(f, lo: float, hi: float, tol: float = 1e-10,
                      grid_points: int = GRID_POINTS, vectorized: bool = False):
    """Maximize ``f`` on [lo, hi].

    ``f`` is sampled on ``grid_points`` evenly spaced points; the bracket
    around the best sample is then refined by golden-section search until it
    is narrower than ``tol``.  With ``vectorized=True`` the grid is evaluated
    in one call on a numpy array.
    """
    grid = np.linspace(lo, hi, grid_points)
    if vectorized:
        values = np.asarray(f(grid), dtype=float)
    else:
        values = np.array([f(float(x)) for x in grid])
    i = int(np.argmax(values))
    best_x, best_f = float(grid[i]), float(values[i])
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, grid_points - 1)])
    x, fx, evals = golden_section_max(lambda t: float(f(t)), a, b, tol)
    if fx > best_f:
        best_x, best_f = x, fx
    return best_x, best_f, grid_points + evals


def maximize_unit_interval(f, tol: float = 1e-10, vectorized: bool = False):
    """``maximize_interval`` on [0, 1]; returns ``(argmax, max, evaluations)``."""
    return maximize_interval(f, 0.0, 1.0, tol=tol, vectorized=vectorized)
