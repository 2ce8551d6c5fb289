"""Scalar entropy functions shared by every capacity formula.

All logarithms are base 2.  Functions accept Python floats or numpy arrays;
a float in gives a float out.
"""
from __future__ import annotations

import math

import numpy as np

#: Probabilities this close outside [0, 1] are clamped instead of rejected.
CLAMP_TOL = 1e-12


def clamp_probability(x):
    """Clamp ``x`` into [0, 1], raising ``ValueError`` if it is further than
    ``CLAMP_TOL`` outside."""
    if np.ndim(x) == 0:
        x = float(x)
        if not (-CLAMP_TOL <= x <= 1.0 + CLAMP_TOL):
            raise ValueError(f"probability {x!r} outside [0, 1]")
        return min(max(x, 0.0), 1.0)
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -CLAMP_TOL) or np.any(arr > 1.0 + CLAMP_TOL) or np.any(np.isnan(arr)):
        raise ValueError("probability array has entries outside [0, 1]")
    return np.clip(arr, 0.0, 1.0)


def _xlog2x(x):
    # 0 log 0 = 0
    if np.ndim(x) == 0:
        return x * math.log2(x) if x > 0.0 else 0.0
    out = np.zeros_like(x)
    pos = x > 0.0
    out[pos] = x[pos] * np.log2(x[pos])
    return out


def binary_entropy(x):
    """H2(x) = -x log2 x - (1-x) log2(1-x) with 0 log 0 = 0."""
    x = clamp_probability(x)
    return -_xlog2x(x) - _xlog2x(1.0 - x)


def bosonic_g(x):
    """Entropy of a thermal bosonic mode with mean occupation ``x``:
    (x+1) log2(x+1) - x log2 x."""
    if np.ndim(x) == 0:
        x = float(x)
        if x < 0.0:
            raise ValueError(f"bosonic_g needs x >= 0, got {x!r}")
        return _xlog2x(x + 1.0) - _xlog2x(x)
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("bosonic_g needs x >= 0")
    return _xlog2x(arr + 1.0) - _xlog2x(arr)


#: Offset used to approach the removable singularity of ``monotone_f``.
SINGULAR_OFFSET = 1e-9


def monotone_f(y: float, x: float) -> float:
    """The function ((1 - s)/(1 + s)) ** (x/s), s = sqrt((1-2x)^2 + 4xy).

    Its monotone decrease in ``x`` on [0, 1-y] controls how the coherent
    information of the amplitude damping channel depends on the input
    coherence.  At ``x = 0`` the x -> 0 limit (1) is returned; the point
    ``y = 0, x = 1/2`` where ``s`` vanishes is evaluated at
    ``x = 1/2 - SINGULAR_OFFSET``.
    """
    y = float(y)
    x = float(x)
    if not (0.0 <= y <= 1.0):
        raise ValueError(f"y={y!r} outside [0, 1]")
    if not (-CLAMP_TOL <= x <= 1.0 - y + CLAMP_TOL):
        raise ValueError(f"x={x!r} outside [0, 1 - y]")
    x = min(max(x, 0.0), 1.0 - y)
    if x == 0.0:
        return 1.0
    s = math.sqrt((1.0 - 2.0 * x) ** 2 + 4.0 * x * y)
    if s == 0.0:
        x = 0.5 - SINGULAR_OFFSET
        s = math.sqrt((1.0 - 2.0 * x) ** 2 + 4.0 * x * y)
    # (1-s)/(1+s) = 4x(1-x-y)/(1+s)^2, free of cancellation when s is near 1
    gap = 1.0 - x - y
    if gap <= 0.0:
        return 0.0
    log_base = math.log(4.0 * x * gap) - 2.0 * math.log1p(s)
    return math.exp(x / s * log_base)
