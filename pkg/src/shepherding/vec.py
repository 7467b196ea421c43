"""Small 2-D vector helpers on float64 numpy arrays of shape (2,)."""

from __future__ import annotations

import numpy as np

# Below this norm a vector is treated as zero (no preferred direction).
EPS = 1e-12


def vec2(x: float, y: float) -> np.ndarray:
    return np.array([x, y], dtype=np.float64)


def as_vec2(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.float64).reshape(2)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"non-finite vector components: {a}")
    return a


def norm(v) -> float:
    a = np.asarray(v, dtype=np.float64)
    return float(np.sqrt(a[0] * a[0] + a[1] * a[1]))


def unit(v) -> np.ndarray:
    """v / |v|, or the zero vector when |v| <= EPS."""
    a = as_vec2(v)
    n = norm(a)
    if n <= EPS:
        return np.zeros(2)
    return a / n


def dist(a, b) -> float:
    return norm(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64))


def clamp_to_box(v, size: float) -> np.ndarray:
    """Clamp each coordinate independently into [0, size]."""
    return np.clip(as_vec2(v), 0.0, size)
