"""Per-sheep force terms and position updates.

Every force is built from normalized direction vectors; the total force of
an agent is renormalized so the position update moves exactly one speed-step
per tick. All functions are pure given their inputs (the repulsion term
takes an explicit RNG handle for the coincident-sheep case).
"""

from __future__ import annotations

import numpy as np

from .params import ModelParams
from .vec import EPS, as_vec2, unit


def nearest_neighbors(i: int, positions, k: int) -> np.ndarray:
    """Indices of the min(k, N-1) sheep nearest to sheep ``i``.

    Distance ties break toward the lower index.
    """
    pos = np.asarray(positions, dtype=np.float64)
    n = pos.shape[0]
    if k < 1 or n < 2:
        return np.empty(0, dtype=np.int64)
    delta = pos - pos[i]
    d2 = delta[:, 0] ** 2 + delta[:, 1] ** 2
    d2[i] = np.inf
    order = np.lexsort((np.arange(n), d2))
    return order[: min(k, n - 1)].astype(np.int64)


def sheep_escape_force(sheep_pos, shepherd_positions, sense_range: float) -> np.ndarray:
    """Normalized sum of away-from-shepherd directions within sense_range."""
    p = as_vec2(sheep_pos)
    total = np.zeros(2)
    for shep in np.asarray(shepherd_positions, dtype=np.float64).reshape(-1, 2):
        away = p - shep
        d = np.sqrt(away[0] ** 2 + away[1] ** 2)
        if d <= sense_range:
            total += unit(away)
    return unit(total)


def sheep_repulsion_force(i: int, positions, sense_range: float, rng=None) -> np.ndarray:
    """Normalized sum of away-from-neighbor directions within sense_range.

    A coincident pair (distance <= EPS) has no defined direction; it
    contributes a random unit vector from ``rng`` (an object exposing
    uniform_unit_vector), or nothing when no RNG is supplied.
    """
    pos = np.asarray(positions, dtype=np.float64)
    p = pos[i]
    total = np.zeros(2)
    for k in range(pos.shape[0]):
        if k == i:
            continue
        away = p - pos[k]
        d = np.sqrt(away[0] ** 2 + away[1] ** 2)
        if d > sense_range:
            continue
        if d <= EPS:
            if rng is not None:
                total += rng.uniform_unit_vector()
        else:
            total += away / d
    return unit(total)


def sheep_grouping_force(sheep_pos, neighbor_positions) -> np.ndarray:
    """Unit vector toward the centroid of the given neighbours (zero if none)."""
    neighbors = np.asarray(neighbor_positions, dtype=np.float64).reshape(-1, 2)
    if neighbors.shape[0] == 0:
        return np.zeros(2)
    return unit(neighbors.mean(axis=0) - as_vec2(sheep_pos))


def sheep_total_force(
    prev_force,
    grouping,
    escape,
    repulsion,
    jitter,
    params: ModelParams,
    active: bool,
) -> np.ndarray:
    """Weighted force sum, renormalized to unit length (constant speed).

    When no shepherd is in range the sheep grazes: only mutual repulsion and
    jitter apply, without the flocking attraction or inertia terms.
    """
    if active:
        raw = (
            params.w_inertia * as_vec2(prev_force)
            + params.w_lcm_attraction * as_vec2(grouping)
            + params.w_shepherd_repulsion * as_vec2(escape)
            + params.w_sheep_repulsion * as_vec2(repulsion)
            + params.w_sheep_jitter * as_vec2(jitter)
        )
    else:
        raw = params.w_sheep_repulsion * as_vec2(repulsion) + params.w_sheep_jitter * as_vec2(jitter)
    return unit(raw)


def shepherd_total_force(steer, jitter, w_jitter: float) -> np.ndarray:
    """normalize(steer + w_jitter * jitter)."""
    return unit(as_vec2(steer) + w_jitter * as_vec2(jitter))


def step_position(pos, speed: float, force, box: float) -> np.ndarray:
    """pos + speed * force, clamped coordinate-wise into [0, box]."""
    moved = as_vec2(pos) + speed * as_vec2(force)
    return np.clip(moved, 0.0, box)
