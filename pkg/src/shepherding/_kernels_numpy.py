"""Pure-numpy fallback for the hot path.

Mirrors `_kernels_numba` step for step: identical draw addressing and update
order, vectorized where the sequential-update semantics allow. Sheep move
one at a time against the live position array (unless simultaneous_update),
so the per-sheep loop stays in Python with vectorized inner math.
"""

from __future__ import annotations

import numpy as np

from . import rng
from .vec import EPS


def _unit_rows(v: np.ndarray) -> np.ndarray:
    n = np.sqrt((v * v).sum())
    if n <= EPS:
        return np.zeros(2)
    return v / n


def tick_core(pos, prev_force, shep, target, kp, seeds, alpha, lam, threshold, step, perceived=None, d2buf=None):
    """Numpy twin of the jitted tick (scratch arguments accepted and ignored)."""
    n = pos.shape[0]
    m = shep.shape[0]
    big = kp.paddock_length
    seed_sheepjit = int(seeds[0])
    seed_shepjit = int(seeds[1])
    seed_act = int(seeds[2])
    seed_per = int(seeds[3])
    seed_contact = int(seeds[4])

    if alpha > 0.0:
        perceived = pos + alpha * rng.normal_block(seed_per, step, n)
    else:
        perceived = pos.copy()

    gcm = perceived.mean(axis=0)
    delta = perceived - gcm
    d2 = delta[:, 0] ** 2 + delta[:, 1] ** 2
    fi = int(np.argmax(d2))
    if np.sqrt(d2[fi]) <= threshold:
        mode = 1
        steer_point = gcm + kp.drive_offset * _unit_rows(gcm - target)
    else:
        mode = 2
        steer_point = perceived[fi] + kp.collect_offset * _unit_rows(perceived[fi] - gcm)

    # Values for halted shepherds are computed but unused; counter addressing
    # keeps them identical to the jitted path's skipped draws.
    shep_jitter = rng.unit_block(seed_shepjit, step, m)
    halted0 = False
    steer0 = np.zeros(2)
    for j in range(m):
        dd = pos - shep[j]
        mind = np.sqrt((dd[:, 0] ** 2 + dd[:, 1] ** 2).min())
        halted = mind <= kp.shepherd_standoff
        steer = np.zeros(2)
        if not halted:
            steer = _unit_rows(steer_point - shep[j])
            force = _unit_rows(steer + kp.w_shepherd_jitter * shep_jitter[j])
            shep[j] = np.clip(shep[j] + kp.shepherd_speed * force, 0.0, big)
        if j == 0:
            halted0 = halted
            steer0 = steer

    src = pos.copy() if kp.simultaneous_update else pos
    k_eff = min(kp.neighbor_count, n - 1)
    r2_sheep = kp.sheep_sense_sheep**2
    r2_shep = kp.sheep_sense_shepherd**2

    sheep_jitter = rng.unit_block(seed_sheepjit, step, n)
    act_noise = rng.normal_block(seed_act, step, n) if lam > 0.0 else None

    for i in range(n):
        p = src[i].copy()

        to_shep = shep - p
        shep_d2 = to_shep[:, 0] ** 2 + to_shep[:, 1] ** 2
        active = bool((shep_d2 <= r2_shep).any())

        away = p - src
        d2row = away[:, 0] ** 2 + away[:, 1] ** 2
        d2row[i] = np.inf
        in_range = d2row <= r2_sheep
        coincident = in_range & (d2row <= EPS * EPS)
        normal_case = in_range & ~coincident
        repulsion = np.zeros(2)
        if normal_case.any():
            dist = np.sqrt(d2row[normal_case])
            repulsion = (away[normal_case] / dist[:, None]).sum(axis=0)
        for contact_idx in range(int(coincident.sum())):
            ux, uy = rng.draw_unit_vector(seed_contact, step, i, contact_idx)
            repulsion = repulsion + np.array([ux, uy])
        repulsion = _unit_rows(repulsion)

        jitter = sheep_jitter[i]

        if active or kp.always_active:
            in_shep = shep_d2 <= r2_shep
            escape = np.zeros(2)
            for j in np.flatnonzero(in_shep):
                escape = escape + _unit_rows(p - shep[j])
            escape = _unit_rows(escape)

            grouping = np.zeros(2)
            if k_eff >= 1:
                kth = np.partition(d2row, k_eff - 1)[k_eff - 1]
                take = np.flatnonzero(d2row < kth)
                short = k_eff - take.size
                if short > 0:
                    ties = np.flatnonzero(d2row == kth)[:short]
                    take = np.concatenate([take, ties])
                lcm = src[take].sum(axis=0) / k_eff
                grouping = _unit_rows(lcm - p)

            raw = (
                kp.w_inertia * prev_force[i]
                + kp.w_lcm_attraction * grouping
                + kp.w_shepherd_repulsion * escape
                + kp.w_sheep_repulsion * repulsion
                + kp.w_sheep_jitter * jitter
            )
        else:
            raw = kp.w_sheep_repulsion * repulsion + kp.w_sheep_jitter * jitter

        force = _unit_rows(raw)
        move = force if act_noise is None else force + lam * act_noise[i]
        pos[i] = np.clip(p + kp.sheep_speed * move, 0.0, big)
        prev_force[i] = force

    return mode, halted0, float(steer_point[0]), float(steer_point[1]), float(steer0[0]), float(steer0[1])


def _gcm_distance(pos, target):
    gcm = pos.mean(axis=0)
    return float(np.sqrt(((gcm - target) ** 2).sum()))


def episode_core(pos, prev_force, shep, target, kp, seeds, alpha, lam, threshold, record, traj, modes):
    """Numpy twin of the jitted episode loop."""
    n = pos.shape[0]

    if record:
        traj[0, :n] = pos
        traj[0, n:] = shep
        modes[0] = 0

    d = _gcm_distance(pos, target)
    if d <= kp.goal_distance:
        return True, 0, d

    for t in range(kp.step_limit):
        mode, _, _, _, _, _ = tick_core(pos, prev_force, shep, target, kp, seeds, alpha, lam, threshold, t)
        if record:
            traj[t + 1, :n] = pos
            traj[t + 1, n:] = shep
            modes[t + 1] = mode
        d = _gcm_distance(pos, target)
        if d <= kp.goal_distance:
            return True, t + 1, d

    return False, kp.step_limit, d
