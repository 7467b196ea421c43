"""Numba-jitted hot path: one tick and one full episode in machine code.

The functions here mirror `_kernels_numpy` exactly (same draw addressing,
same update order); keep the two files in sync. Scalar uint64 RNG math is a
twin of `rng.py` — the cross-backend equality of all three is pinned by
tests.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .rng import GOLDEN, MIX_A, MIX_B, U01_SCALE

_GOLDEN = np.uint64(GOLDEN)
_MIX_A = np.uint64(MIX_A)
_MIX_B = np.uint64(MIX_B)
_ONE = np.uint64(1)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_S40 = np.uint64(40)
_S16 = np.uint64(16)

_EPS = 1e-12


@njit(inline="always")
def _u01(seed, ctr):
    z = seed + (ctr + _ONE) * _GOLDEN
    z = (z ^ (z >> _S30)) * _MIX_A
    z = (z ^ (z >> _S27)) * _MIX_B
    z = z ^ (z >> _S31)
    return np.float64(z >> _S11) * U01_SCALE


@njit(inline="always")
def _ctr(step, agent, slot):
    return (np.uint64(step) << _S40) | (np.uint64(agent) << _S16) | np.uint64(slot)


@njit(inline="always")
def _normal_pair(seed, step, agent, index):
    base = _ctr(step, agent, index * 64)
    for t in range(32):
        u = 2.0 * _u01(seed, base + np.uint64(2 * t)) - 1.0
        v = 2.0 * _u01(seed, base + np.uint64(2 * t + 1)) - 1.0
        s = u * u + v * v
        if 0.0 < s < 1.0:
            f = np.sqrt(-2.0 * np.log(s) / s)
            return u * f, v * f
    return 0.0, 0.0


@njit(inline="always")
def _unit_vector(seed, step, agent, index):
    base = _ctr(step, agent, index * 64)
    for t in range(32):
        u = 2.0 * _u01(seed, base + np.uint64(2 * t)) - 1.0
        v = 2.0 * _u01(seed, base + np.uint64(2 * t + 1)) - 1.0
        s = u * u + v * v
        if 0.0 < s < 1.0:
            r = np.sqrt(s)
            return u / r, v / r
    return 1.0, 0.0


@njit(inline="always")
def _unit2(x, y):
    n = np.sqrt(x * x + y * y)
    if n <= _EPS:
        return 0.0, 0.0
    return x / n, y / n


@njit(cache=True, nogil=True)
def _gcm_distance(pos, target):
    n = pos.shape[0]
    gx = 0.0
    gy = 0.0
    for i in range(n):
        gx += pos[i, 0]
        gy += pos[i, 1]
    gx = gx / n - target[0]
    gy = gy / n - target[1]
    return np.sqrt(gx * gx + gy * gy)


@njit(cache=True, nogil=True)
def tick_core(pos, prev_force, shep, target, kp, seeds, alpha, lam, threshold, step, perceived, d2buf):
    """Advance the world by one step in place.

    Order: perceive -> decide -> move shepherds -> move sheep (sequentially,
    against the live array, unless kp.simultaneous_update). Returns the
    decision of shepherd 0: (mode, halted, steer_point_x/y, steer_force_x/y).
    """
    n = pos.shape[0]
    m = shep.shape[0]
    big = kp.paddock_length
    seed_sheepjit = seeds[0]
    seed_shepjit = seeds[1]
    seed_act = seeds[2]
    seed_per = seeds[3]
    seed_contact = seeds[4]

    if alpha > 0.0:
        for i in range(n):
            g1, g2 = _normal_pair(seed_per, step, i, 0)
            perceived[i, 0] = pos[i, 0] + alpha * g1
            perceived[i, 1] = pos[i, 1] + alpha * g2
    else:
        for i in range(n):
            perceived[i, 0] = pos[i, 0]
            perceived[i, 1] = pos[i, 1]

    gx = 0.0
    gy = 0.0
    for i in range(n):
        gx += perceived[i, 0]
        gy += perceived[i, 1]
    gx /= n
    gy /= n
    fi = 0
    fd2 = -1.0
    for i in range(n):
        dx = perceived[i, 0] - gx
        dy = perceived[i, 1] - gy
        d2 = dx * dx + dy * dy
        if d2 > fd2:
            fd2 = d2
            fi = i
    if np.sqrt(fd2) <= threshold:
        mode = 1  # driving
        dirx, diry = _unit2(gx - target[0], gy - target[1])
        spx = gx + kp.drive_offset * dirx
        spy = gy + kp.drive_offset * diry
    else:
        mode = 2  # collecting
        fx = perceived[fi, 0]
        fy = perceived[fi, 1]
        dirx, diry = _unit2(fx - gx, fy - gy)
        spx = fx + kp.collect_offset * dirx
        spy = fy + kp.collect_offset * diry

    halted0 = False
    sfx0 = 0.0
    sfy0 = 0.0
    for j in range(m):
        mind2 = np.inf
        for i in range(n):
            dx = pos[i, 0] - shep[j, 0]
            dy = pos[i, 1] - shep[j, 1]
            d2 = dx * dx + dy * dy
            if d2 < mind2:
                mind2 = d2
        halted = np.sqrt(mind2) <= kp.shepherd_standoff
        sfx = 0.0
        sfy = 0.0
        if not halted:
            sfx, sfy = _unit2(spx - shep[j, 0], spy - shep[j, 1])
            jx, jy = _unit_vector(seed_shepjit, step, j, 0)
            fx_, fy_ = _unit2(sfx + kp.w_shepherd_jitter * jx, sfy + kp.w_shepherd_jitter * jy)
            shep[j, 0] = min(max(shep[j, 0] + kp.shepherd_speed * fx_, 0.0), big)
            shep[j, 1] = min(max(shep[j, 1] + kp.shepherd_speed * fy_, 0.0), big)
        if j == 0:
            halted0 = halted
            sfx0 = sfx
            sfy0 = sfy

    src = pos
    if kp.simultaneous_update:
        src = pos.copy()
    k_eff = min(kp.neighbor_count, n - 1)
    r2_sheep = kp.sheep_sense_sheep * kp.sheep_sense_sheep
    r2_shep = kp.sheep_sense_shepherd * kp.sheep_sense_shepherd

    for i in range(n):
        px = src[i, 0]
        py = src[i, 1]

        active = False
        for j in range(m):
            dx = px - shep[j, 0]
            dy = py - shep[j, 1]
            if dx * dx + dy * dy <= r2_shep:
                active = True
                break

        rx = 0.0
        ry = 0.0
        contact_idx = 0
        for k in range(n):
            if k == i:
                continue
            dx = px - src[k, 0]
            dy = py - src[k, 1]
            d2 = dx * dx + dy * dy
            if d2 <= r2_sheep:
                d = np.sqrt(d2)
                if d <= _EPS:
                    ux, uy = _unit_vector(seed_contact, step, i, contact_idx)
                    contact_idx += 1
                    rx += ux
                    ry += uy
                else:
                    rx += dx / d
                    ry += dy / d
        rx, ry = _unit2(rx, ry)

        jx, jy = _unit_vector(seed_sheepjit, step, i, 0)

        if active or kp.always_active:
            ex = 0.0
            ey = 0.0
            for j in range(m):
                dx = px - shep[j, 0]
                dy = py - shep[j, 1]
                if dx * dx + dy * dy <= r2_shep:
                    ux, uy = _unit2(dx, dy)
                    ex += ux
                    ey += uy
            ex, ey = _unit2(ex, ey)

            lcx = 0.0
            lcy = 0.0
            if k_eff >= 1:
                for k in range(n):
                    dx = px - src[k, 0]
                    dy = py - src[k, 1]
                    d2buf[k] = dx * dx + dy * dy
                d2buf[i] = np.inf
                kth = np.partition(d2buf, k_eff - 1)[k_eff - 1]
                cnt = 0
                sx = 0.0
                sy = 0.0
                for k in range(n):
                    if d2buf[k] < kth:
                        sx += src[k, 0]
                        sy += src[k, 1]
                        cnt += 1
                for k in range(n):
                    if cnt >= k_eff:
                        break
                    if d2buf[k] == kth:
                        sx += src[k, 0]
                        sy += src[k, 1]
                        cnt += 1
                lcx, lcy = _unit2(sx / k_eff - px, sy / k_eff - py)

            tx = (
                kp.w_inertia * prev_force[i, 0]
                + kp.w_lcm_attraction * lcx
                + kp.w_shepherd_repulsion * ex
                + kp.w_sheep_repulsion * rx
                + kp.w_sheep_jitter * jx
            )
            ty = (
                kp.w_inertia * prev_force[i, 1]
                + kp.w_lcm_attraction * lcy
                + kp.w_shepherd_repulsion * ey
                + kp.w_sheep_repulsion * ry
                + kp.w_sheep_jitter * jy
            )
        else:
            tx = kp.w_sheep_repulsion * rx + kp.w_sheep_jitter * jx
            ty = kp.w_sheep_repulsion * ry + kp.w_sheep_jitter * jy

        fx_, fy_ = _unit2(tx, ty)

        mx = fx_
        my = fy_
        if lam > 0.0:
            g1, g2 = _normal_pair(seed_act, step, i, 0)
            mx = fx_ + lam * g1
            my = fy_ + lam * g2
        pos[i, 0] = min(max(px + kp.sheep_speed * mx, 0.0), big)
        pos[i, 1] = min(max(py + kp.sheep_speed * my, 0.0), big)
        prev_force[i, 0] = fx_
        prev_force[i, 1] = fy_

    return mode, halted0, spx, spy, sfx0, sfy0


@njit(cache=True, nogil=True)
def episode_core(pos, prev_force, shep, target, kp, seeds, alpha, lam, threshold, record, traj, modes):
    """Run ticks until the sheep centre of mass reaches the goal or the limit.

    Success is checked before the first tick and after every tick. Returns
    (success, steps, final distance of the centre of mass to the target).
    """
    n = pos.shape[0]
    m = shep.shape[0]
    perceived = np.empty((n, 2))
    d2buf = np.empty(n)

    if record:
        for i in range(n):
            traj[0, i, 0] = pos[i, 0]
            traj[0, i, 1] = pos[i, 1]
        for j in range(m):
            traj[0, n + j, 0] = shep[j, 0]
            traj[0, n + j, 1] = shep[j, 1]
        modes[0] = 0

    d = _gcm_distance(pos, target)
    if d <= kp.goal_distance:
        return True, 0, d

    for t in range(kp.step_limit):
        mode, _, _, _, _, _ = tick_core(
            pos, prev_force, shep, target, kp, seeds, alpha, lam, threshold, t, perceived, d2buf
        )
        if record:
            for i in range(n):
                traj[t + 1, i, 0] = pos[i, 0]
                traj[t + 1, i, 1] = pos[i, 1]
            for j in range(m):
                traj[t + 1, n + j, 0] = shep[j, 0]
                traj[t + 1, n + j, 1] = shep[j, 1]
            modes[t + 1] = mode
        d = _gcm_distance(pos, target)
        if d <= kp.goal_distance:
            return True, t + 1, d

    return False, kp.step_limit, d
