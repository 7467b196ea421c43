"""Shepherd decision logic: drive/collect selection and steering points."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .params import ModelParams
from .vec import EPS, as_vec2, unit


class Mode(enum.IntEnum):
    NONE = 0  # no decision yet (initial trajectory row)
    DRIVING = 1
    COLLECTING = 2


MODE_NAMES = {Mode.NONE: "none", Mode.DRIVING: "driving", Mode.COLLECTING: "collecting"}


@dataclass(frozen=True)
class ThresholdLevel:
    level: int
    value: float


@dataclass(frozen=True)
class ShepherdDecision:
    mode: Mode
    steer_point: np.ndarray
    steer_force: np.ndarray  # unit vector toward steer_point; zero when halted
    halted: bool


def behavior_threshold(sense_sheep: float, count: int) -> float:
    """Flock-radius threshold separating driving from collecting."""
    return sense_sheep * float(count) ** (2.0 / 3.0)


def threshold_value(level: int, params: ModelParams) -> ThresholdLevel:
    """Threshold at ladder position ``level`` (base value +/- level steps)."""
    if not -3 <= level <= 3:
        raise ValueError(f"threshold level must be in [-3, 3], got {level}")
    base = behavior_threshold(params.sheep_sense_sheep, params.sheep_count)
    return ThresholdLevel(level=level, value=base + level * params.delta_f)


def global_center_of_mass(positions) -> np.ndarray:
    pos = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
    if pos.shape[0] == 0:
        raise ValueError("center of mass of an empty position list")
    return pos.mean(axis=0)


def furthest_sheep(positions, gcm) -> tuple[int, float]:
    """Index and distance of the sheep furthest from ``gcm`` (ties: lower index)."""
    pos = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
    delta = pos - as_vec2(gcm)
    d2 = delta[:, 0] ** 2 + delta[:, 1] ** 2
    idx = int(np.argmax(d2))  # argmax returns the first maximum
    return idx, float(np.sqrt(d2[idx]))


def select_mode(perceived_positions, threshold: float) -> Mode:
    """Driving when every perceived sheep is within ``threshold`` of the GCM."""
    gcm = global_center_of_mass(perceived_positions)
    _, max_dist = furthest_sheep(perceived_positions, gcm)
    return Mode.DRIVING if max_dist <= threshold else Mode.COLLECTING


def driving_point(gcm, target, drive_offset: float) -> np.ndarray:
    """Point ``drive_offset`` behind the GCM on the target->GCM ray."""
    g = as_vec2(gcm)
    direction = unit(g - as_vec2(target))
    return g + drive_offset * direction


def collecting_point(gcm, furthest, collect_offset: float) -> np.ndarray:
    """Point ``collect_offset`` beyond the furthest sheep, away from the GCM."""
    f = as_vec2(furthest)
    direction = unit(f - as_vec2(gcm))
    return f + collect_offset * direction


def shepherd_decide(
    perceived_positions,
    true_positions,
    shepherd_pos,
    target,
    threshold: float,
    params: ModelParams,
) -> ShepherdDecision:
    """Full per-step decision for one shepherd.

    Mode and steering point are computed from the perceived (possibly
    noise-corrupted) positions; the halt check uses true positions because
    it models physical proximity, not sensing.
    """
    perceived = np.asarray(perceived_positions, dtype=np.float64).reshape(-1, 2)
    gcm = global_center_of_mass(perceived)
    fi, max_dist = furthest_sheep(perceived, gcm)
    if max_dist <= threshold:
        mode = Mode.DRIVING
        steer_point = driving_point(gcm, target, params.drive_offset)
    else:
        mode = Mode.COLLECTING
        steer_point = collecting_point(gcm, perceived[fi], params.collect_offset)

    true_pos = np.asarray(true_positions, dtype=np.float64).reshape(-1, 2)
    delta = true_pos - as_vec2(shepherd_pos)
    min_dist = float(np.sqrt((delta**2).sum(axis=1).min()))
    halted = min_dist <= params.shepherd_standoff

    steer_force = np.zeros(2) if halted else unit(steer_point - as_vec2(shepherd_pos))
    return ShepherdDecision(mode=mode, steer_point=steer_point, steer_force=steer_force, halted=halted)
