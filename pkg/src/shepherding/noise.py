"""Actuation and perception noise channels and their level ladders.

Both channels draw independent standard normals per coordinate, scaled by a
noise value in metres. The values are fractions of the noise unit delta_n,
which equals the largest investigated drive/collect threshold (level +3):
perception levels step by 0.1 * delta_n, actuation levels by 0.01 * delta_n.
Level 0 is exactly noise free on both ladders.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .behavior import threshold_value
from .params import ModelParams
from .vec import as_vec2

ALPHA_FRACTION = 0.1  # perception ladder step, fraction of delta_n per level
LAMBDA_FRACTION = 0.01  # actuation ladder step
LEVEL_NAMES = (
    "Noise Free",
    "Very little",
    "Little",
    "Small",
    "Medium",
    "High",
    "Very High",
)


@dataclass(frozen=True)
class NoiseSpec:
    alpha_level: int
    lambda_level: int
    alpha: float  # perception noise std, metres
    lam: float  # actuation noise std, metres
    delta_n: float

    @classmethod
    def from_levels(cls, alpha_level: int, lambda_level: int, params: ModelParams) -> "NoiseSpec":
        return noise_values(alpha_level, lambda_level, compute_delta_n(params))


def compute_delta_n(params: ModelParams) -> float:
    """Noise unit: the +3 threshold value."""
    return threshold_value(3, params).value


def noise_values(alpha_level: int, lambda_level: int, delta_n: float) -> NoiseSpec:
    if not 0 <= alpha_level <= 6:
        raise ValueError(f"alpha level must be in 0..6, got {alpha_level}")
    if not 0 <= lambda_level <= 6:
        raise ValueError(f"lambda level must be in 0..6, got {lambda_level}")
    return NoiseSpec(
        alpha_level=alpha_level,
        lambda_level=lambda_level,
        alpha=ALPHA_FRACTION * alpha_level * delta_n,
        lam=LAMBDA_FRACTION * lambda_level * delta_n,
        delta_n=delta_n,
    )


def apply_actuation_noise(pos, speed: float, force, lam: float, rng) -> np.ndarray:
    """Next position before boundary clamping: pos + speed*(force + lam*g).

    ``g`` is a pair of independent standard normals from ``rng``; with
    lam == 0 no draw is consumed and the update is exactly pos + speed*force.
    """
    p = as_vec2(pos)
    f = as_vec2(force)
    if lam == 0.0:
        return p + speed * f
    g1, g2 = rng.normal_pair()
    return p + speed * (f + lam * np.array([g1, g2]))


def perceive_positions(true_positions, alpha: float, rng) -> np.ndarray:
    """Positions as sensed by the shepherd: each coordinate perturbed by alpha*g.

    alpha == 0 returns the positions unchanged without consuming draws.
    """
    pos = np.asarray(true_positions, dtype=np.float64).reshape(-1, 2).copy()
    if alpha == 0.0:
        return pos
    for i in range(pos.shape[0]):
        g1, g2 = rng.normal_pair()
        pos[i, 0] += alpha * g1
        pos[i, 1] += alpha * g2
    return pos
