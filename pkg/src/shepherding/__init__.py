"""Shepherding swarm-guidance simulator with noise injection and sweep harness."""

__version__ = "0.1.0"

from .behavior import Mode, ShepherdDecision, ThresholdLevel, behavior_threshold, threshold_value
from .engine import (
    EpisodeConfig,
    EpisodeResult,
    TrajectoryRecord,
    WorldState,
    init_world,
    run_episode,
    tick,
)
from .noise import NoiseSpec, compute_delta_n, noise_values
from .params import ModelParams
from .rng import RngStream, episode_streams

__all__ = [
    "EpisodeConfig",
    "EpisodeResult",
    "Mode",
    "ModelParams",
    "NoiseSpec",
    "RngStream",
    "ShepherdDecision",
    "ThresholdLevel",
    "TrajectoryRecord",
    "WorldState",
    "__version__",
    "behavior_threshold",
    "compute_delta_n",
    "episode_streams",
    "init_world",
    "noise_values",
    "run_episode",
    "threshold_value",
    "tick",
]
