"""Episode orchestration: initialisation, ticking, termination, recording."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._backend import resolve_backend
from .behavior import MODE_NAMES, Mode, ShepherdDecision, threshold_value
from .noise import NoiseSpec, compute_delta_n
from .params import ModelParams
from .rng import EpisodeStreams, RngStream, episode_streams
from .vec import unit


def _backend_module(name: str):
    if name == "numba":
        from . import _kernels_numba as mod
    else:
        from . import _kernels_numpy as mod
    return mod


@dataclass
class WorldState:
    """Positions of every agent plus each sheep's previous total force."""

    sheep_positions: np.ndarray  # (N, 2)
    sheep_prev_force: np.ndarray  # (N, 2)
    shepherd_positions: np.ndarray  # (M, 2)
    target: np.ndarray  # (2,)
    step: int = 0

    def copy(self) -> "WorldState":
        return WorldState(
            sheep_positions=self.sheep_positions.copy(),
            sheep_prev_force=self.sheep_prev_force.copy(),
            shepherd_positions=self.shepherd_positions.copy(),
            target=self.target.copy(),
            step=self.step,
        )

    def validate(self, params: ModelParams) -> None:
        n, m = params.sheep_count, params.shepherd_count
        if self.sheep_positions.shape != (n, 2):
            raise ValueError(f"expected {n} sheep positions, got {self.sheep_positions.shape}")
        if self.shepherd_positions.shape != (m, 2):
            raise ValueError(f"expected {m} shepherd positions, got {self.shepherd_positions.shape}")
        if self.sheep_prev_force.shape != (n, 2):
            raise ValueError("sheep_prev_force shape mismatch")


def init_world(params: ModelParams, rng: RngStream) -> WorldState:
    """Random start: sheep in the central half of the paddock, shepherd in the
    corner tenth near the target at (0, 0).

    Draw order: per sheep x then y, then per shepherd x then y.
    """
    big = params.paddock_length
    lo, hi = big / 4.0, 3.0 * big / 4.0
    sheep = np.empty((params.sheep_count, 2))
    for i in range(params.sheep_count):
        sheep[i, 0] = lo + rng.uniform() * (hi - lo)
        sheep[i, 1] = lo + rng.uniform() * (hi - lo)
    shepherds = np.empty((params.shepherd_count, 2))
    for j in range(params.shepherd_count):
        shepherds[j, 0] = rng.uniform() * big / 10.0
        shepherds[j, 1] = rng.uniform() * big / 10.0
    return WorldState(
        sheep_positions=sheep,
        sheep_prev_force=np.zeros((params.sheep_count, 2)),
        shepherd_positions=shepherds,
        target=np.zeros(2),
        step=0,
    )


@dataclass(frozen=True)
class EpisodeConfig:
    params: ModelParams
    threshold_level: int
    noise: NoiseSpec
    seed: int
    record_trajectory: bool = False

    def __post_init__(self):
        threshold_value(self.threshold_level, self.params)  # range check
        expected = compute_delta_n(self.params)
        if abs(self.noise.delta_n - expected) > 1e-9 * max(1.0, expected):
            raise ValueError(
                f"noise delta_n {self.noise.delta_n} inconsistent with params (expected {expected})"
            )

    @classmethod
    def from_levels(
        cls,
        params: ModelParams,
        threshold_level: int,
        alpha_level: int,
        lambda_level: int,
        seed: int,
        record_trajectory: bool = False,
    ) -> "EpisodeConfig":
        return cls(
            params=params,
            threshold_level=threshold_level,
            noise=NoiseSpec.from_levels(alpha_level, lambda_level, params),
            seed=seed,
            record_trajectory=record_trajectory,
        )


@dataclass
class TrajectoryRecord:
    """Recorded states: index 0 is the initial world, one row per tick after."""

    sheep: np.ndarray  # (steps+1, N, 2)
    shepherds: np.ndarray  # (steps+1, M, 2)
    modes: np.ndarray  # (steps+1,) of Mode values; modes[0] is NONE

    def __len__(self) -> int:
        return self.sheep.shape[0]

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.sheep).tobytes())
        h.update(np.ascontiguousarray(self.shepherds).tobytes())
        h.update(np.ascontiguousarray(self.modes).tobytes())
        return h.hexdigest()

    def to_csv(self, path) -> None:
        """Columns: step, agent_kind, agent_id, x, y, mode."""
        with open(path, "w", newline="") as fh:
            fh.write("step,agent_kind,agent_id,x,y,mode\n")
            for t in range(len(self)):
                mode = MODE_NAMES[Mode(int(self.modes[t]))]
                for i in range(self.sheep.shape[1]):
                    fh.write(f"{t},sheep,{i},{self.sheep[t, i, 0]!r},{self.sheep[t, i, 1]!r},{mode}\n")
                for j in range(self.shepherds.shape[1]):
                    fh.write(
                        f"{t},shepherd,{j},{self.shepherds[t, j, 0]!r},{self.shepherds[t, j, 1]!r},{mode}\n"
                    )


@dataclass
class EpisodeResult:
    success: bool
    steps: int
    seed: int
    final_gcm_distance: float
    trajectory: Optional[TrajectoryRecord] = field(default=None, repr=False)


def _seed_array(streams: EpisodeStreams) -> np.ndarray:
    return np.array(
        [streams.sheep_jitter, streams.shepherd_jitter, streams.actuation, streams.perception, streams.contact],
        dtype=np.uint64,
    )


def tick(world: WorldState, config: EpisodeConfig, backend: str | None = None) -> ShepherdDecision:
    """Advance ``world`` by one step in place; returns shepherd 0's decision.

    The step counter addresses the random draws, so replaying a sequence of
    ticks from the same initial world reproduces an episode exactly.
    """
    params = config.params
    world.validate(params)
    if world.step >= params.step_limit:
        raise ValueError(f"world already at the step limit ({params.step_limit})")
    kp = params.pack()
    seeds = _seed_array(episode_streams(config.seed))
    threshold = threshold_value(config.threshold_level, params).value
    mod = _backend_module(resolve_backend(backend))
    n = params.sheep_count
    mode, halted, spx, spy, sfx, sfy = mod.tick_core(
        world.sheep_positions,
        world.sheep_prev_force,
        world.shepherd_positions,
        world.target,
        kp,
        seeds,
        config.noise.alpha,
        config.noise.lam,
        threshold,
        world.step,
        np.empty((n, 2)),
        np.empty(n),
    )
    world.step += 1
    return ShepherdDecision(
        mode=Mode(int(mode)),
        steer_point=np.array([spx, spy]),
        steer_force=np.array([sfx, sfy]),
        halted=bool(halted),
    )


def run_episode(
    config: EpisodeConfig,
    initial_world: WorldState | None = None,
    backend: str | None = None,
) -> EpisodeResult:
    """Run one episode to success or the step limit; deterministic in the seed."""
    params = config.params
    streams = episode_streams(config.seed)
    if initial_world is None:
        world = init_world(params, RngStream(streams.init))
    else:
        world = initial_world.copy()
    world.validate(params)

    kp = params.pack()
    seeds = _seed_array(streams)
    threshold = threshold_value(config.threshold_level, params).value
    n, m = params.sheep_count, params.shepherd_count

    record = config.record_trajectory
    if record:
        traj = np.zeros((params.step_limit + 1, n + m, 2))
        modes = np.zeros(params.step_limit + 1, dtype=np.int64)
    else:
        traj = np.zeros((1, 1, 2))
        modes = np.zeros(1, dtype=np.int64)

    mod = _backend_module(resolve_backend(backend))
    success, steps, final_dist = mod.episode_core(
        world.sheep_positions,
        world.sheep_prev_force,
        world.shepherd_positions,
        world.target,
        kp,
        seeds,
        config.noise.alpha,
        config.noise.lam,
        threshold,
        record,
        traj,
        modes,
    )

    trajectory = None
    if record:
        trajectory = TrajectoryRecord(
            sheep=traj[: steps + 1, :n].copy(),
            shepherds=traj[: steps + 1, n:].copy(),
            modes=modes[: steps + 1].copy(),
        )
    return EpisodeResult(
        success=bool(success),
        steps=int(steps),
        seed=config.seed,
        final_gcm_distance=float(final_dist),
        trajectory=trajectory,
    )


def gcm_distance_to_target(world: WorldState) -> float:
    gcm = world.sheep_positions.mean(axis=0)
    return float(np.sqrt(((gcm - world.target) ** 2).sum()))


def warm_up(backend: str | None = None) -> None:
    """Trigger kernel compilation with a tiny throwaway episode."""
    params = ModelParams(sheep_count=3, neighbor_count=2, step_limit=2)
    config = EpisodeConfig.from_levels(params, 0, 1, 1, seed=0)
    run_episode(config, backend=backend)


__all__ = [
    "EpisodeConfig",
    "EpisodeResult",
    "TrajectoryRecord",
    "WorldState",
    "gcm_distance_to_target",
    "init_world",
    "run_episode",
    "tick",
    "unit",
    "warm_up",
]
