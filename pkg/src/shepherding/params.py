"""Model parameters: one frozen record is the single source of truth for a run."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import NamedTuple, Optional


class KernelParams(NamedTuple):
    """Flat, numba-friendly view of ModelParams (all derived fields resolved)."""

    paddock_length: float
    sheep_count: int
    shepherd_count: int
    sheep_sense_shepherd: float
    sheep_sense_sheep: float
    w_sheep_repulsion: float
    w_shepherd_repulsion: float
    w_lcm_attraction: float
    w_inertia: float
    w_sheep_jitter: float
    w_shepherd_jitter: float
    neighbor_count: int
    sheep_speed: float
    shepherd_speed: float
    goal_distance: float
    step_limit: int
    drive_offset: float
    collect_offset: float
    shepherd_standoff: float
    always_active: bool
    simultaneous_update: bool


@dataclass(frozen=True)
class ModelParams:
    """Environment and interaction constants for one simulation.

    Defaults are the standard 150 m paddock with 100 sheep and one shepherd.
    ``drive_offset``, ``collect_offset`` and ``shepherd_standoff`` default to
    ``sheep_sense_sheep * sqrt(sheep_count)``, ``sheep_sense_sheep`` and
    ``3 * sheep_sense_sheep`` respectively when left as None.

    ``always_active`` makes far-from-shepherd sheep keep their full force
    model (grouping + inertia) instead of the default grazing behaviour.
    ``simultaneous_update`` moves all sheep from a frozen snapshot instead of
    the default in-place sequential order.
    """

    paddock_length: float = 150.0
    sheep_count: int = 100
    shepherd_count: int = 1
    sheep_sense_shepherd: float = 65.0
    sheep_sense_sheep: float = 2.0
    w_sheep_repulsion: float = 2.0
    w_shepherd_repulsion: float = 1.0
    w_lcm_attraction: float = 1.05
    w_inertia: float = 0.5
    w_sheep_jitter: float = 0.3
    w_shepherd_jitter: float = 0.3
    neighbor_count: int = 25
    sheep_speed: float = 1.0
    shepherd_speed: float = 2.0
    goal_distance: float = 5.0
    step_limit: int = 1000
    delta_f: float = 5.0
    drive_offset: Optional[float] = None
    collect_offset: Optional[float] = None
    shepherd_standoff: Optional[float] = None
    always_active: bool = False
    simultaneous_update: bool = False

    def __post_init__(self):
        if self.drive_offset is None:
            object.__setattr__(
                self, "drive_offset", self.sheep_sense_sheep * math.sqrt(self.sheep_count)
            )
        if self.collect_offset is None:
            object.__setattr__(self, "collect_offset", self.sheep_sense_sheep)
        if self.shepherd_standoff is None:
            object.__setattr__(self, "shepherd_standoff", 3.0 * self.sheep_sense_sheep)
        if self.neighbor_count > self.sheep_count - 1:
            object.__setattr__(self, "neighbor_count", max(self.sheep_count - 1, 0))
        self.validate()

    def validate(self) -> None:
        problems = []
        if self.sheep_count < 1:
            problems.append("sheep_count must be >= 1")
        if self.shepherd_count < 1:
            problems.append("shepherd_count must be >= 1")
        # Counter packing reserves 24 bits each for step and agent indices.
        if not 1 <= self.step_limit < 2**24:
            problems.append("step_limit must be in [1, 2**24)")
        if max(self.sheep_count, self.shepherd_count) >= 2**24:
            problems.append("agent counts must be < 2**24")
        for name in (
            "paddock_length",
            "sheep_sense_shepherd",
            "sheep_sense_sheep",
            "w_sheep_repulsion",
            "w_shepherd_repulsion",
            "w_lcm_attraction",
            "w_inertia",
            "w_sheep_jitter",
            "w_shepherd_jitter",
            "sheep_speed",
            "shepherd_speed",
            "goal_distance",
            "delta_f",
            "drive_offset",
            "collect_offset",
            "shepherd_standoff",
        ):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                problems.append(f"{name} must be a finite nonnegative number")
        if self.neighbor_count < 0:
            problems.append("neighbor_count must be >= 0")
        if self.paddock_length <= 0:
            problems.append("paddock_length must be > 0")
        if problems:
            raise ValueError("invalid ModelParams: " + "; ".join(problems))

    def pack(self) -> KernelParams:
        return KernelParams(
            paddock_length=float(self.paddock_length),
            sheep_count=int(self.sheep_count),
            shepherd_count=int(self.shepherd_count),
            sheep_sense_shepherd=float(self.sheep_sense_shepherd),
            sheep_sense_sheep=float(self.sheep_sense_sheep),
            w_sheep_repulsion=float(self.w_sheep_repulsion),
            w_shepherd_repulsion=float(self.w_shepherd_repulsion),
            w_lcm_attraction=float(self.w_lcm_attraction),
            w_inertia=float(self.w_inertia),
            w_sheep_jitter=float(self.w_sheep_jitter),
            w_shepherd_jitter=float(self.w_shepherd_jitter),
            neighbor_count=int(self.neighbor_count),
            sheep_speed=float(self.sheep_speed),
            shepherd_speed=float(self.shepherd_speed),
            goal_distance=float(self.goal_distance),
            step_limit=int(self.step_limit),
            drive_offset=float(self.drive_offset),
            collect_offset=float(self.collect_offset),
            shepherd_standoff=float(self.shepherd_standoff),
            always_active=bool(self.always_active),
            simultaneous_update=bool(self.simultaneous_update),
        )

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}
