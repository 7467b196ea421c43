"""Deterministic counter-based randomness for reproducible episodes.

The generator is splitmix64 run in counter mode: draw ``k`` of the stream
seeded with ``s`` is ``mix64(s + (k + 1) * GOLDEN)``, where ``mix64`` is the
splitmix64 output permutation (Steele, Lea & Flood 2014) and ``GOLDEN`` the
64-bit golden-ratio increment. Because every value is addressed by
``(seed, counter)`` instead of by shared mutable state, consuming draws on
one channel can never shift the draws of another channel.

An episode owns six independent channels (initialisation, sheep jitter,
shepherd jitter, actuation noise, perception noise, contact resolution),
each seeded by SHA-256 of ``"{episode_seed}:{channel}"``. Per-step draws are
addressed by packing ``(step, agent, slot)`` into the counter.

Normal deviates come from the Marsaglia polar transform of the uniform
stream; unit vectors reuse the same rejection loop without the radial
factor. Only ``sqrt`` and ``log`` are involved, so streams are bit-stable
given a faithful libm.
"""

from __future__ import annotations

import hashlib
from typing import NamedTuple

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX_A = 0xBF58476D1CE4E5B9
MIX_B = 0x94D049BB133111EB
U01_SCALE = 2.0 ** -53

# Counter layout: step < 2**24, agent < 2**24, slot < 2**16. Each logical
# draw owns a 64-slot block (32 rejection attempts of 2 uniforms each).
STEP_SHIFT = 40
AGENT_SHIFT = 16
SLOTS_PER_DRAW = 64
MAX_ATTEMPTS = SLOTS_PER_DRAW // 2

CHANNELS = (
    "init",
    "sheep-jitter",
    "shepherd-jitter",
    "actuation",
    "perception",
    "contact",
)


def mix64(z: int) -> int:
    """splitmix64 output permutation on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_A) & MASK64
    z = ((z ^ (z >> 27)) * MIX_B) & MASK64
    return z ^ (z >> 31)


def counter_u64(seed: int, ctr: int) -> int:
    """Raw 64-bit draw number ``ctr`` of the stream seeded with ``seed``."""
    return mix64((seed + ((ctr + 1) * GOLDEN)) & MASK64)


def u01(seed: int, ctr: int) -> float:
    """Uniform double in [0, 1) from the top 53 bits of the raw draw."""
    return (counter_u64(seed, ctr) >> 11) * U01_SCALE


def pack_ctr(step: int, agent: int, slot: int) -> int:
    return (step << STEP_SHIFT) | (agent << AGENT_SHIFT) | slot


def draw_normal_pair(seed: int, step: int, agent: int, index: int = 0) -> tuple[float, float]:
    """Two independent standard normals for draw ``index`` of (step, agent).

    Marsaglia polar method; attempt ``t`` consumes counter slots
    ``64*index + 2t`` and ``64*index + 2t + 1``. The attempt budget never
    runs out in practice (rejection chance 0.215 per attempt); if it did,
    the draw deterministically degrades to (0, 0).
    """
    base = pack_ctr(step, agent, index * SLOTS_PER_DRAW)
    for t in range(MAX_ATTEMPTS):
        u = 2.0 * u01(seed, base + 2 * t) - 1.0
        v = 2.0 * u01(seed, base + 2 * t + 1) - 1.0
        s = u * u + v * v
        if 0.0 < s < 1.0:
            f = np.sqrt(-2.0 * np.log(s) / s)
            return u * f, v * f
    return 0.0, 0.0


def draw_unit_vector(seed: int, step: int, agent: int, index: int = 0) -> tuple[float, float]:
    """Uniform random unit vector; same rejection loop as the normal pair."""
    base = pack_ctr(step, agent, index * SLOTS_PER_DRAW)
    for t in range(MAX_ATTEMPTS):
        u = 2.0 * u01(seed, base + 2 * t) - 1.0
        v = 2.0 * u01(seed, base + 2 * t + 1) - 1.0
        s = u * u + v * v
        if 0.0 < s < 1.0:
            r = np.sqrt(s)
            return u / r, v / r
    return 1.0, 0.0


# Vectorised twins used by the pure-numpy backend. They reproduce the
# scalar functions bit for bit (same counters, same arithmetic).

_NP_GOLDEN = np.uint64(GOLDEN)
_NP_MIX_A = np.uint64(MIX_A)
_NP_MIX_B = np.uint64(MIX_B)
_S30, _S27, _S31, _S11 = np.uint64(30), np.uint64(27), np.uint64(31), np.uint64(11)


def u01_block(seed: int, ctrs: np.ndarray) -> np.ndarray:
    """Uniform doubles for an array of counters (uint64)."""
    z = np.uint64(seed) + (ctrs + np.uint64(1)) * _NP_GOLDEN
    z = (z ^ (z >> _S30)) * _NP_MIX_A
    z = (z ^ (z >> _S27)) * _NP_MIX_B
    z = z ^ (z >> _S31)
    return (z >> _S11) * U01_SCALE


def _polar_block(seed: int, step: int, n_agents: int, radial: bool) -> np.ndarray:
    """Polar-method block for agents 0..n-1, draw index 0, at one step."""
    base = np.uint64(pack_ctr(step, 0, 0)) + (
        np.arange(n_agents, dtype=np.uint64) << np.uint64(AGENT_SHIFT)
    )
    out = np.empty((n_agents, 2), dtype=np.float64)
    out[:, 0] = 1.0 if not radial else 0.0
    out[:, 1] = 0.0
    pending = np.arange(n_agents)
    for t in range(MAX_ATTEMPTS):
        if pending.size == 0:
            break
        slot = np.uint64(2 * t)
        u = 2.0 * u01_block(seed, base[pending] + slot) - 1.0
        v = 2.0 * u01_block(seed, base[pending] + slot + np.uint64(1)) - 1.0
        s = u * u + v * v
        ok = (s > 0.0) & (s < 1.0)
        if ok.any():
            idx = pending[ok]
            if radial:
                f = np.sqrt(-2.0 * np.log(s[ok]) / s[ok])
            else:
                f = 1.0 / np.sqrt(s[ok])
            out[idx, 0] = u[ok] * f
            out[idx, 1] = v[ok] * f
        pending = pending[~ok]
    return out


def normal_block(seed: int, step: int, n_agents: int) -> np.ndarray:
    """(n, 2) standard normals, one pair per agent, matching the scalar path."""
    return _polar_block(seed, step, n_agents, radial=True)


def unit_block(seed: int, step: int, n_agents: int) -> np.ndarray:
    """(n, 2) uniform unit vectors, one per agent, matching the scalar path."""
    return _polar_block(seed, step, n_agents, radial=False)


def derive_stream_seed(seed: int, name: str) -> int:
    """Stable 64-bit child seed: first 8 bytes of SHA-256("{seed}:{name}")."""
    digest = hashlib.sha256(f"{seed}:{name}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big", signed=False)


class EpisodeStreams(NamedTuple):
    init: int
    sheep_jitter: int
    shepherd_jitter: int
    actuation: int
    perception: int
    contact: int


def episode_streams(seed: int) -> EpisodeStreams:
    """Derive the six channel seeds an episode consumes."""
    return EpisodeStreams(*(derive_stream_seed(seed, name) for name in CHANNELS))


class RngStream:
    """Sequential view of one counter stream.

    Same seed, same sequence of draws, on every platform. The counter is
    plain state: it advances by one per uniform consumed, so the stream can
    be snapshotted and replayed by recording ``(seed, counter)``.
    """

    def __init__(self, seed: int, counter: int = 0):
        self.seed = seed & MASK64
        self.counter = counter

    def uniform(self) -> float:
        value = u01(self.seed, self.counter)
        self.counter += 1
        return value

    def normal_pair(self) -> tuple[float, float]:
        for _ in range(MAX_ATTEMPTS):
            u = 2.0 * self.uniform() - 1.0
            v = 2.0 * self.uniform() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                f = np.sqrt(-2.0 * np.log(s) / s)
                return u * f, v * f
        return 0.0, 0.0

    def standard_normal(self) -> float:
        return self.normal_pair()[0]

    def uniform_unit_vector(self) -> np.ndarray:
        for _ in range(MAX_ATTEMPTS):
            u = 2.0 * self.uniform() - 1.0
            v = 2.0 * self.uniform() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                r = np.sqrt(s)
                return np.array([u / r, v / r])
        return np.array([1.0, 0.0])
