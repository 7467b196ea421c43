"""Backend selection: numba-jitted kernels or the pure-numpy fallback.

The default backend is "numba" when numba imports cleanly, otherwise
"numpy". Set the environment variable SHEPHERDING_BACKEND to "numpy" or
"numba" to override. Both backends are deterministic and consume identical
random draws; they agree per step to floating-point roundoff (not bit for
bit, because vectorized reductions sum in a different order).
"""

from __future__ import annotations

import os
import warnings

BACKEND_ENV = "SHEPHERDING_BACKEND"

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency normally
    HAS_NUMBA = False


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if HAS_NUMBA else ("numpy",)


def default_backend() -> str:
    env = os.environ.get(BACKEND_ENV, "").strip().lower()
    if env:
        return resolve_backend(env)
    return "numba" if HAS_NUMBA else "numpy"


def resolve_backend(name: str | None) -> str:
    if name is None:
        return default_backend()
    name = name.strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}; expected 'numba' or 'numpy'")
    if name == "numba" and not HAS_NUMBA:
        warnings.warn("numba unavailable; falling back to the numpy backend")
        return "numpy"
    return name
