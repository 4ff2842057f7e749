"""Monte Carlo simulation of HARQ Type-I file delivery over fronthaul + downlink.

Each slot draws one uniform per link and compares it with the link's success
probability; fading gains are never sampled. Run ``r`` uses its own
counter-based stream::

    seed_r = mix64(mix64(master_seed) XOR r)
    u_t    = (mix64(seed_r + t * 0x9E3779B97F4A7C15) >> 11) * 2**-53,  t = 1, 2, ...

where ``mix64`` is the SplitMix64 finalizer. Slot ``s`` (1-based) uses
``u_{2s-1}`` for the fronthaul and ``u_{2s}`` for the downlink. Runs are
therefore reproducible individually, independent of chunking, ordering or
thread count.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import InvalidParameterError

CHUNK = 1 << 14


@dataclass(frozen=True)
class SimConfig:
    file_size: int
    cached: int
    p1: float
    p2: float
    runs: int
    master_seed: int = 0

    def __post_init__(self):
        for name in ("file_size", "cached", "runs", "master_seed"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise InvalidParameterError(f"{name} must be an integer, got {v!r}")
        if self.file_size < 1:
            raise InvalidParameterError("file_size must be >= 1")
        if not 0 <= self.cached <= self.file_size:
            raise InvalidParameterError(f"cached must lie in 0..{self.file_size}")
        if self.runs < 1:
            raise InvalidParameterError("runs must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise InvalidParameterError("master_seed must be an unsigned 64-bit integer")
        for name in ("p1", "p2"):
            p = getattr(self, name)
            if not (isinstance(p, (int, float, np.floating)) and 0.0 < p < 1.0):
                raise InvalidParameterError(f"{name} must lie strictly inside (0, 1), got {p!r}")


@dataclass(frozen=True)
class SimResult:
    mean_slots: float
    std_error: float
    runs: int
    min_slots: int
    max_slots: int
    variance: float
    degenerate: bool = False


def _chunk(config, start, stop):
    return kernels.simulate_runs(
        int(config.file_size), int(config.cached), float(config.p1), float(config.p2),
        np.uint64(config.master_seed), int(start), int(stop),
    )


def simulate_delivery(config, run_index):
    """Number of slots until the user holds all N packets, for one run."""
    if not isinstance(config, SimConfig):
        raise InvalidParameterError("config must be a SimConfig")
    if not 0 <= run_index < config.runs:
        raise InvalidParameterError(f"run_index must lie in 0..{config.runs - 1}")
    return int(_chunk(config, run_index, run_index + 1)[0])


def simulate_all(config, workers=1):
    """Slot counts of every run, in run-index order."""
    if not isinstance(config, SimConfig):
        raise InvalidParameterError("config must be a SimConfig")
    bounds = [(s, min(s + CHUNK, config.runs)) for s in range(0, config.runs, CHUNK)]
    if workers <= 1 or len(bounds) == 1:
        parts = [_chunk(config, a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: _chunk(config, *ab), bounds))
    return np.concatenate(parts)


def summarize(slots):
    slots = np.asarray(slots)
    n = slots.size
    mean = float(slots.mean())
    if n == 1:
        return SimResult(mean, 0.0, 1, int(slots[0]), int(slots[0]), 0.0, degenerate=True)
    var = float(slots.var(ddof=1))
    return SimResult(mean, math.sqrt(var / n), n, int(slots.min()), int(slots.max()), var)


def estimate_delay(config, workers=1):
    return summarize(simulate_all(config, workers=workers))
