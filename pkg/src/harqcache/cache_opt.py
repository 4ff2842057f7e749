"""Cache allocation: how many packets of each file to keep at the base station.

The average delay is sum_f u_f D[N_f], one column per file subject to
sum_f N_f <= C. That is a multiple-choice knapsack and is solved exactly
by dynamic programming over (file, remaining capacity).
"""
import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .channel import CellGrid, LinkModel, Popularity
from .errors import InstanceTooLargeError, InvalidParameterError
from .markov_delay import distance_delay_profile

BRUTE_FORCE_LIMIT = 10**6


@dataclass(frozen=True)
class CostTable:
    """weighted_cost[f, n]: delay contribution of file f with n cached packets.

    Tables built from the physical model also keep the shared delay vector
    and the popularity vector they were formed from.
    """

    weighted_cost: np.ndarray
    delays: np.ndarray = None
    popularity: np.ndarray = None

    @property
    def num_files(self):
        return self.weighted_cost.shape[0]

    @property
    def file_size(self):
        return self.weighted_cost.shape[1] - 1

    @classmethod
    def from_matrix(cls, matrix):
        w = np.array(matrix, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] < 2:
            raise InvalidParameterError(f"cost matrix must be F x (N+1) with F >= 1, N >= 1; got {w.shape}")
        if not np.all(np.isfinite(w)):
            raise InvalidParameterError("cost matrix entries must be finite")
        w.setflags(write=False)
        return cls(w)

    @classmethod
    def from_delays(cls, popularity, delays):
        u = np.asarray(popularity, dtype=np.float64)
        d = np.asarray(delays, dtype=np.float64)
        w = u[:, None] * d[None, :]
        for a in (u, d, w):
            a.setflags(write=False)
        return cls(w, d, u)


@dataclass(frozen=True)
class CacheAllocation:
    cached: np.ndarray
    capacity: int
    objective: float


def build_cost_table(popularity, grid, downlink_rate, fronthaul, file_size):
    if not isinstance(popularity, Popularity):
        raise InvalidParameterError("popularity must be a Popularity")
    if not isinstance(grid, CellGrid) or not isinstance(fronthaul, LinkModel):
        raise InvalidParameterError("grid must be a CellGrid and fronthaul a LinkModel")
    delays = distance_delay_profile(file_size, grid, downlink_rate, fronthaul)
    return CostTable.from_delays(popularity.probabilities, delays)


def _check_capacity(costs, capacity):
    if isinstance(capacity, bool) or not isinstance(capacity, (int, np.integer)) or capacity < 0:
        raise InvalidParameterError(f"capacity must be an integer >= 0, got {capacity!r}")
    full = costs.num_files * costs.file_size
    if capacity > full:
        warnings.warn(f"capacity {capacity} exceeds F*N = {full}; clamped", RuntimeWarning, stacklevel=3)
        return full
    return int(capacity)


def average_delay(allocation, costs):
    cached = np.asarray(allocation.cached if isinstance(allocation, CacheAllocation) else allocation)
    if cached.shape != (costs.num_files,):
        raise ValueError(f"allocation has shape {cached.shape}, cost table has {costs.num_files} files")
    if np.any(cached < 0) or np.any(cached > costs.file_size):
        raise ValueError(f"cached counts must lie in 0..{costs.file_size}")
    w = costs.weighted_cost
    total = 0.0
    for f in range(costs.num_files):
        total += w[f, cached[f]]
    return float(total)


def _allocation(cached, capacity, costs):
    cached = np.asarray(cached, dtype=np.int64)
    cached.setflags(write=False)
    return CacheAllocation(cached, capacity, average_delay(cached, costs))


def optimize_fractional(costs, capacity):
    """Exact optimum over N_f in 0..N with sum N_f <= capacity.

    Ties go to the allocation that gives more packets to earlier
    (more popular) files.
    """
    cap = _check_capacity(costs, capacity)
    alloc = kernels.mcknap(np.ascontiguousarray(costs.weighted_cost), cap)
    return _allocation(alloc, cap, costs)


def optimize_whole_file(costs, capacity):
    """Best allocation when each file is either fully cached or not at all.

    Picks the floor(C/N) files whose full caching saves the most; for a
    physical cost table that is the most popular files, lowest index first
    on ties.
    """
    cap = _check_capacity(costs, capacity)
    n = costs.file_size
    gain = costs.weighted_cost[:, 0] - costs.weighted_cost[:, n]
    order = np.argsort(-gain, kind="stable")
    cached = np.zeros(costs.num_files, dtype=np.int64)
    top = order[: min(cap // n, costs.num_files)]
    cached[top[gain[top] > 0]] = n
    return _allocation(cached, cap, costs)


def brute_force_optimize(costs, capacity):
    """Exhaustive search; ties go to the lexicographically smallest allocation."""
    cap = _check_capacity(costs, capacity)
    nf, n = costs.num_files, costs.file_size
    if (n + 1) ** nf > BRUTE_FORCE_LIMIT:
        raise InstanceTooLargeError(f"(N+1)^F = {(n + 1) ** nf} exceeds {BRUTE_FORCE_LIMIT}")
    best, best_val = None, np.inf
    for cand in itertools.product(range(n + 1), repeat=nf):
        if sum(cand) > cap:
            continue
        val = average_delay(cand, costs)
        if val < best_val:
            best, best_val = cand, val
    return _allocation(best, cap, costs)
