"""Expected delivery delay of an N-packet file over the two-hop pipeline.

State (i, j): i packets sit at the base station waiting for the downlink,
j packets have reached the user. A request starts at (n, 0) when n packets
are cached and is absorbed at (0, N). Each slot the fronthaul tries to bring
one more packet (only while i + j < N) and the downlink tries to deliver
one (only while i > 0); a packet fetched in a slot can go out on the
downlink from the next slot on.
"""
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .channel import CellGrid, LinkModel, success_probabilities, success_probability
from .errors import InvalidParameterError, InvalidStateError


@dataclass(frozen=True)
class ChainState:
    at_bs: int
    delivered: int

    def admissible(self, file_size, cached):
        return cached <= self.at_bs + self.delivered <= file_size


@dataclass(frozen=True)
class TransitionProbs:
    stay: float
    downlink_only: float
    fronthaul_only: float
    both: float

    def as_tuple(self):
        return (self.stay, self.downlink_only, self.fronthaul_only, self.both)


@dataclass(frozen=True)
class ExpectedStepsTable:
    """nu[i, j] = expected remaining slots from state (i, j); NaN where i + j > N."""

    nu: np.ndarray
    file_size: int
    p1: float
    p2: float

    def __getitem__(self, state):
        i, j = state
        if i < 0 or j < 0 or i + j > self.file_size:
            raise InvalidStateError(f"state {state} outside 0 <= i + j <= {self.file_size}")
        return float(self.nu[i, j])


@dataclass(frozen=True)
class DelayProfile:
    """delays[n] = expected slots to deliver the file when n packets are cached."""

    delays: np.ndarray
    file_size: int
    p1: float
    p2: float

    @property
    def floor(self):
        return self.file_size / self.p2


def _check_file_size(file_size):
    if isinstance(file_size, bool) or not isinstance(file_size, (int, np.integer)) or file_size < 1:
        raise InvalidParameterError(f"file_size must be an integer >= 1, got {file_size!r}")


def _check_prob(name, p):
    if not (isinstance(p, (int, float, np.floating)) and 0.0 < p < 1.0):
        raise InvalidParameterError(f"{name} must lie strictly inside (0, 1), got {p!r}")


def transition_probs(i, j, file_size, p1, p2):
    _check_file_size(file_size)
    _check_prob("p1", p1)
    _check_prob("p2", p2)
    if i < 0 or j < 0 or i + j > file_size:
        raise InvalidStateError(f"state ({i}, {j}) outside 0 <= i + j <= {file_size}")
    if (i, j) == (0, file_size):
        raise InvalidStateError("the sink (0, N) has no outgoing transitions")
    if i + j == file_size:
        return TransitionProbs(1.0 - p2, p2, 0.0, 0.0)
    if i == 0:
        return TransitionProbs(1.0 - p1, 0.0, p1, 0.0)
    return TransitionProbs((1.0 - p1) * (1.0 - p2), (1.0 - p1) * p2, p1 * (1.0 - p2), p1 * p2)


def expected_steps_table(file_size, p1, p2):
    _check_file_size(file_size)
    _check_prob("p1", p1)
    _check_prob("p2", p2)
    nu = kernels.nu_table(int(file_size), float(p1), float(p2))
    nu.setflags(write=False)
    return ExpectedStepsTable(nu, int(file_size), float(p1), float(p2))


def delay_profile(file_size, p1, p2):
    # ν does not depend on the cached count, so one pass gives every T_n
    _check_file_size(file_size)
    _check_prob("p1", p1)
    _check_prob("p2", p2)
    delays = kernels.delay_profiles(int(file_size), float(p1), np.array([float(p2)]))[0]
    delays.setflags(write=False)
    return DelayProfile(delays, int(file_size), float(p1), float(p2))


def distance_delay_profile(file_size, grid, downlink_rate, fronthaul):
    """D[n] = sum_i v_i T_n(SNR(d_i)) for n = 0..N, one kernel call for all distances."""
    _check_file_size(file_size)
    if not isinstance(grid, CellGrid):
        raise InvalidParameterError("grid must be a CellGrid")
    if not isinstance(fronthaul, LinkModel):
        raise InvalidParameterError("fronthaul must be a LinkModel")
    p1 = success_probability(fronthaul)
    p2s = success_probabilities(downlink_rate, grid.snrs)
    _check_prob("p1", p1)
    if not np.all((p2s > 0.0) & (p2s < 1.0)):
        raise InvalidParameterError("downlink success probability left (0, 1) at some distance")
    profiles = kernels.delay_profiles(int(file_size), p1, p2s)
    return grid.weights @ profiles


def distance_averaged_delay(cached, grid, downlink_rate, fronthaul, file_size):
    if isinstance(cached, bool) or not isinstance(cached, (int, np.integer)) or not 0 <= cached <= file_size:
        raise InvalidParameterError(f"cached must be an integer in 0..{file_size}, got {cached!r}")
    return float(distance_delay_profile(file_size, grid, downlink_rate, fronthaul)[cached])

