"""Link, popularity and cell-geometry primitives.

All SNRs are linear here; dB only appears at the CLI boundary.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError


def _check_positive(name, value):
    if not (isinstance(value, (int, float, np.integer, np.floating)) and math.isfinite(value) and value > 0):
        raise InvalidParameterError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class LinkModel:
    """One HARQ Type-I link: transmission rate (bit/s/Hz) and average linear SNR."""

    rate: float
    snr: float

    def __post_init__(self):
        _check_positive("rate", self.rate)
        _check_positive("snr", self.snr)

    @classmethod
    def from_db(cls, rate, snr_db):
        return cls(rate, db_to_linear(snr_db))

    @property
    def success_probability(self):
        return success_probability(self)


@dataclass(frozen=True)
class Popularity:
    """Zipf request probabilities, most popular file first."""

    probabilities: np.ndarray
    gamma: float

    @property
    def num_files(self):
        return self.probabilities.shape[0]


@dataclass(frozen=True)
class CellGrid:
    """Discretized user distances in a uniformly populated circular cell."""

    radius: float
    levels: int
    path_loss_k: float
    path_loss_mu: float
    distances: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def snrs(self):
        """Linear downlink SNR at every grid distance."""
        return self.path_loss_k / self.distances ** self.path_loss_mu

    def mean_snr(self):
        return float(np.dot(self.weights, self.snrs))


def success_probability(link):
    """Per-slot success probability exp(-(2**r - 1) / (2 * snr)).

    The factor 2 in the denominator is kept as in the model we reproduce,
    although a unit-power Rayleigh derivation gives exp(-(2**r - 1) / snr).
    """
    if not isinstance(link, LinkModel):
        raise InvalidParameterError("expected a LinkModel")
    p = math.exp(-math.expm1(link.rate * math.log(2.0)) / (2.0 * link.snr))
    if p == 0.0:
        raise InvalidParameterError(f"success probability underflows for rate={link.rate}, snr={link.snr}")
    return p


def success_probabilities(rate, snrs):
    """Vectorized ``success_probability`` over an array of linear SNRs."""
    _check_positive("rate", rate)
    snrs = np.asarray(snrs, dtype=np.float64)
    if not np.all(np.isfinite(snrs) & (snrs > 0)):
        raise InvalidParameterError("all SNRs must be finite and > 0")
    p = np.exp(-math.expm1(rate * math.log(2.0)) / (2.0 * snrs))
    if np.any(p == 0.0):
        raise InvalidParameterError(f"success probability underflows at rate={rate} for some SNR")
    return p


def zipf_popularity(num_files, gamma):
    if isinstance(num_files, bool) or not isinstance(num_files, (int, np.integer)) or num_files < 1:
        raise InvalidParameterError(f"num_files must be an integer >= 1, got {num_files!r}")
    if not math.isfinite(gamma) or gamma < 0:
        raise InvalidParameterError(f"gamma must be finite and >= 0, got {gamma!r}")
    ranks = np.arange(1, int(num_files) + 1, dtype=np.float64)
    raw = ranks ** -float(gamma)
    probs = raw / raw.sum()
    probs.setflags(write=False)
    return Popularity(probs, float(gamma))


def build_cell_grid(radius, levels, path_loss_k, path_loss_mu):
    _check_positive("radius", radius)
    _check_positive("path_loss_k", path_loss_k)
    if isinstance(levels, bool) or not isinstance(levels, (int, np.integer)) or levels < 1:
        raise InvalidParameterError(f"levels must be an integer >= 1, got {levels!r}")
    if not math.isfinite(path_loss_mu) or path_loss_mu < 0:
        raise InvalidParameterError(f"path_loss_mu must be finite and >= 0, got {path_loss_mu!r}")
    k = int(levels)
    i = np.arange(1, k + 1, dtype=np.float64)
    distances = i / k * radius
    distances[-1] = radius
    weights = 2.0 * i / (k * (k + 1.0))
    distances.setflags(write=False)
    weights.setflags(write=False)
    return CellGrid(float(radius), k, float(path_loss_k), float(path_loss_mu), distances, weights)


def snr_at_distance(grid, level):
    """Linear SNR at the ``level``-th distance (1-based)."""
    if isinstance(level, bool) or not isinstance(level, (int, np.integer)) or not 1 <= level <= grid.levels:
        raise IndexError(f"level must be in 1..{grid.levels}, got {level!r}")
    return grid.path_loss_k / grid.distances[level - 1] ** grid.path_loss_mu


def db_to_linear(x_db):
    if not math.isfinite(x_db):
        raise InvalidParameterError(f"dB value must be finite, got {x_db!r}")
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x):
    if not (math.isfinite(x) and x > 0):
        raise InvalidParameterError(f"linear value must be finite and > 0, got {x!r}")
    return 10.0 * math.log10(x)
