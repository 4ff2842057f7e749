"""Fractional edge caching over HARQ Type-I fronthaul and downlink links.

Exact expected delivery delay from an absorbing Markov chain, optimal
per-file cache allocation, and a seeded Monte Carlo cross-check.
"""
from ._backend import BACKEND
from .cache_opt import (
    CacheAllocation,
    CostTable,
    average_delay,
    brute_force_optimize,
    build_cost_table,
    optimize_fractional,
    optimize_whole_file,
)
from .channel import (
    CellGrid,
    LinkModel,
    Popularity,
    build_cell_grid,
    db_to_linear,
    linear_to_db,
    snr_at_distance,
    success_probability,
    zipf_popularity,
)
from .errors import ConfigError, InstanceTooLargeError, InvalidParameterError, InvalidStateError
from .markov_delay import (
    ChainState,
    DelayProfile,
    ExpectedStepsTable,
    TransitionProbs,
    delay_profile,
    distance_averaged_delay,
    distance_delay_profile,
    expected_steps_table,
    transition_probs,
)
from .mc_sim import SimConfig, SimResult, estimate_delay, simulate_delivery

__version__ = "0.1.0"
