import math

import numpy as np
import pytest

from harqcache import markov_delay, mc_sim
from harqcache.errors import InvalidParameterError
from harqcache.mc_sim import SimConfig

P_10DB = math.exp(-0.15)


def test_full_cache_near_perfect_downlink():
    cfg = SimConfig(7, 7, 0.5, 1 - 1e-12, runs=50, master_seed=3)
    assert all(mc_sim.simulate_delivery(cfg, r) == 7 for r in range(50))


def test_single_packet_mean():
    p1, p2 = 0.4, 0.7
    res = mc_sim.estimate_delay(SimConfig(1, 0, p1, p2, runs=100_000, master_seed=11))
    assert abs(res.mean_slots - (1 / p1 + 1 / p2)) <= 4 * res.std_error


def test_floor_anchor_full_cache():
    res = mc_sim.estimate_delay(SimConfig(20, 20, 0.5, P_10DB, runs=100_000, master_seed=5))
    assert abs(res.mean_slots - 20 / P_10DB) <= 4 * res.std_error
    assert abs(res.mean_slots - 23.236684854565662) <= 4 * res.std_error


def test_full_cache_negative_binomial_moments():
    n, p2, runs = 20, 0.55, 200_000
    slots = mc_sim.simulate_all(SimConfig(n, n, 0.3, p2, runs=runs, master_seed=99)).astype(float)
    mean, var = slots.mean(), slots.var(ddof=1)
    se_mean = math.sqrt(var / runs)
    se_var = math.sqrt((np.mean((slots - mean) ** 4) - var**2) / runs)
    assert abs(mean - n / p2) <= 4 * se_mean
    assert abs(var - n * (1 - p2) / p2**2) <= 4 * se_var


def test_single_run_is_degenerate():
    res = mc_sim.estimate_delay(SimConfig(4, 1, 0.5, 0.5, runs=1, master_seed=1))
    assert res.degenerate
    assert res.std_error == 0.0
    assert res.runs == 1
    assert res.min_slots == res.max_slots == res.mean_slots


def test_same_seed_same_result():
    cfg = SimConfig(10, 3, 0.35, 0.6, runs=40_000, master_seed=2**63 + 17)
    assert mc_sim.estimate_delay(cfg) == mc_sim.estimate_delay(cfg)
    other = SimConfig(10, 3, 0.35, 0.6, runs=40_000, master_seed=2**63 + 18)
    assert mc_sim.estimate_delay(cfg) != mc_sim.estimate_delay(other)


def test_runs_are_independent_of_chunking_and_workers():
    cfg = SimConfig(6, 2, 0.45, 0.5, runs=3 * mc_sim.CHUNK + 123, master_seed=42)
    serial = mc_sim.simulate_all(cfg, workers=1)
    threaded = mc_sim.simulate_all(cfg, workers=4)
    np.testing.assert_array_equal(serial, threaded)
    picks = [0, 1, mc_sim.CHUNK, cfg.runs - 1]
    assert [mc_sim.simulate_delivery(cfg, r) for r in picks] == serial[picks].tolist()


@pytest.mark.parametrize("n, cached, p1, p2", [
    (5, 0, 0.3, 0.8), (5, 2, 0.8, 0.3), (12, 6, 0.5, 0.5), (12, 0, 0.9, 0.9),
])
def test_lower_bounds(n, cached, p1, p2):
    slots = mc_sim.simulate_all(SimConfig(n, cached, p1, p2, runs=20_000, master_seed=8))
    assert slots.min() >= n
    assert slots.min() >= n - cached
    if cached < n:
        # the last fetched packet needs one more slot on the downlink
        assert slots.min() >= n - cached + 1


def test_agreement_over_seeded_repetitions():
    n, cached, p1, p2 = 5, 2, 0.35, 0.55
    target = markov_delay.delay_profile(n, p1, p2).delays[cached]
    hits = 0
    for seed in range(100):
        res = mc_sim.estimate_delay(SimConfig(n, cached, p1, p2, runs=2_000, master_seed=seed))
        hits += abs(res.mean_slots - target) <= 4 * res.std_error
    assert hits >= 99


@pytest.mark.parametrize("kwargs", [
    dict(file_size=0, cached=0), dict(cached=6), dict(cached=-1), dict(p1=0.0), dict(p2=1.0),
    dict(runs=0), dict(master_seed=-1), dict(master_seed=2**64),
])
def test_invalid_config(kwargs):
    base = dict(file_size=5, cached=1, p1=0.5, p2=0.5, runs=10, master_seed=0)
    base.update(kwargs)
    with pytest.raises(InvalidParameterError):
        SimConfig(**base)


def test_run_index_range():
    cfg = SimConfig(5, 1, 0.5, 0.5, runs=10)
    with pytest.raises(InvalidParameterError):
        mc_sim.simulate_delivery(cfg, 10)
