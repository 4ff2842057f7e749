import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harqcache import cache_opt, channel
from harqcache.cache_opt import CostTable
from harqcache.errors import InstanceTooLargeError
from oracles import enumerate_allocations

FIG_GRID = dict(radius=100.0, levels=1000, path_loss_k=1e4, path_loss_mu=2.0)


@pytest.fixture(scope="module")
def fig_delays():
    """Distance-averaged D_n for the cell figure parameters at SNR1 = 0 dB."""
    from harqcache.markov_delay import distance_delay_profile
    grid = channel.build_cell_grid(**FIG_GRID)
    return distance_delay_profile(20, grid, 2.0, channel.LinkModel.from_db(2.0, 0.0))


def physical_table(delays, num_files, gamma):
    return CostTable.from_delays(channel.zipf_popularity(num_files, gamma).probabilities, delays)


def test_build_cost_table_rows():
    grid = channel.build_cell_grid(100.0, 20, 1e4, 2.0)
    fh = channel.LinkModel.from_db(2.0, 0.0)
    one = cache_opt.build_cost_table(channel.zipf_popularity(1, 0.0), grid, 2.0, fh, 6)
    np.testing.assert_array_equal(one.weighted_cost[0], one.delays)
    flat = cache_opt.build_cost_table(channel.zipf_popularity(5, 0.0), grid, 2.0, fh, 6)
    np.testing.assert_allclose(flat.weighted_cost, np.tile(one.delays / 5, (5, 1)), rtol=1e-15)
    skew = cache_opt.build_cost_table(channel.zipf_popularity(2, 1.0), grid, 2.0, fh, 6)
    np.testing.assert_allclose(skew.weighted_cost[0], 2 / 3 * one.delays, rtol=1e-15)
    np.testing.assert_allclose(skew.weighted_cost[1], 1 / 3 * one.delays, rtol=1e-15)
    assert np.all(np.diff(skew.weighted_cost, axis=1) <= 0)
    assert np.all(skew.weighted_cost > 0)


def test_average_delay():
    d = np.array([9.0, 6.0, 4.0])
    table = CostTable.from_delays([2 / 3, 1 / 3], d)
    assert cache_opt.average_delay([2, 2], table) == pytest.approx(4.0)
    assert cache_opt.average_delay([0, 0], table) == pytest.approx(9.0)
    assert cache_opt.average_delay([1, 2], table) == pytest.approx(2 / 3 * 6 + 1 / 3 * 4)
    with pytest.raises(ValueError):
        cache_opt.average_delay([1, 2, 0], table)


def test_empty_and_full_cache(fig_delays):
    table = physical_table(fig_delays, 5, 0.8)
    empty = cache_opt.optimize_fractional(table, 0)
    assert empty.cached.tolist() == [0] * 5
    assert empty.objective == pytest.approx(fig_delays[0], rel=1e-14)
    full = cache_opt.optimize_fractional(table, 100)
    assert full.cached.tolist() == [20] * 5
    assert full.objective == pytest.approx(fig_delays[20], rel=1e-14)


def test_capacity_beyond_library_is_clamped(fig_delays):
    table = physical_table(fig_delays, 5, 0.8)
    with pytest.warns(RuntimeWarning, match="clamped"):
        alloc = cache_opt.optimize_fractional(table, 1000)
    assert alloc.capacity == 100
    assert alloc.cached.tolist() == [20] * 5


def test_equal_split_optimal_at_uniform_popularity(fig_delays):
    table = physical_table(fig_delays, 5, 0.0)
    alloc = cache_opt.optimize_fractional(table, 60)
    split = cache_opt.average_delay([12] * 5, table)
    assert abs(alloc.objective - split) <= 1e-9
    assert alloc.cached.tolist() == [12] * 5


def test_whole_file_examples(fig_delays):
    table = physical_table(fig_delays, 5, 1.5)
    assert cache_opt.optimize_whole_file(table, 60).cached.tolist() == [20, 20, 20, 0, 0]
    assert cache_opt.optimize_whole_file(table, 19).cached.tolist() == [0] * 5
    flat = physical_table(fig_delays, 5, 0.0)
    assert cache_opt.optimize_whole_file(flat, 45).cached.tolist() == [20, 20, 0, 0, 0]


@pytest.mark.filterwarnings("ignore:capacity")
def test_brute_force_tiny_examples():
    table = CostTable.from_delays([1.0], [5.0, 3.0, 2.0, 1.5])
    for c in range(6):
        assert cache_opt.brute_force_optimize(table, c).cached.tolist() == [min(c, 3)]
    tie = CostTable.from_matrix(np.array([[5, 3, 1], [5, 3, 1]]) * 0.5)
    res = cache_opt.brute_force_optimize(tie, 2)
    assert res.objective == 3.0
    assert res.cached.tolist() == [0, 2]


def test_brute_force_guard():
    table = CostTable.from_matrix(np.ones((6, 11)))
    with pytest.raises(InstanceTooLargeError):
        cache_opt.brute_force_optimize(table, 10)


def test_fixed_random_instance_against_enumeration():
    rng = np.random.default_rng(2024)
    w = rng.random((3, 5)) * 10
    table = CostTable.from_matrix(w)
    best = enumerate_allocations(w, 6)
    assert cache_opt.optimize_fractional(table, 6).objective == pytest.approx(best, rel=1e-12)
    assert cache_opt.brute_force_optimize(table, 6).objective == pytest.approx(best, rel=1e-12)


matrices = st.integers(1, 4).flatmap(
    lambda f: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.floats(0.0, 100.0), min_size=f * (n + 1), max_size=f * (n + 1)).map(
            lambda xs: np.array(xs).reshape(f, n + 1))))


@settings(max_examples=200, deadline=None)
@given(matrices, st.data())
def test_dp_equals_brute_force(w, data):
    table = CostTable.from_matrix(w)
    cap = data.draw(st.integers(0, table.num_files * table.file_size))
    dp = cache_opt.optimize_fractional(table, cap)
    bf = cache_opt.brute_force_optimize(table, cap)
    assert dp.objective == pytest.approx(bf.objective, rel=1e-12, abs=1e-12)
    assert dp.cached.sum() <= cap
    assert np.all((0 <= dp.cached) & (dp.cached <= table.file_size))
    assert dp.objective == cache_opt.average_delay(dp.cached, table)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 4.0), st.integers(0, 100))
def test_fractional_dominates_whole_file(gamma, cap):
    from harqcache.markov_delay import distance_delay_profile
    grid = channel.build_cell_grid(100.0, 40, 1e4, 2.0)
    d = distance_delay_profile(20, grid, 2.0, channel.LinkModel.from_db(2.0, 3.0))
    table = physical_table(d, 5, gamma)
    frac = cache_opt.optimize_fractional(table, cap)
    whole = cache_opt.optimize_whole_file(table, cap)
    assert frac.objective <= whole.objective + 1e-12
    assert whole.cached.sum() <= cap


def test_more_capacity_never_hurts(fig_delays):
    for gamma in (0.0, 0.7, 2.0):
        table = physical_table(fig_delays, 5, gamma)
        objs = [cache_opt.optimize_fractional(table, c).objective for c in range(0, 101)]
        assert np.all(np.diff(objs) <= 1e-12)


def test_tie_break_prefers_earlier_files():
    table = CostTable.from_matrix(np.array([[5, 3, 1], [5, 3, 1]]) * 0.5)
    assert cache_opt.optimize_fractional(table, 2).cached.tolist() == [2, 0]
