"""Sweep runners behind the CLI subcommands.

Each runner takes a resolved ExperimentConfig and returns ``(header, rows)``;
rows come out in canonical order (sweep values ascending) so the CSV is
byte-stable.
"""
import csv
import math

import numpy as np

from . import cache_opt, channel, markov_delay, mc_sim


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(header, rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _p(rate, snr_db):
    return channel.success_probability(channel.LinkModel.from_db(rate, snr_db))


def run_delay_curve(cfg):
    header = ["snr1_db", "snr2_db", "n_cached", "delay_slots"]
    p2 = _p(cfg.rate, cfg.snr2_db)
    rows = []
    for snr1 in cfg.snr1_db:
        profile = markov_delay.delay_profile(cfg.file_size, _p(cfg.rate, snr1), p2)
        for n, t in enumerate(profile.delays):
            rows.append((snr1, cfg.snr2_db, n, t))
    return header, rows


def _grid(cfg):
    c = cfg.cell
    return channel.build_cell_grid(c.radius, c.levels, channel.db_to_linear(c.k_db), c.mu)


def _cost_tables(cfg):
    """Yield (snr1_db, gamma, CostTable); the delay vector is shared across gammas."""
    grid = _grid(cfg)
    for snr1 in cfg.snr1_db:
        fronthaul = channel.LinkModel.from_db(cfg.rate, snr1)
        delays = markov_delay.distance_delay_profile(cfg.file_size, grid, cfg.rate, fronthaul)
        for gamma in cfg.gamma:
            pop = channel.zipf_popularity(cfg.num_files, gamma)
            yield snr1, gamma, cache_opt.CostTable.from_delays(pop.probabilities, delays)


def run_sweep_gamma(cfg):
    header = ["snr1_db", "gamma", "t_fractional", "t_whole_file"]
    rows = []
    cap = cfg.capacity
    for snr1, gamma, costs in _cost_tables(cfg):
        frac = cache_opt.optimize_fractional(costs, cap)
        whole = cache_opt.optimize_whole_file(costs, cap)
        rows.append((snr1, gamma, frac.objective, whole.objective))
    return header, rows


def run_allocation(cfg):
    header = ["snr1_db", "gamma", "file", "n_cached", "objective"]
    rows = []
    cap = cfg.capacity
    for snr1, gamma, costs in _cost_tables(cfg):
        alloc = cache_opt.optimize_fractional(costs, cap)
        for f, n in enumerate(alloc.cached, start=1):
            rows.append((snr1, gamma, f, int(n), alloc.objective))
    return header, rows


def run_validate(cfg):
    header = ["snr1_db", "snr2_db", "n_cached", "analytic", "mc_mean", "mc_stderr", "z_score"]
    p2 = _p(cfg.rate, cfg.snr2_db)
    rows = []
    point = 0
    for snr1 in cfg.snr1_db:
        p1 = _p(cfg.rate, snr1)
        profile = markov_delay.delay_profile(cfg.file_size, p1, p2)
        for n in cfg.cached:
            sim = mc_sim.SimConfig(cfg.file_size, n, p1, p2, cfg.runs, (cfg.seed + point) % 2**64)
            res = mc_sim.estimate_delay(sim, workers=cfg.workers)
            analytic = profile.delays[n]
            z = (res.mean_slots - analytic) / res.std_error if res.std_error > 0 else math.nan
            rows.append((snr1, cfg.snr2_db, n, analytic, res.mean_slots, res.std_error, z))
            point += 1
    return header, rows


RUNNERS = {
    "delay-curve": run_delay_curve,
    "sweep-gamma": run_sweep_gamma,
    "allocation": run_allocation,
    "validate": run_validate,
}
