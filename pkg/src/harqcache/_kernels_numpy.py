"""Vectorized numpy twins of the kernels in ``_kernels_numba``.

Used when numba is unavailable or ``HARQCACHE_BACKEND=numpy``.
"""
import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_INV53 = 1.0 / 9007199254740992.0


def mix64(z):
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def run_seed(master_seed, run_index):
    return mix64(mix64(np.uint64(master_seed)) ^ np.asarray(run_index, dtype=np.uint64))


def delay_profiles(file_size, p1, p2s):
    # excess-over-floor form, see _kernels_numba
    n = file_size
    p2 = np.asarray(p2s, dtype=np.float64)
    m = p2.shape[0]
    out = np.empty((m, n + 1))
    prev = np.zeros((m, n + 2))
    cur = np.empty_like(prev)
    out[:, n] = 0.0
    a = (1.0 - p1) * p2
    b = p1 * (1.0 - p2)
    c = p1 * p2
    q = p1 + a
    inv_p1 = 1.0 / p1
    for s in range(n - 1, -1, -1):
        cur[:, 0] = inv_p1 + prev[:, 1]
        # successors on level s+1 vectorize along i
        base = b[:, None] * prev[:, 2:s + 2] + c[:, None] * prev[:, 1:s + 1]
        for i in range(1, s + 1):
            cur[:, i] = (a * cur[:, i - 1] + base[:, i - 1]) / q
        out[:, s] = cur[:, s]
        prev, cur = cur, prev
    return out + (n / p2)[:, None]


def nu_table(file_size, p1, p2):
    n = file_size
    x = np.full((n + 1, n + 1), np.nan)
    idx = np.arange(n + 1)
    x[idx, n - idx] = 0.0
    a = (1.0 - p1) * p2
    b = p1 * (1.0 - p2)
    c = p1 * p2
    q = p1 + a
    inv_p1 = 1.0 / p1
    for s in range(n - 1, -1, -1):
        x[0, s] = inv_p1 + x[1, s]
        ii = np.arange(1, s + 1)
        jj = s - ii
        base = b * x[ii + 1, jj] + c * x[ii, jj + 1]
        for i in range(1, s + 1):
            x[i, s - i] = (a * x[i - 1, s - i + 1] + base[i - 1]) / q
    return x + ((n - idx) / p2)[None, :]


def simulate_runs(file_size, cached, p1, p2, master_seed, start, stop):
    idx = np.arange(start, stop)
    out = np.zeros(idx.size, dtype=np.int64)
    state = run_seed(master_seed, idx)
    i = np.full(idx.size, cached, dtype=np.int64)
    j = np.zeros(idx.size, dtype=np.int64)
    live = np.arange(idx.size)
    slots = 0
    while live.size:
        slots += 1
        with np.errstate(over="ignore"):
            state = state + GOLDEN
            u1 = (mix64(state) >> np.uint64(11)) * _INV53
            state = state + GOLDEN
            u2 = (mix64(state) >> np.uint64(11)) * _INV53
        got = (i + j < file_size) & (u1 < p1)
        sent = (i > 0) & (u2 < p2)
        i = i - sent + got
        j = j + sent
        done = j >= file_size
        if done.any():
            out[live[done]] = slots
            keep = ~done
            live, state, i, j = live[keep], state[keep], i[keep], j[keep]
    return out


def mcknap(costs, capacity):
    nf, width = costs.shape
    nmax = width - 1
    best = np.zeros((nf + 1, capacity + 1))
    cols = np.arange(capacity + 1)[:, None] - np.arange(width)[None, :]
    feasible = cols >= 0
    cols = np.where(feasible, cols, 0)
    for f in range(nf - 1, -1, -1):
        cand = np.where(feasible, costs[f][None, :] + best[f + 1][cols], np.inf)
        best[f] = cand.min(axis=1)
    alloc = np.zeros(nf, dtype=np.int64)
    c = capacity
    for f in range(nf):
        top = min(nmax, c)
        cand = costs[f, :top + 1] + best[f + 1, c - np.arange(top + 1)]
        hit = np.flatnonzero(cand == best[f, c])
        alloc[f] = hit[-1]
        c -= alloc[f]
    return alloc
