"""Scalar-loop kernels compiled with numba.

Every function here has a vectorized twin in ``_kernels_numpy`` with the
same signature. Arguments are validated by the callers.
"""
import numpy as np

from ._jit import njit

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 1.0 / 9007199254740992.0


@njit(cache=True, nogil=True)
def mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True, nogil=True)
def run_seed(master_seed, run_index):
    return mix64(mix64(np.uint64(master_seed)) ^ np.uint64(run_index))


# The recursions run on the excess over the downlink-only floor,
#   nu[i, j] = (N - j) / p2 + x[i, j],
# for which the constant terms cancel: x = 0 on i + j = N, x[0, j] =
# 1/p1 + x[1, j], and interior x is a convex combination of its successors.
# This keeps x >= 0 and T_n >= N/p2 exact in floating point.


@njit(cache=True, nogil=True)
def _excess_into(file_size, p1, p2, out, prev, cur):
    n = file_size
    for i in range(n + 2):
        prev[i] = 0.0
    out[n] = 0.0
    a = (1.0 - p1) * p2
    b = p1 * (1.0 - p2)
    c = p1 * p2
    q = p1 + a
    inv_p1 = 1.0 / p1
    for s in range(n - 1, -1, -1):
        cur[0] = inv_p1 + prev[1]
        for i in range(1, s + 1):
            cur[i] = (a * cur[i - 1] + b * prev[i + 1] + c * prev[i]) / q
        out[s] = cur[s]
        prev, cur = cur, prev


@njit(cache=True, nogil=True)
def delay_profiles(file_size, p1, p2s):
    """T[m, n] = expected slots from (n, 0) for downlink probability p2s[m]."""
    m = p2s.shape[0]
    out = np.empty((m, file_size + 1))
    prev = np.empty(file_size + 2)
    cur = np.empty(file_size + 2)
    for k in range(m):
        _excess_into(file_size, p1, p2s[k], out[k], prev, cur)
        floor = file_size / p2s[k]
        for n in range(file_size + 1):
            out[k, n] += floor
    return out


@njit(cache=True, nogil=True)
def nu_table(file_size, p1, p2):
    """Full table nu[i, j] over i + j <= N; NaN elsewhere."""
    n = file_size
    x = np.full((n + 1, n + 1), np.nan)
    for i in range(n + 1):
        x[i, n - i] = 0.0
    a = (1.0 - p1) * p2
    b = p1 * (1.0 - p2)
    c = p1 * p2
    q = p1 + a
    inv_p1 = 1.0 / p1
    for s in range(n - 1, -1, -1):
        x[0, s] = inv_p1 + x[1, s]
        for i in range(1, s + 1):
            j = s - i
            x[i, j] = (a * x[i - 1, j + 1] + b * x[i + 1, j] + c * x[i, j + 1]) / q
    for j in range(n + 1):
        floor = (n - j) / p2
        for i in range(n + 1 - j):
            x[i, j] += floor
    return x


@njit(cache=True, nogil=True)
def simulate_runs(file_size, cached, p1, p2, master_seed, start, stop):
    """Slot counts for runs start..stop-1.

    Each slot consumes two uniforms from the run's stream, fronthaul first,
    whether or not the link is active.
    """
    out = np.empty(stop - start, dtype=np.int64)
    for r in range(start, stop):
        state = run_seed(master_seed, r)
        i = cached
        j = 0
        slots = 0
        while j < file_size:
            state += GOLDEN
            u1 = (mix64(state) >> _S11) * _INV53
            state += GOLDEN
            u2 = (mix64(state) >> _S11) * _INV53
            slots += 1
            got = i + j < file_size and u1 < p1
            if i > 0 and u2 < p2:
                i -= 1
                j += 1
            if got:
                i += 1
        out[r - start] = slots
    return out


@njit(cache=True, nogil=True)
def mcknap(costs, capacity):
    """Exact multiple-choice knapsack: one n per row, sum of n <= capacity.

    Returns the chosen column per row. Among optimal allocations the one
    giving more packets to earlier rows wins.
    """
    nf, width = costs.shape
    nmax = width - 1
    best = np.zeros((nf + 1, capacity + 1))
    for f in range(nf - 1, -1, -1):
        for c in range(capacity + 1):
            top = min(nmax, c)
            v = costs[f, 0] + best[f + 1, c]
            for n in range(1, top + 1):
                t = costs[f, n] + best[f + 1, c - n]
                if t < v:
                    v = t
            best[f, c] = v
    alloc = np.zeros(nf, dtype=np.int64)
    c = capacity
    for f in range(nf):
        target = best[f, c]
        for n in range(min(nmax, c), -1, -1):
            if costs[f, n] + best[f + 1, c - n] == target:
                alloc[f] = n
                c -= n
                break
    return alloc
