"""Reference computations that share no code with the package."""
import itertools
import math

import numpy as np


def chain_linear_solve(file_size, p1, p2):
    """Expected slots to absorption for every state, by a dense linear solve.

    Transitions are written out directly from the slot dynamics: fronthaul
    busy iff i + j < N, downlink busy iff i > 0, independent successes.
    """
    n = file_size
    states = [(i, j) for j in range(n + 1) for i in range(n + 1 - j) if (i, j) != (0, n)]
    index = {s: k for k, s in enumerate(states)}
    a = np.eye(len(states))
    rhs = np.ones(len(states))
    for (i, j), row in index.items():
        fh = [(1 - p1, 0), (p1, 1)] if i + j < n else [(1.0, 0)]
        dl = [(1 - p2, 0), (p2, 1)] if i > 0 else [(1.0, 0)]
        for (pf, gf), (pd, gd) in itertools.product(fh, dl):
            nxt = (i + gf - gd, j + gd)
            if nxt in index:
                a[row, index[nxt]] -= pf * pd
    sol = np.linalg.solve(a, rhs)
    table = {s: sol[k] for s, k in index.items()}
    table[(0, n)] = 0.0
    return table


def mean_snr_closed_form(radius, levels, k_lin):
    """Weighted mean of K/d_i^2 over d_i = iR/k with weights 2i/(k(k+1))."""
    harmonic = math.fsum(1.0 / i for i in range(1, levels + 1))
    return 2.0 * k_lin * levels / ((levels + 1) * radius**2) * harmonic


def enumerate_allocations(matrix, capacity):
    """Minimum of sum_f w[f, n_f] over all n with sum n <= capacity."""
    w = np.asarray(matrix)
    nf, width = w.shape
    best = math.inf
    for cand in itertools.product(range(width), repeat=nf):
        if sum(cand) <= capacity:
            best = min(best, math.fsum(w[f, c] for f, c in enumerate(cand)))
    return best
