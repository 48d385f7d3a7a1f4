"""Brute-force simplex-grid maximizer used to cross-check water-filling.

Maximizes f(p) = 1/2 sum log2(1 + p_j / lam_j) over the simplex
sum p_j = budget, p >= 0, with no knowledge of the water-filling solution:
a composition grid over the simplex is contracted around the running
incumbent pattern-search style (the scale halves only when no candidate at
the current scale improves, and grows while candidates keep improving),
plus "snap" candidates that zero out one coordinate at a time so
allocations on the simplex boundary stay reachable as the contracted grid
pulls away from it.  A cyclic pairwise-exchange polish follows: for each
coordinate pair the optimal transfer at fixed total is the closed-form
stationary point of a two-variable concave function, clipped to the box.
The objective is concave, so both phases can only approach the global
maximum, and the polish tightens the grid incumbent to ~1e-12.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Grid fineness per dimension: coarser grids for higher d keep the
# composition count (and memory) bounded.
_K_BY_DIM = {1: 1, 2: 32, 3: 18, 4: 14, 5: 12, 6: 10, 7: 9, 8: 8}


@lru_cache(maxsize=None)
def composition_grid(d: int, k: int) -> np.ndarray:
    """All length-d tuples of nonnegative ints summing to k, as (P, d) floats."""
    if d == 1:
        return np.array([[float(k)]])
    rows = []
    for first in range(k + 1):
        rest = composition_grid(d - 1, k - first)
        block = np.empty((rest.shape[0], d))
        block[:, 0] = first
        block[:, 1:] = rest
        rows.append(block)
    out = np.vstack(rows)
    out.flags.writeable = False
    return out


def _objective(p: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """f along the last axis; p and lam broadcast."""
    return 0.5 * np.sum(np.log2(1.0 + p / lam), axis=-1)


def oracle_batch(
    lams: np.ndarray,
    budgets: np.ndarray,
    max_iters: int = 30,
    chunk: int = 64,
) -> np.ndarray:
    """Best objective found per instance; lams (n, d), budgets (n,)."""
    lams = np.asarray(lams, dtype=float)
    budgets = np.asarray(budgets, dtype=float)
    n, d = lams.shape
    out = np.empty((n, d))
    for start in range(0, n, chunk):
        sl = slice(start, min(start + chunk, n))
        out[sl] = _oracle_chunk(lams[sl], budgets[sl], max_iters)
    _pairwise_polish(out, lams)
    return _objective(out, lams)


def _pairwise_polish(p: np.ndarray, lams: np.ndarray, sweeps: int = 400) -> np.ndarray:
    """Cyclic optimal two-coordinate transfers; returns improved p in place.

    For a pair (i, j) with combined mass s, the one-dimensional maximizer is
    p_i = (s + lam_j - lam_i) / 2 clipped to [0, s]; iterating over all pairs
    is block coordinate ascent on a smooth concave function over the simplex,
    whose exchange directions span the constraint tangent space, so it
    converges to the global maximum.
    """
    d = p.shape[1]
    for _ in range(sweeps):
        delta = 0.0
        for i in range(d - 1):
            for j in range(i + 1, d):
                s = p[:, i] + p[:, j]
                pi = np.clip(0.5 * (s + lams[:, j] - lams[:, i]), 0.0, s)
                delta = max(delta, float(np.max(np.abs(pi - p[:, i]), initial=0.0)))
                p[:, i] = pi
                p[:, j] = s - pi
        if delta < 1e-13:
            break
    return p


def _oracle_chunk(lams: np.ndarray, budgets: np.ndarray, max_iters: int) -> np.ndarray:
    """Grid-phase incumbent allocations (power units), shape (n, d)."""
    n, d = lams.shape
    if d == 1:
        return budgets[:, None].copy()
    grid = composition_grid(d, _K_BY_DIM[d]) / _K_BY_DIM[d]  # (P, d), rows sum to 1
    # Work in the p/lam coordinates so the inner loop avoids divisions.
    scaled = grid[None, :, :] * (budgets[:, None] / lams)[:, None, :]
    centers = (budgets[:, None] / d) / lams
    best_val = 0.5 * np.sum(np.log2(1.0 + centers), axis=-1)
    frac = np.ones(n)
    live = np.arange(n)  # instances still refining
    out = np.empty((n, d))
    for _ in range(max_iters):
        cand = centers[:, None, :] * (1.0 - frac)[:, None, None] + (
            frac[:, None, None] * scaled
        )
        vals = 0.5 * np.sum(np.log2(1.0 + cand), axis=-1)
        pick = np.argmax(vals, axis=1)
        val = np.take_along_axis(vals, pick[:, None], axis=1)[:, 0]
        thresh = best_val + 1e-13 * np.maximum(np.abs(best_val), 1.0)
        improved = val > thresh
        centers[improved] = np.take_along_axis(
            cand, pick[:, None, None], axis=1
        )[:, 0, :][improved]
        best_val = np.maximum(best_val, val)
        # Snap candidates: zero one coordinate, spread its mass over the rest
        # (mass accounting in p/lam coordinates uses per-column weights).
        p_centers = centers * lams  # back to power units
        totals = p_centers.sum(axis=1)
        for j in range(d):
            cj = p_centers[:, j]
            ok = (cj > 0.0) & (cj < totals)
            if not np.any(ok):
                continue
            snapped = p_centers.copy()
            snapped[:, j] = 0.0
            snapped *= (totals / np.maximum(totals - cj, 1e-300))[:, None]
            snapped_u = snapped / lams
            sval = 0.5 * np.sum(np.log2(1.0 + snapped_u), axis=-1)
            take = ok & (sval > best_val + 1e-15)
            centers[take] = snapped_u[take]
            p_centers[take] = snapped[take]
            improved |= take
            best_val = np.maximum(best_val, np.where(ok, sval, -np.inf))
        # Trust-region schedule: grow the scale while moving, halve when stuck.
        frac = np.where(improved, np.minimum(1.6 * frac, 1.0), 0.5 * frac)
        done = frac < 2.0**-20
        if np.any(done):
            out[live[done]] = (centers * lams)[done]
            keep = ~done
            if not np.any(keep):
                return out
            live = live[keep]
            centers, best_val, frac = centers[keep], best_val[keep], frac[keep]
            scaled, lams = scaled[keep], lams[keep]
    out[live] = centers * lams
    return out


def random_feasible_values(
    lam: np.ndarray, budget: float, n_samples: int, rng: np.random.Generator
) -> np.ndarray:
    """Objective at random Dirichlet-distributed feasible allocations."""
    p = rng.dirichlet(np.ones(lam.size), size=n_samples) * budget
    return _objective(p, lam[None, :])
