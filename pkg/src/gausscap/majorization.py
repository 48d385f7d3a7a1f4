"""Majorization predicates and numerical Schur-convexity checks.

Vectors follow the increasing-order convention: for ascending x and y of
equal length d, ``x < y`` (y majorizes x) means every prefix sum of x is at
least the matching prefix sum of y, with equality at j = d.  Under this
convention the water-filling rate f is Schur-convex: more spread-out noise
spectra admit higher rates, which is what makes separable encodings optimal
in the multimode problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .multimode import waterfill

__all__ = [
    "SpectrumVector",
    "majorizes",
    "weakly_majorizes",
    "schur_convexity_check",
    "case_inequality_check",
    "random_majorized_pairs",
    "eigenvalue_sum_majorization_holds",
]

TOL = 1e-10


@dataclass(frozen=True)
class SpectrumVector:
    """Nonnegative vector stored ascending."""

    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError("need a nonempty 1-D vector")
        if np.any(vals < 0.0):
            raise ValueError("entries must be nonnegative")
        vals = np.sort(vals)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)


def _ascending(v) -> NDArray[np.float64]:
    if isinstance(v, SpectrumVector):
        return v.values
    return np.sort(np.asarray(v, dtype=float))


def majorizes(y, x) -> bool:
    """True when y majorizes x (x < y), both taken in ascending order.

    Prefix sums of x must dominate those of y strictly before the end and
    match at the end, all within an absolute tolerance of 1e-10.
    """
    xa, ya = _ascending(x), _ascending(y)
    if xa.size != ya.size:
        raise ValueError("vectors must have equal length")
    cx, cy = np.cumsum(xa), np.cumsum(ya)
    if abs(cx[-1] - cy[-1]) > TOL:
        return False
    return bool(np.all(cx[:-1] >= cy[:-1] - TOL))


def weakly_majorizes(y, x) -> bool:
    """True when y weakly majorizes x: prefix-sum dominance at every length."""
    xa, ya = _ascending(x), _ascending(y)
    if xa.size != ya.size:
        raise ValueError("vectors must have equal length")
    return bool(np.all(np.cumsum(xa) >= np.cumsum(ya) - TOL))


def _waterfill_value_fixed_support(lam: np.ndarray, budget: float) -> float:
    """f over a fully active coordinate set: all lam_j below the water level."""
    k = lam.size
    nu = (budget + lam.sum()) / k
    return float(0.5 * np.sum(np.log2(nu / lam)))


def schur_convexity_check(
    k: int, budget: float, trials: int, seed: int | None = 0
) -> float:
    """Worst signed violation of Schur-convexity of the water-filling rate.

    Over random ascending vectors with every coordinate active (below the
    water level), checks two equivalent criteria for each trial:

    * the analytic sign condition (lam_j - lam_i)(df/dlam_j - df/dlam_i) >= 0
      with df/dlam_j = (1/nu - 1/lam_j) / (2 ln 2);
    * a finite equalizing transfer (move mass from a larger to a smaller
      coordinate, making the vector less spread) must not increase f.

    Returns the largest violation observed; nonpositive values mean every
    check passed with margin.
    """
    if k < 2:
        raise ValueError("need at least two coordinates")
    if budget <= 0.0:
        raise ValueError("budget must be positive")
    rng = np.random.default_rng(seed)
    worst = -math.inf
    eps_frac = 1e-4
    for _ in range(trials):
        while True:
            lam = np.sort(rng.uniform(0.1, 3.0, size=k))
            nu = (budget + lam.sum()) / k
            if lam[-1] < nu * (1.0 - 1e-6):
                break
        # Analytic criterion over all pairs.
        grad = (1.0 / nu - 1.0 / lam) / (2.0 * math.log(2.0))
        prod = (lam[None, :] - lam[:, None]) * (grad[None, :] - grad[:, None])
        worst = max(worst, float(np.max(-prod)))
        # Equalizing transfer between a random pair: spread shrinks, and a
        # Schur-convex f must not increase.
        i, j = sorted(rng.choice(k, size=2, replace=False))
        if lam[j] - lam[i] > 1e-9:
            eps = eps_frac * (lam[j] - lam[i])
            lam2 = lam.copy()
            lam2[i] += eps
            lam2[j] -= eps
            f_before = _waterfill_value_fixed_support(lam, budget)
            f_after = _waterfill_value_fixed_support(lam2, budget)
            worst = max(worst, f_after - f_before)
    return worst


def case_inequality_check(lam, mu, budget: float) -> bool:
    """Water-fill both spectra with one budget; check f(lam) <= f(mu) + 1e-9.

    Requires lam < mu (mu majorizes lam); raises if the precondition fails.
    The active counts k_lam and k_mu may differ in either direction; the
    inequality is claimed to hold in all three regimes.
    """
    lam_a, mu_a = _ascending(lam), _ascending(mu)
    if not majorizes(mu, lam_a):
        raise ValueError("precondition failed: mu must majorize lam")
    f_lam = waterfill(lam_a, budget).mutual_info_bits
    f_mu = waterfill(mu_a, budget).mutual_info_bits
    return f_lam <= f_mu + 1e-9


def random_majorized_pairs(
    n: int, d: int, rng: np.random.Generator, transforms: int = 8
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Batch of pairs (x, y) with x < y, both ascending, shape (n, d) each.

    y is drawn positive; x is obtained from y by a product of random
    T-transforms (convex mixing of one coordinate pair at a time).  Every
    T-transform output is majorized by its input, and the relation is
    transitive, so x = D y < y with D doubly stochastic.
    """
    if d < 2:
        raise ValueError("need dimension at least 2")
    y = rng.uniform(0.1, 4.0, size=(n, d))
    x = y.copy()
    rows = np.arange(n)
    for _ in range(transforms):
        ij = np.array([rng.choice(d, size=2, replace=False) for _ in range(n)])
        t = rng.uniform(0.0, 1.0, size=n)
        a, b = x[rows, ij[:, 0]], x[rows, ij[:, 1]]
        x[rows, ij[:, 0]] = t * a + (1.0 - t) * b
        x[rows, ij[:, 1]] = (1.0 - t) * a + t * b
    return np.sort(x, axis=1), np.sort(y, axis=1)


def eigenvalue_sum_majorization_holds(
    x_mat: np.ndarray, y_mat: np.ndarray
) -> bool:
    """Check eig(X+Y) < eig(X) + eig(Y) (spectra aligned ascending)."""
    ex = np.linalg.eigvalsh(x_mat)
    ey = np.linalg.eigvalsh(y_mat)
    es = np.linalg.eigvalsh(x_mat + y_mat)
    return majorizes(ex + ey, es)
