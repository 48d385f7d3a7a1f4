"""Square QAM constellations with Gaussian-weighted priors.

A constellation is a centered square lattice of coherent-state amplitudes
with spacing ``delta`` and a prior that decays with radius: prior_i is
proportional to exp(-|alpha_i|^2 / sigma^2). ``sigma = inf`` selects the
uniform prior. Propagation through a loss channel scales amplitudes by
sqrt(eta), which maps (delta, sigma) to (sqrt(eta) delta, sqrt(eta) sigma)
without changing the prior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_VALID_ORDERS = (4, 16, 64)
_PRIOR_TOL = 1e-12
_GEOM_TOL = 1e-9

__all__ = [
    "QamConstellation",
    "build_qam",
    "mean_photon_number",
    "solve_delta_for_energy",
    "propagate",
    "optimize_sigma",
]


def _lattice_axis(order: int, delta: float) -> np.ndarray:
    side = int(round(math.sqrt(order)))
    return delta * (np.arange(side) - (side - 1) / 2.0)


@dataclass(frozen=True)
class QamConstellation:
    """Lattice amplitudes with a radially symmetric prior.

    order 1 is a degenerate single-point alphabet used by receiver
    diagnostics; geometric invariants are only meaningful for order >= 4.
    """

    order: int
    delta: float
    sigma: float
    points: np.ndarray
    prior: np.ndarray

    def __post_init__(self) -> None:
        points = np.array(self.points, dtype=complex)
        prior = np.array(self.prior, dtype=float)
        points.setflags(write=False)
        prior.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "prior", prior)

        if self.order != 1 and self.order not in _VALID_ORDERS:
            raise ValueError("constellation order must be 4, 16, or 64")
        if points.shape != (self.order,):
            raise ValueError("points must be a vector of length order")
        if prior.shape != (self.order,):
            raise ValueError("prior must be a vector of length order")
        if np.any(prior < -_PRIOR_TOL):
            raise ValueError("prior entries must be nonnegative")
        if abs(prior.sum() - 1.0) > _PRIOR_TOL:
            raise ValueError("prior must sum to 1")
        if not (self.sigma > 0.0):
            raise ValueError("sigma must be positive or infinite")
        if math.isinf(self.sigma) and np.any(
            np.abs(prior - 1.0 / self.order) > _PRIOR_TOL
        ):
            raise ValueError("infinite sigma requires the uniform prior")
        if self.order == 1:
            return

        if not (self.delta > 0.0):
            raise ValueError("delta must be positive")
        self._check_lattice(points)
        self._check_rotation_symmetry(points, prior)

    def _check_lattice(self, points: np.ndarray) -> None:
        axis = _lattice_axis(self.order, self.delta)
        atol = _GEOM_TOL * max(1.0, self.delta)
        ix = np.argmin(np.abs(points.real[:, None] - axis[None, :]), axis=1)
        iy = np.argmin(np.abs(points.imag[:, None] - axis[None, :]), axis=1)
        if (
            np.any(np.abs(points.real - axis[ix]) > atol)
            or np.any(np.abs(points.imag - axis[iy]) > atol)
        ):
            raise ValueError("points do not lie on the centered square lattice")
        cells = set(zip(ix.tolist(), iy.tolist()))
        if len(cells) != self.order:
            raise ValueError("lattice points must cover every cell exactly once")

    def _check_rotation_symmetry(
        self, points: np.ndarray, prior: np.ndarray
    ) -> None:
        # Prior must be invariant under a 90 degree rotation of the lattice.
        rotated = 1j * points
        dist = np.abs(rotated[:, None] - points[None, :])
        match = np.argmin(dist, axis=1)
        atol = _GEOM_TOL * max(1.0, self.delta)
        if np.any(dist[np.arange(self.order), match] > atol):
            raise ValueError("point set is not invariant under 90 degree rotation")
        if np.any(np.abs(prior - prior[match]) > _PRIOR_TOL):
            raise ValueError("prior is not invariant under 90 degree rotation")

    @classmethod
    def single_point(cls, alpha: complex) -> "QamConstellation":
        """Degenerate one-symbol alphabet at amplitude ``alpha``."""
        return cls(
            order=1,
            delta=0.0,
            sigma=math.inf,
            points=np.array([alpha], dtype=complex),
            prior=np.array([1.0]),
        )

    def to_json_dict(self) -> dict:
        sigma = "inf" if math.isinf(self.sigma) else float(self.sigma)
        return {
            "order": int(self.order),
            "delta": float(self.delta),
            "sigma": sigma,
            "points": [[float(p.real), float(p.imag)] for p in self.points],
            "prior": [float(p) for p in self.prior],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "QamConstellation":
        sigma = data["sigma"]
        sigma = math.inf if sigma == "inf" else float(sigma)
        points = np.array([complex(re, im) for re, im in data["points"]])
        return cls(
            order=int(data["order"]),
            delta=float(data["delta"]),
            sigma=sigma,
            points=points,
            prior=np.array(data["prior"], dtype=float),
        )


def build_qam(order: int, delta: float, sigma: float) -> QamConstellation:
    """Centered square QAM alphabet with prior exp(-|alpha|^2 / sigma^2).

    Points are listed by increasing radius, ties broken by phase angle,
    so serialization and receiver indexing are deterministic.
    """
    if order not in _VALID_ORDERS:
        raise ValueError("constellation order must be 4, 16, or 64")
    if not (delta > 0.0):
        raise ValueError("delta must be positive")
    if not (sigma > 0.0):
        raise ValueError("sigma must be positive or infinite")

    axis = _lattice_axis(order, delta)
    re, im = np.meshgrid(axis, axis, indexing="ij")
    points = (re + 1j * im).ravel()
    radius2 = np.abs(points) ** 2
    order_key = np.lexsort((np.angle(points), np.round(radius2, 12)))
    points = points[order_key]
    radius2 = radius2[order_key]

    if math.isinf(sigma):
        prior = np.full(order, 1.0 / order)
    else:
        # Shift by the smallest radius so tiny sigma cannot underflow to 0/0.
        logw = -(radius2 - radius2.min()) / sigma**2
        weights = np.exp(logw)
        prior = weights / weights.sum()

    return QamConstellation(
        order=order, delta=delta, sigma=sigma, points=points, prior=prior
    )


def mean_photon_number(c: QamConstellation) -> float:
    """Prior-weighted mean photon number sum_i p_i |alpha_i|^2."""
    return float(np.dot(c.prior, np.abs(c.points) ** 2))


def solve_delta_for_energy(
    order: int, sigma: float, n_bar_target: float
) -> float:
    """Spacing delta at which the alphabet spends exactly ``n_bar_target``.

    The prior reshuffles toward inner points as delta grows, so monotonicity
    of the energy in delta is verified on the bracket before bisecting.
    """
    if not (n_bar_target > 0.0):
        raise ValueError("target photon number must be positive")

    def energy(delta: float) -> float:
        return mean_photon_number(build_qam(order, delta, sigma))

    lo, hi = 1e-6, 1.0
    for _ in range(200):
        if energy(lo) < n_bar_target:
            break
        lo *= 0.25
        if lo < 1e-30:
            raise ValueError("bracket failure: target below reachable energy")
    for _ in range(200):
        if energy(hi) > n_bar_target:
            break
        hi *= 2.0
        if hi > 1e15:
            raise ValueError("bracket failure: target above reachable energy")

    probe = np.geomspace(lo, hi, 200)
    values = np.array([energy(d) for d in probe])
    if np.any(np.diff(values) <= 0.0):
        raise ValueError("energy is not monotone in delta on the bracket")

    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if energy(mid) < n_bar_target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    delta = math.sqrt(lo * hi)
    if abs(energy(delta) - n_bar_target) > 1e-9:
        raise ValueError("bisection failed to reach the energy target")
    return delta


def propagate(c: QamConstellation, eta: float) -> QamConstellation:
    """Pure-loss propagation: amplitudes scale by sqrt(eta), prior fixed."""
    if not (0.0 < eta <= 1.0):
        raise ValueError("transmittance must satisfy 0 < eta <= 1")
    root = math.sqrt(eta)
    return QamConstellation(
        order=c.order,
        delta=c.delta * root,
        sigma=c.sigma * root,
        points=c.points * root,
        prior=c.prior,
    )


def optimize_sigma(objective, grid=None, refine_iters: int = 24):
    """Maximize ``objective(sigma)`` over a coarse grid, then refine.

    Scans the grid, then golden-section refines in log space between the
    neighbors of the best grid point. Evaluations are cached, so a noisy
    but deterministic objective is handled consistently. Returns
    (best_sigma, best_value).
    """
    if grid is None:
        grid = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
    grid = sorted(float(s) for s in grid)
    if len(grid) < 2:
        raise ValueError("sigma grid needs at least two points")

    cache: dict[float, float] = {}

    def f(sigma: float) -> float:
        if sigma not in cache:
            cache[sigma] = float(objective(sigma))
        return cache[sigma]

    values = [f(s) for s in grid]
    best = int(np.argmax(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]

    # Golden-section maximization on log2(sigma).
    a, b = math.log2(lo), math.log2(hi)
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(2.0**c), f(2.0**d)
    for _ in range(refine_iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(2.0**c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(2.0**d)

    best_sigma = max(cache, key=cache.get)
    return best_sigma, cache[best_sigma]
