"""Single-channel Gaussian capacities: coherent, squeezed, Holevo.

Everything here is a closed form in the channel parameters (tau, m) and the
input energy n_bar (mean photons per mode).  The Gaussian-optimal single-mode
strategy is either the coherent-state scheme (isotropic displacement encoding,
dual-quadrature detection) or the squeezed-state scheme (single-quadrature
encoding on a squeezed input, homodyne detection); the crossover energy
between them is also closed-form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .channel import PhaseInsensitiveChannel

__all__ = [
    "CapacityReport",
    "EfficiencyGrid",
    "gordon_g",
    "coherent_capacity",
    "squeezed_capacity",
    "holevo_capacity",
    "gaussian_capacity",
    "crossover_energy",
    "capacity_report",
    "channel_family",
    "efficiency_grid",
    "threshold_energy",
]


def gordon_g(x: float) -> float:
    """Bosonic entropy function g(x) = (1+x)log2(1+x) - x log2(x), in bits.

    g(0) = 0; the x*log2(x) term is dropped below 1e-300 where it would
    underflow (its true value is already below any representable effect).
    """
    if x < 0.0:
        if x > -1e-12:
            return 0.0
        raise ValueError("g(x) requires x >= 0")
    if x < 1e-300:
        return 0.0
    return (1.0 + x) * math.log2(1.0 + x) - x * math.log2(x)


def coherent_capacity(ch: PhaseInsensitiveChannel, n_bar: float) -> float:
    """Capacity of the coherent-state scheme, log2(1 + 2 tau nbar / (1 + tau + 2m))."""
    if n_bar < 0.0:
        raise ValueError("n_bar must be nonnegative")
    return math.log2(1.0 + 2.0 * ch.tau * n_bar / (1.0 + ch.tau + 2.0 * ch.m))


def squeezed_capacity(ch: PhaseInsensitiveChannel, n_bar: float) -> tuple[float, float]:
    """Capacity of the squeezed-state scheme and the optimal squeezing r.

    The optimal single-quadrature strategy squeezes the input by r and spends
    the remaining energy n_bar - sinh^2(r) on modulation.  The capacity is
    log2 of the optimal exp(2r), evaluated in the rationalized form

        exp(2r) = (4 tau nbar + 2 tau + 2 m) / (tau + sqrt((tau+2m)^2 + 8 tau m nbar))

    which is algebraically identical to the usual (-tau + sqrt(...))/(2m) but
    has no 0/0 at m = 0, where it reduces exactly to 1 + 2 nbar (the ideal
    channel limit).
    """
    if n_bar < 0.0:
        raise ValueError("n_bar must be nonnegative")
    tau, m = ch.tau, ch.m
    disc = math.sqrt((tau + 2.0 * m) ** 2 + 8.0 * tau * m * n_bar)
    e2r = (4.0 * tau * n_bar + 2.0 * tau + 2.0 * m) / (tau + disc)
    r = 0.5 * math.log(e2r)
    return math.log2(e2r), r


def holevo_capacity(ch: PhaseInsensitiveChannel, n_bar: float) -> float:
    """Holevo limit of the channel, g(tau nbar + c) - g(c) with c = m + (tau-1)/2."""
    if n_bar < 0.0:
        raise ValueError("n_bar must be nonnegative")
    c = ch.m + 0.5 * (ch.tau - 1.0)
    if c < -1e-12:
        raise ValueError("channel has negative output thermal occupation")
    c = max(c, 0.0)
    return gordon_g(ch.tau * n_bar + c) - gordon_g(c)


def gaussian_capacity(ch: PhaseInsensitiveChannel, n_bar: float) -> float:
    """Best single-mode Gaussian rate, max of coherent and squeezed schemes."""
    return max(coherent_capacity(ch, n_bar), squeezed_capacity(ch, n_bar)[0])


def crossover_energy(ch: PhaseInsensitiveChannel) -> float:
    """Energy n_c = (1 + 2m + tau) / (2 m tau) where the two schemes tie.

    Below n_c the squeezed scheme wins, above it the coherent scheme wins.
    For a noiseless channel (m = 0) the squeezed scheme is always optimal and
    the crossover is +inf.
    """
    if ch.m == 0.0:
        return math.inf
    return (1.0 + 2.0 * ch.m + ch.tau) / (2.0 * ch.m * ch.tau)


@dataclass(frozen=True)
class CapacityReport:
    """All single-channel capacities at one (channel, n_bar) point, in bits."""

    c_coh: float
    c_sq: float
    c_holevo: float
    c_gauss: float
    optimal_scheme: str  # "coherent" or "squeezed"
    optimal_squeezing_r: float
    efficiency: float

    def __post_init__(self) -> None:
        if abs(self.c_gauss - max(self.c_coh, self.c_sq)) > 1e-12:
            raise ValueError("c_gauss must be the larger of c_coh and c_sq")
        if self.c_gauss > self.c_holevo + 1e-9:
            raise ValueError("Gaussian capacity exceeds the Holevo limit")
        if self.optimal_scheme not in ("coherent", "squeezed"):
            raise ValueError("optimal_scheme must be 'coherent' or 'squeezed'")
        if not 0.0 <= self.efficiency <= 1.0:
            raise ValueError("efficiency must lie in [0, 1]")


def capacity_report(ch: PhaseInsensitiveChannel, n_bar: float) -> CapacityReport:
    """Evaluate all capacities and the Gaussian-to-Holevo efficiency."""
    c_coh = coherent_capacity(ch, n_bar)
    c_sq, r = squeezed_capacity(ch, n_bar)
    c_hol = holevo_capacity(ch, n_bar)
    c_gauss = max(c_coh, c_sq)
    scheme = "squeezed" if c_sq > c_coh else "coherent"
    eff = min(c_gauss / c_hol, 1.0) if c_hol > 0.0 else 1.0
    return CapacityReport(c_coh, c_sq, c_hol, c_gauss, scheme, r, eff)


def channel_family(tau: float):
    """Family n_th -> channel at fixed tau: thermal loss below 1, amplifier above."""
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if tau <= 1.0:
        return lambda n_th: PhaseInsensitiveChannel.from_loss(tau, n_th)
    return lambda n_th: PhaseInsensitiveChannel.from_amplifier(tau, n_th)


@dataclass(frozen=True)
class EfficiencyGrid:
    """Capacity reports over an (n_bar, n_th) grid at fixed tau.

    ``reports[i][j]`` corresponds to ``(n_bar_values[i], n_th_values[j])``
    (row-major over n_bar).  ``crossover`` holds n_c(n_th) per column, the
    locus separating the squeezed-optimal from the coherent-optimal region.
    """

    tau: float
    n_bar_values: NDArray[np.float64]
    n_th_values: NDArray[np.float64]
    reports: tuple
    crossover: NDArray[np.float64]


def efficiency_grid(
    tau: float,
    n_bar_range: tuple[float, float],
    n_th_range: tuple[float, float],
    resolution: int,
    spacing: str = "log",
) -> EfficiencyGrid:
    """Tabulate capacity reports over a 2-D (n_bar, n_th) grid.

    ``spacing`` is "log" (geometric, default: the interesting structure spans
    decades) or "linear".  Both range endpoints must be positive.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    for lo, hi in (n_bar_range, n_th_range):
        if not (0.0 < lo < hi):
            raise ValueError("ranges must satisfy 0 < lo < hi")
    if spacing == "log":
        n_bars = np.geomspace(n_bar_range[0], n_bar_range[1], resolution)
        n_ths = np.geomspace(n_th_range[0], n_th_range[1], resolution)
    elif spacing == "linear":
        n_bars = np.linspace(n_bar_range[0], n_bar_range[1], resolution)
        n_ths = np.linspace(n_th_range[0], n_th_range[1], resolution)
    else:
        raise ValueError("spacing must be 'log' or 'linear'")
    family = channel_family(tau)
    channels = [family(float(n_th)) for n_th in n_ths]
    rows = tuple(
        tuple(capacity_report(ch, float(nb)) for ch in channels) for nb in n_bars
    )
    cross = np.array([crossover_energy(ch) for ch in channels])
    return EfficiencyGrid(tau, n_bars, n_ths, rows, cross)


def threshold_energy(target_efficiency: float) -> float:
    """Received energy x = tau*n_bar at which the pure-loss coherent scheme
    reaches the requested fraction of the Holevo limit.

    Over a pure-loss channel the coherent scheme gives log2(1+x) against the
    Holevo value g(x), and the ratio increases monotonically from 0 to 1, so
    the equation ratio(x) = target has a unique root.  Solved by bisection on
    [1e-6, 1e9] after a numerical monotonicity check of the bracket.
    """
    if not 0.0 < target_efficiency < 1.0:
        raise ValueError("target efficiency must lie strictly between 0 and 1")

    def ratio(x: float) -> float:
        return math.log2(1.0 + x) / gordon_g(x)

    lo, hi = 1e-6, 1e9
    samples = np.geomspace(lo, hi, 200)
    vals = np.array([ratio(float(x)) for x in samples])
    if np.any(np.diff(vals) <= 0.0):
        raise RuntimeError("efficiency ratio is not monotone on the bracket")
    if not vals[0] < target_efficiency < vals[-1]:
        raise ValueError("target efficiency out of reach on the bracket")
    for _ in range(200):
        mid = math.sqrt(lo * hi)  # bisect in log space
        if ratio(mid) < target_efficiency:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-9 * hi:
            break
    return 0.5 * (lo + hi)
