"""QAM with balanced heterodyne detection: mixture-entropy mutual information.

A coherent symbol alpha measured by ideal dual-quadrature detection yields a
2-D Gaussian outcome centered on sqrt(2) (Re alpha, Im alpha) with isotropic
per-axis variance v; v = 1 for a pure-loss channel (1/2 from the state plus
1/2 from the measurement). The input-output mutual information is then
H(B) - log2(2 pi e v) with H(B) the differential entropy of the Gaussian
mixture, evaluated by panelled Gauss-Legendre quadrature with doubling
refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .capacity import coherent_capacity
from .channel import PhaseInsensitiveChannel
from .constellation import (
    build_qam,
    mean_photon_number,
    propagate,
    solve_delta_for_energy,
)

_MIN_VARIANCE = 1.0 - 1e-12
_GL_ORDER = 12
_MAX_PANELS = 512
_BOX_SIGMAS = 8.0

__all__ = [
    "QuadratureError",
    "BoundViolationError",
    "HeterodyneModel",
    "heterodyne_mi",
    "HeterodynePoint",
    "heterodyne_curve",
]


class QuadratureError(RuntimeError):
    """The entropy quadrature failed to converge within the panel cap."""


class BoundViolationError(RuntimeError):
    """A computed value broke an analytic bound it must satisfy."""


@dataclass(frozen=True)
class HeterodyneModel:
    """Received alphabet plus isotropic per-quadrature outcome variance."""

    constellation: object
    v: float = 1.0

    def __post_init__(self) -> None:
        for name in ("points", "prior"):
            if not hasattr(self.constellation, name):
                raise ValueError("constellation must expose points and prior")
        if self.v < _MIN_VARIANCE:
            raise ValueError("output variance cannot drop below the vacuum+LO floor")

    def outcome_means(self) -> np.ndarray:
        pts = self.constellation.points
        return np.column_stack((math.sqrt(2.0) * pts.real, math.sqrt(2.0) * pts.imag))


def _axis_nodes(lo: float, hi: float, panels: int):
    """Gauss-Legendre nodes and weights for ``panels`` equal panels."""
    base_x, base_w = np.polynomial.legendre.leggauss(_GL_ORDER)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    weights = (half[:, None] * base_w[None, :]).ravel()
    return nodes, weights


def _entropy_and_mass(model: HeterodyneModel, panels: int):
    """Differential entropy (bits) and total mass of the outcome mixture."""
    means = model.outcome_means()
    prior = np.asarray(model.constellation.prior, dtype=float)
    v = model.v
    pad = _BOX_SIGMAS * math.sqrt(v)
    x, wx = _axis_nodes(means[:, 0].min() - pad, means[:, 0].max() + pad, panels)
    y, wy = _axis_nodes(means[:, 1].min() - pad, means[:, 1].max() + pad, panels)

    density = np.zeros((x.size, y.size))
    for p, (mx, my) in zip(prior, means):
        if p == 0.0:
            continue
        gx = np.exp(-((x - mx) ** 2) / (2.0 * v))
        gy = np.exp(-((y - my) ** 2) / (2.0 * v))
        density += p * np.outer(gx, gy)
    density /= 2.0 * math.pi * v

    mass = float(wx @ density @ wy)
    live = density > 1e-300
    integrand = np.zeros_like(density)
    np.multiply(density, np.log2(density, where=live, out=integrand), out=integrand,
                where=live)
    entropy = -float(wx @ integrand @ wy)
    return entropy, mass


def heterodyne_mi(model: HeterodyneModel, rel_tol: float = 1e-6) -> float:
    """Mutual information in bits between the symbol and the outcome point.

    Panel count doubles until the entropy moves by less than ``rel_tol``
    (relative) and the mixture mass integrates to 1 within 1e-9. Raises if
    the refinement loop cannot converge or the result breaks the analytic
    upper bounds (a quadrature-failure symptom).
    """
    means = model.outcome_means()
    width = max(
        np.ptp(means[:, 0]), np.ptp(means[:, 1])
    ) + 2.0 * _BOX_SIGMAS * math.sqrt(model.v)
    panels = max(4, int(math.ceil(width / (6.0 * math.sqrt(model.v)))))

    entropy, mass = _entropy_and_mass(model, panels)
    converged = False
    while panels <= _MAX_PANELS:
        panels *= 2
        refined, mass = _entropy_and_mass(model, panels)
        if abs(refined - entropy) <= rel_tol * max(1.0, abs(refined)) and abs(
            mass - 1.0
        ) <= 1e-9:
            entropy = refined
            converged = True
            break
        entropy = refined
    if not converged:
        raise QuadratureError("output-entropy quadrature did not converge")

    info = max(entropy - math.log2(2.0 * math.pi * math.e * model.v), 0.0)

    m = len(model.constellation.points)
    energy = mean_photon_number(model.constellation)
    if info > math.log2(m) + 1e-6:
        raise BoundViolationError("mutual information exceeded the alphabet-size bound")
    if info > math.log2(1.0 + energy / model.v) + 1e-3:
        raise BoundViolationError(
            "mutual information exceeded the Gaussian-input bound"
        )
    return info


@dataclass(frozen=True)
class HeterodynePoint:
    """One (sigma', n_bar) sample of a heterodyne sweep; received-side
    sigma/delta, transmitter-side n_bar."""

    order: int
    eta: float
    sigma: float
    delta: float
    n_bar: float
    mi_bits: float
    c_coh_bits: float


def heterodyne_curve(
    order: int,
    eta: float,
    sigma_list: Sequence[float],
    n_bar_values: Sequence[float],
    v: float = 1.0,
):
    """Heterodyne MI over energies for each received-side prior width.

    ``sigma_list`` entries are post-loss widths sigma'; the transmitter
    constellation uses sigma' / sqrt(eta) so the received alphabet lands
    exactly on sigma'. Returns (points, crossings) where crossings maps each
    finite sigma' to the transmitter energy with eta n_bar = sigma'^2.
    """
    if not (0.0 < eta <= 1.0):
        raise ValueError("transmittance must satisfy 0 < eta <= 1")
    channel = PhaseInsensitiveChannel.from_loss(eta)
    points = []
    crossings = {}
    for sigma_rx in sigma_list:
        if not math.isinf(sigma_rx):
            crossings[float(sigma_rx)] = float(sigma_rx) ** 2 / eta
        sigma_tx = sigma_rx / math.sqrt(eta)
        for n_bar in n_bar_values:
            delta_tx = solve_delta_for_energy(order, sigma_tx, n_bar)
            received = propagate(build_qam(order, delta_tx, sigma_tx), eta)
            info = heterodyne_mi(HeterodyneModel(received, v=v))
            points.append(
                HeterodynePoint(
                    order=order,
                    eta=eta,
                    sigma=float(sigma_rx),
                    delta=received.delta,
                    n_bar=float(n_bar),
                    mi_bits=info,
                    c_coh_bits=coherent_capacity(channel, n_bar),
                )
            )
    return points, crossings
