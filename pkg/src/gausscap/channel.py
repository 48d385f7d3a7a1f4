"""Single-mode phase-insensitive Gaussian channels.

A phase-insensitive channel is parametrized by a transmissivity/gain ``tau``
and an additive noise ``m`` acting on covariance matrices as
``gamma -> tau * gamma + m * I`` and on displacements as
``d -> sqrt(tau) * d``.  In vacuum-variance-1/2 units complete positivity
requires ``m >= |tau - 1| / 2``, saturated by the quantum-limited loss and
amplifier channels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gaussian_core import CovMatrix

__all__ = ["PhaseInsensitiveChannel"]

CP_TOL = 1e-12


@dataclass(frozen=True)
class PhaseInsensitiveChannel:
    """Phase-insensitive Gaussian channel with parameters (tau, m).

    ``tau > 0`` is the transmissivity (``tau <= 1``) or gain (``tau > 1``);
    ``m >= |tau - 1| / 2`` is the added noise.  Equality is the
    quantum-limited case: a pure-loss channel for ``tau < 1``, a
    quantum-limited amplifier for ``tau > 1``, the identity at ``tau = 1``.
    """

    tau: float
    m: float

    def __post_init__(self) -> None:
        if not self.tau > 0.0:
            raise ValueError("tau must be positive")
        if self.m < 0.5 * abs(self.tau - 1.0) - CP_TOL:
            raise ValueError(
                f"channel ({self.tau}, {self.m}) is not completely positive: "
                f"need m >= |tau - 1| / 2 = {0.5 * abs(self.tau - 1.0)}"
            )

    @classmethod
    def from_loss(cls, eta: float, n_th: float = 0.0) -> "PhaseInsensitiveChannel":
        """Thermal-loss channel: transmissivity eta, environment photons n_th."""
        if not 0.0 < eta <= 1.0:
            raise ValueError("eta must lie in (0, 1]")
        if n_th < 0.0:
            raise ValueError("n_th must be nonnegative")
        return cls(eta, (1.0 - eta) * (n_th + 0.5))

    @classmethod
    def from_amplifier(cls, g: float, n_th: float = 0.0) -> "PhaseInsensitiveChannel":
        """Amplifier channel: gain g >= 1, environment photons n_th."""
        if g < 1.0:
            raise ValueError("gain must be >= 1")
        if n_th < 0.0:
            raise ValueError("n_th must be nonnegative")
        return cls(g, (g - 1.0) * (n_th + 0.5))

    def apply_to_cm(self, cm: CovMatrix) -> CovMatrix:
        """Act on each mode of a covariance matrix independently."""
        dim = cm.dim
        return CovMatrix(cm.n_modes, self.tau * cm.data + self.m * np.eye(dim))

    def apply_to_modulation(self, p: np.ndarray) -> np.ndarray:
        """Act on a classical modulation covariance, P -> tau * P.

        Modulation (a classical Gaussian ensemble of displacements) gains no
        added noise from the channel; the m*I term lands on the quantum state.
        """
        return self.tau * np.asarray(p, dtype=float)

    def compose(self, other: "PhaseInsensitiveChannel") -> "PhaseInsensitiveChannel":
        """Concatenation ``other after self``: (t2*t1, t2*m1 + m2)."""
        return PhaseInsensitiveChannel(
            other.tau * self.tau, other.tau * self.m + other.m
        )

    def is_quantum_limited(self, tol: float = 1e-12) -> bool:
        return abs(self.m - 0.5 * abs(self.tau - 1.0)) <= tol
