"""Covariance-matrix formalism for multimode Gaussian states.

Conventions used throughout the package:

* quadratures are interleaved, ``(x1, p1, x2, p2, ..., xN, pN)``;
* the vacuum state has variance 1/2 per quadrature (``gamma_vac = I/2``);
* a displacement ``alpha`` carries mean vector ``sqrt(2)*(Re a, Im a)`` and
  mean photon number ``|alpha|^2``.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "CovMatrix",
    "PassiveSymplectic",
    "SqueezingSpectrum",
    "symplectic_form",
    "vacuum_cm",
    "thermal_cm",
    "squeezed_diag_cm",
    "apply_passive",
    "random_passive_symplectic",
    "symplectic_eigenvalues",
    "input_photon_number",
    "mean_vector",
]

# Numerical tolerances for the structural invariants.
SYMPLECTIC_TOL = 1e-10
PHYSICALITY_TOL = 1e-9


def symplectic_form(n_modes: int) -> NDArray[np.float64]:
    """Return the 2N x 2N symplectic form for interleaved quadrature order."""
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(n_modes), block)


@dataclass(frozen=True)
class CovMatrix:
    """Covariance matrix of an N-mode Gaussian state (or noise sum).

    ``data`` is stored symmetrized.  Construction checks symmetry, positive
    definiteness and physicality (all symplectic eigenvalues >= 1/2 up to a
    1e-9 slack).
    """

    n_modes: int
    data: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        if self.n_modes < 1:
            raise ValueError("need at least one mode")
        mat = np.asarray(self.data, dtype=float)
        dim = 2 * self.n_modes
        if mat.shape != (dim, dim):
            raise ValueError(f"expected shape {(dim, dim)}, got {mat.shape}")
        if not np.allclose(mat, mat.T, rtol=0.0, atol=1e-8):
            raise ValueError("covariance matrix must be symmetric")
        mat = 0.5 * (mat + mat.T)
        mat.flags.writeable = False
        object.__setattr__(self, "data", mat)
        eigs = np.linalg.eigvalsh(mat)
        if eigs[0] <= 0.0:
            raise ValueError("covariance matrix must be positive definite")
        nu = _symplectic_spectrum(mat, self.n_modes)
        if nu[0] < 0.5 - PHYSICALITY_TOL:
            raise ValueError(
                f"unphysical covariance matrix: smallest symplectic eigenvalue {nu[0]:.3e} < 1/2"
            )

    @property
    def dim(self) -> int:
        return 2 * self.n_modes


@dataclass(frozen=True)
class SqueezingSpectrum:
    """Per-mode squeezing parameters, sorted descending, all nonnegative."""

    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError("squeezing spectrum must be a nonempty 1-D array")
        if np.any(vals < 0.0):
            raise ValueError("squeezing parameters must be nonnegative")
        if np.any(np.diff(vals) > 0.0):
            raise ValueError("squeezing parameters must be sorted descending")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def n_modes(self) -> int:
        return int(self.values.size)

    def photon_number(self) -> float:
        """Total photons carried by the squeezing, sum of sinh^2(r_j)."""
        return float(np.sum(np.sinh(self.values) ** 2))


@dataclass(frozen=True)
class PassiveSymplectic:
    """Symplectic matrix of a passive (energy-conserving) unitary.

    Passive transformations are simultaneously orthogonal and symplectic;
    both properties are enforced at construction within 1e-10.
    """

    n_modes: int
    data: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        mat = np.asarray(self.data, dtype=float)
        dim = 2 * self.n_modes
        if mat.shape != (dim, dim):
            raise ValueError(f"expected shape {(dim, dim)}, got {mat.shape}")
        if np.max(np.abs(mat @ mat.T - np.eye(dim))) > SYMPLECTIC_TOL:
            raise ValueError("matrix is not orthogonal")
        omega = symplectic_form(self.n_modes)
        if np.max(np.abs(mat @ omega @ mat.T - omega)) > SYMPLECTIC_TOL:
            raise ValueError("matrix is not symplectic")
        mat.flags.writeable = False
        object.__setattr__(self, "data", mat)

    @classmethod
    def identity(cls, n_modes: int) -> "PassiveSymplectic":
        return cls(n_modes, np.eye(2 * n_modes))


def vacuum_cm(n_modes: int) -> CovMatrix:
    """Covariance matrix of the N-mode vacuum, I/2."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    return CovMatrix(n_modes, 0.5 * np.eye(2 * n_modes))


def thermal_cm(n_modes: int, n_th: float) -> CovMatrix:
    """Covariance matrix of an isotropic thermal state, (n_th + 1/2) I."""
    if n_th < 0.0:
        raise ValueError("thermal photon number must be nonnegative")
    return CovMatrix(n_modes, (n_th + 0.5) * np.eye(2 * n_modes))


def squeezed_diag_cm(spectrum: SqueezingSpectrum) -> CovMatrix:
    """Product of single-mode squeezed vacua, blocks diag(e^-2r, e^2r)/2."""
    r = spectrum.values
    diag = np.empty(2 * r.size)
    diag[0::2] = 0.5 * np.exp(-2.0 * r)
    diag[1::2] = 0.5 * np.exp(2.0 * r)
    return CovMatrix(r.size, np.diag(diag))


def apply_passive(cm: CovMatrix, s: PassiveSymplectic) -> CovMatrix:
    """Conjugate a covariance matrix by a passive symplectic, S gamma S^T."""
    if cm.n_modes != s.n_modes:
        raise ValueError("mode count mismatch between state and transformation")
    return CovMatrix(cm.n_modes, s.data @ cm.data @ s.data.T)


def random_passive_symplectic(n_modes: int, seed) -> PassiveSymplectic:
    """Haar-random passive symplectic on N modes.

    Draws a Haar-distributed N x N complex unitary (QR of a complex Gaussian
    matrix with the R-diagonal phases normalized away) and maps ``A + iB``
    to its real symplectic representation in interleaved quadrature order.
    """
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(n_modes, n_modes)) + 1j * rng.normal(size=(n_modes, n_modes))
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    u = q * phases
    return PassiveSymplectic(n_modes, _unitary_to_symplectic(u))


def _unitary_to_symplectic(u: NDArray[np.complex128]) -> NDArray[np.float64]:
    """Real interleaved-order representation of a complex unitary."""
    n = u.shape[0]
    a, b = u.real, u.imag
    # Block (xx..pp..) representation [[A, -B], [B, A]], then permute rows and
    # columns into interleaved order.
    block = np.block([[a, -b], [b, a]])
    perm = np.empty(2 * n, dtype=int)
    perm[0::2] = np.arange(n)
    perm[1::2] = np.arange(n) + n
    return block[np.ix_(perm, perm)]


def _symplectic_spectrum(mat: NDArray[np.float64], n_modes: int) -> NDArray[np.float64]:
    """Symplectic eigenvalues of a symmetric positive matrix, ascending.

    The eigenvalues of i*Omega*gamma come in pairs +/- nu_j; pairs are matched
    by sorting absolute values and averaging adjacent entries.
    """
    omega = symplectic_form(n_modes)
    ev = np.linalg.eigvals(1j * omega @ mat)
    mags = np.sort(np.abs(ev))
    pairs = mags.reshape(n_modes, 2)
    if np.any(np.abs(pairs[:, 1] - pairs[:, 0]) > 1e-8 * np.maximum(1.0, pairs[:, 1])):
        raise ValueError("could not pair symplectic eigenvalues")
    return pairs.mean(axis=1)


def symplectic_eigenvalues(cm: CovMatrix) -> NDArray[np.float64]:
    """Symplectic eigenvalues of a covariance matrix, ascending (N values)."""
    return _symplectic_spectrum(cm.data, cm.n_modes)


def input_photon_number(cm: CovMatrix) -> float:
    """Mean photon number of the zero-mean state, (tr gamma - N) / 2."""
    return float(0.5 * (np.trace(cm.data) - cm.n_modes))


def mean_vector(alphas) -> NDArray[np.float64]:
    """Mean quadrature vector of displacements, sqrt(2)*(Re a1, Im a1, ...)."""
    a = np.atleast_1d(np.asarray(alphas, dtype=complex))
    d = np.empty(2 * a.size)
    d[0::2] = np.sqrt(2.0) * a.real
    d[1::2] = np.sqrt(2.0) * a.imag
    return d
