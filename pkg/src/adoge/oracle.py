"""Dense-eigendecomposition reference path for small graphs.

Everything here materializes the full spectrum of the shift operator and
evaluates the density definitions literally (eigenvalue counts, squared
projections, cross products, trace sums). It exists so the quadrature-based
estimators have an independent ground truth in tests and selfchecks; it is
not meant for production-size graphs, hence the hard size cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, SizeCapExceeded
from .estimators import CLDOS, DOS, LDOS, SpectralHistogram, bin_indices, bin_width
from .graph import ShiftOperator

DEFAULT_SIZE_CAP = 2048


@dataclass(frozen=True)
class ExactSpectrum:
    """Full eigendecomposition of a shift operator.

    ``eigenvalues`` ascending, ``eigenvectors`` orthonormal columns in the
    matching order.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


def exact_spectrum(op: ShiftOperator, size_cap: int = DEFAULT_SIZE_CAP) -> ExactSpectrum:
    """Dense symmetric eigendecomposition of the shift operator.

    Raises :class:`SizeCapExceeded` when ``op.n`` exceeds ``size_cap``.
    """
    if op.n > size_cap:
        raise SizeCapExceeded(f"n={op.n} exceeds dense-path cap {size_cap}")
    dense = op.rows.toarray()
    values, vectors = np.linalg.eigh(dense)
    return ExactSpectrum(values, vectors)


def _binned(masses: np.ndarray, eigenvalues: np.ndarray, num_bins: int, n: int) -> np.ndarray:
    idx = bin_indices(eigenvalues, num_bins)
    raw = np.bincount(idx, weights=masses, minlength=num_bins)
    return raw / (bin_width(num_bins) * n)


def exact_dos_hist(spectrum: ExactSpectrum, num_bins: int) -> SpectralHistogram:
    """Exact density-of-states histogram (eigenvalue counts per bin)."""
    masses = np.ones(spectrum.n)
    bins = _binned(masses, spectrum.eigenvalues, num_bins, spectrum.n)
    return SpectralHistogram(bins, DOS, spectrum.n)


def exact_ldos_hist(
    spectrum: ExactSpectrum, v: np.ndarray, num_bins: int, label: str = "vector"
) -> SpectralHistogram:
    """Exact local density of states of ``v``: squared projections per bin."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (spectrum.n,):
        raise DimensionMismatch(f"vector shape {v.shape} != ({spectrum.n},)")
    proj = spectrum.eigenvectors.T @ v
    bins = _binned(proj * proj, spectrum.eigenvalues, num_bins, spectrum.n)
    return SpectralHistogram(bins, LDOS, spectrum.n, provenance=(label,))


def exact_cldos_hist(
    spectrum: ExactSpectrum,
    v: np.ndarray,
    v2: np.ndarray,
    num_bins: int,
    labels: tuple[str, str] = ("vector", "vector2"),
) -> SpectralHistogram:
    """Exact cross density of states: signed cross products per bin."""
    v = np.asarray(v, dtype=np.float64)
    v2 = np.asarray(v2, dtype=np.float64)
    if v.shape != (spectrum.n,) or v2.shape != (spectrum.n,):
        raise DimensionMismatch("cross-density vectors must have shape (n,)")
    masses = (spectrum.eigenvectors.T @ v) * (spectrum.eigenvectors.T @ v2)
    bins = _binned(masses, spectrum.eigenvalues, num_bins, spectrum.n)
    return SpectralHistogram(bins, CLDOS, spectrum.n, provenance=tuple(labels))


def exact_trace_phi(spectrum: ExactSpectrum, phi: Callable[[np.ndarray], np.ndarray]) -> float:
    """Exact spectral sum trace(phi(S)) = sum_i phi(lambda_i)."""
    return float(np.sum(phi(spectrum.eigenvalues)))
