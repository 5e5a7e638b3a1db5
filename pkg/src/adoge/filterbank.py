"""Frequency-response filterbanks evaluated on spectral bin centers.

An aggregate feature is the plain dot product g = sum_b h(c_b) * phi(c_b)
between a spectral histogram and a frequency response function phi sampled
at the B bin centers. Two families are provided:

- chebyshev: rows k = 1..K are the Chebyshev polynomials T_{k-1} on [-1, 1],
  built with the three-term recurrence, so every row is bounded by 1;
- power: rows are lambda^k for k = +1..+K/2 followed by k = -1..-K/2, with
  negative-power entries zeroed on bins whose center lies inside the guard
  band |c_b| < eps_guard to keep the features finite near lambda = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .estimators import SpectralHistogram, bin_centers

CHEBYSHEV = "chebyshev"
POWER = "power"

DEFAULT_EPS_GUARD = 0.05


@dataclass(frozen=True)
class FRFTable:
    """A filterbank sampled on bin centers: one row per response function.

    ``row_ids`` identifies each row (Chebyshev order k, or signed power
    exponent); ``power_guard`` echoes the guard threshold for power tables
    and is None for Chebyshev ones.
    """

    family: str
    values: np.ndarray
    centers: np.ndarray
    row_ids: tuple[int, ...]
    power_guard: float | None = None

    @property
    def k(self) -> int:
        return self.values.shape[0]

    @property
    def num_bins(self) -> int:
        return self.values.shape[1]


def chebyshev_frf_table(k: int, num_bins: int) -> FRFTable:
    """Chebyshev filterbank: rows T_0 .. T_{k-1} at the bin centers."""
    if k < 1:
        raise ValueError(f"need at least one response function, got k={k}")
    x = bin_centers(num_bins)
    values = np.empty((k, num_bins))
    values[0] = 1.0
    if k > 1:
        values[1] = x
    for row in range(2, k):
        values[row] = 2.0 * x * values[row - 1] - values[row - 2]
    return FRFTable(CHEBYSHEV, values, x, row_ids=tuple(range(1, k + 1)))


def power_frf_table(
    k: int, num_bins: int, eps_guard: float = DEFAULT_EPS_GUARD
) -> FRFTable:
    """Signed-power filterbank: lambda^{+1..+k/2} then lambda^{-1..-k/2}.

    Negative-power rows are set to 0 on guarded bins (|center| < eps_guard);
    positive rows are never guarded.
    """
    if k < 2 or k % 2 != 0:
        raise ValueError(f"power filterbank needs even k >= 2, got k={k}")
    if eps_guard < 0.0:
        raise ValueError(f"eps_guard must be >= 0, got {eps_guard}")
    x = bin_centers(num_bins)
    half = k // 2
    guarded = np.abs(x) < eps_guard
    values = np.empty((k, num_bins))
    exponents = list(range(1, half + 1)) + list(range(-1, -half - 1, -1))
    for row, expo in enumerate(exponents):
        if expo > 0:
            values[row] = x**expo
        else:
            with np.errstate(divide="ignore"):
                col = np.where(guarded, 0.0, x).astype(np.float64)
                values[row] = np.where(guarded, 0.0, col ** float(expo))
    return FRFTable(POWER, values, x, row_ids=tuple(exponents), power_guard=eps_guard)


def aggregate(hist: SpectralHistogram, table: FRFTable) -> np.ndarray:
    """Aggregate features g_phi = sum_b h(c_b) phi(c_b), one per table row."""
    if hist.num_bins != table.num_bins:
        raise DimensionMismatch(
            f"histogram has {hist.num_bins} bins, table expects {table.num_bins}"
        )
    return table.values @ hist.bins
