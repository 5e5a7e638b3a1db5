"""Histogram estimators for spectral densities of the shift operator.

All densities live on [-1, 1], split into B equal bins of width delta = 2/B
with centers c_b = -1 + (b + 1/2) delta. Bins are left-closed/right-open,
except the last, which is closed at 1. The three histogram kinds:

- dos:   h_b = (# eigenvalues in bin b) / (delta * n)
- ldos:  h_b = sum_{i in bin b} (v . u_i)^2 / (delta * n)
- cldos: h_b = sum_{i in bin b} (v . u_i)(u_i . v') / (delta * n)

so a DOS histogram integrates to 1 and an LDOS one to ||v||^2 / n. The
estimators below never form eigenvectors: each histogram is a binned Gauss
quadrature rule from a short Lanczos run, and the global DOS is the average
over random isotropic probe vectors (E[(z . u_i)^2] = 1/n for unit z).
The cross-density is assembled from three plain LDOS runs through the
polarization identity  cldos(v, v') = [ldos(v + v') - ldos(v) - ldos(v')]/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .graph import AttributeVector, ShiftOperator
from .lanczos import QuadratureRule, gauss_quadrature

DOS = "dos"
LDOS = "ldos"
CLDOS = "cldos"

_KINDS = (DOS, LDOS, CLDOS)


def bin_width(num_bins: int) -> float:
    return 2.0 / num_bins


def bin_centers(num_bins: int) -> np.ndarray:
    """Centers of the B spectral bins covering [-1, 1]."""
    delta = bin_width(num_bins)
    return -1.0 + (np.arange(num_bins) + 0.5) * delta


@dataclass(frozen=True)
class EstimatorConfig:
    """Knobs of the stochastic histogram estimators.

    ``seed`` keys the probe streams; the vector used for probe p of graph g
    is a deterministic function of (seed, g, p) alone, independent of worker
    scheduling or dataset slicing.
    """

    bins: int = 200
    eta_l: int = 100
    n_probes: int = 16
    seed: int = 0
    reorthogonalize: bool = True

    def __post_init__(self):
        if self.bins < 2 or self.bins % 2 != 0:
            raise ValueError(f"bins must be even and >= 2, got {self.bins}")
        if self.eta_l < 1:
            raise ValueError(f"eta_l must be >= 1, got {self.eta_l}")
        if self.n_probes < 1:
            raise ValueError(f"n_probes must be >= 1, got {self.n_probes}")


@dataclass(frozen=True)
class SpectralHistogram:
    """A binned spectral density over [-1, 1].

    ``provenance`` carries the labels of the attribute vectors behind the
    histogram (empty for DOS, one label for LDOS, two for cLDOS), and ``n``
    the node count of the graph, which fixes the normalization.
    """

    bins: np.ndarray
    kind: str
    n: int
    provenance: tuple[str, ...] = ()
    n_clamped: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown histogram kind {self.kind!r}")
        object.__setattr__(
            self, "bins", np.ascontiguousarray(self.bins, dtype=np.float64)
        )

    @property
    def num_bins(self) -> int:
        return self.bins.shape[0]

    @property
    def bin_width(self) -> float:
        return bin_width(self.num_bins)

    @property
    def centers(self) -> np.ndarray:
        return bin_centers(self.num_bins)

    @property
    def mass(self) -> float:
        """Integral of the represented density, sum(bins) * delta."""
        return float(self.bins.sum() * self.bin_width)


def l1_distance(a: SpectralHistogram, b: SpectralHistogram) -> float:
    """L1 distance between the densities two histograms represent."""
    if a.num_bins != b.num_bins:
        raise DimensionMismatch(
            f"histograms have {a.num_bins} and {b.num_bins} bins"
        )
    return float(np.abs(a.bins - b.bins).sum() * a.bin_width)


# Values this close to a bin boundary are treated as sitting exactly on it,
# so eigenvalues that are structurally exact (0 on bipartite-like graphs,
# +/-1, rationals) bin identically whether they arrive from the dense solver
# or from Ritz values, whose round-off would otherwise flip a coin at the
# boundary. Well below bin width at any sane B; exact inputs are unaffected.
BOUNDARY_SNAP = 1e-12


def bin_indices(values: np.ndarray, num_bins: int) -> np.ndarray:
    """Bin index of each value under the shared boundary rule."""
    u = (np.asarray(values, dtype=np.float64) + 1.0) * (num_bins / 2.0)
    r = np.rint(u)
    u = np.where(np.abs(u - r) <= BOUNDARY_SNAP * (num_bins / 2.0), r, u)
    idx = np.floor(u).astype(np.int64)
    return np.clip(idx, 0, num_bins - 1)


def bin_quadrature(rule: QuadratureRule, num_bins: int) -> np.ndarray:
    """Accumulate quadrature weights into raw (unscaled) spectral bins."""
    idx = bin_indices(rule.nodes, num_bins)
    return np.bincount(idx, weights=rule.weights, minlength=num_bins)


def _as_attribute_vector(v) -> AttributeVector:
    if isinstance(v, AttributeVector):
        return v
    return AttributeVector.from_values("vector", v)


def probe_vector(seed: int, graph_index: int, probe_index: int, n: int) -> np.ndarray:
    """Deterministic standard-normal probe keyed by (seed, graph, probe)."""
    ss = np.random.SeedSequence(
        entropy=int(seed) & 0xFFFFFFFFFFFFFFFF,
        spawn_key=(int(graph_index), int(probe_index)),
    )
    return np.random.default_rng(ss).standard_normal(n)


def estimate_ldos_hist(
    op: ShiftOperator, v, cfg: EstimatorConfig
) -> SpectralHistogram:
    """Estimate the local density of states of ``v`` on ``op``.

    Runs ``eta_l`` Lanczos steps from ``v`` and bins the resulting Gauss
    rule, scaled by ``||v||^2 / (delta * n)``. A zero vector short-circuits
    to the all-zero histogram. Exact up to round-off once the recurrence
    breaks down or ``eta_l >= n``.
    """
    v = _as_attribute_vector(v)
    if v.values.shape != (op.n,):
        raise DimensionMismatch(f"vector shape {v.values.shape} != ({op.n},)")
    if v.norm_sq == 0.0:
        return SpectralHistogram(
            np.zeros(cfg.bins), LDOS, op.n, provenance=(v.label,)
        )
    rule = gauss_quadrature(op, v.values, cfg.eta_l, cfg.reorthogonalize)
    scale = v.norm_sq / (bin_width(cfg.bins) * op.n)
    return SpectralHistogram(
        bin_quadrature(rule, cfg.bins) * scale,
        LDOS,
        op.n,
        provenance=(v.label,),
        n_clamped=rule.n_clamped,
    )


def estimate_dos_hist(
    op: ShiftOperator,
    cfg: EstimatorConfig,
    graph_index: int = 0,
    probes: np.ndarray | None = None,
) -> SpectralHistogram:
    """Estimate the global density of states of ``op``.

    Averages the binned quadrature rules of ``cfg.n_probes`` unit-normalized
    Gaussian probe vectors and scales by 1/delta, so the histogram mass is
    exactly 1 regardless of the probe count. ``graph_index`` keys the probe
    stream; passing an explicit ``(p, n)`` ``probes`` array overrides the
    stream (each row is normalized internally), which is how callers with a
    known basis obtain the deterministic average-of-LDOS identity.
    """
    if probes is not None:
        probes = np.asarray(probes, dtype=np.float64)
        if probes.ndim != 2 or probes.shape[1] != op.n:
            raise DimensionMismatch(
                f"probes shape {probes.shape} incompatible with n={op.n}"
            )
        n_probes = probes.shape[0]
    else:
        n_probes = cfg.n_probes
    acc = np.zeros(cfg.bins)
    clamped = 0
    for p in range(n_probes):
        z = probes[p] if probes is not None else probe_vector(
            cfg.seed, graph_index, p, op.n
        )
        rule = gauss_quadrature(op, z, cfg.eta_l, cfg.reorthogonalize)
        clamped += rule.n_clamped
        acc += bin_quadrature(rule, cfg.bins)
    acc /= n_probes * bin_width(cfg.bins)
    return SpectralHistogram(acc, DOS, op.n, n_clamped=clamped)


def estimate_cldos_hist(
    op: ShiftOperator,
    v,
    v2,
    cfg: EstimatorConfig,
    ldos_v: SpectralHistogram | None = None,
    ldos_v2: SpectralHistogram | None = None,
) -> SpectralHistogram:
    """Estimate the cross density of states of a vector pair.

    Uses the polarization identity on three LDOS histograms; precomputed
    histograms for ``v`` and ``v2`` (from the same config) can be passed in
    to avoid repeating their Lanczos runs. The combination is evaluated as
    ``(ldos(v + v2) - (ldos(v) + ldos(v2))) / 2``, which is symmetric under
    swapping the arguments bin for bin, and collapses to ``ldos(v)`` exactly
    when ``v2 == v`` and to ``-ldos(v)`` when ``v2 == -v``.
    """
    v = _as_attribute_vector(v)
    v2 = _as_attribute_vector(v2)
    if ldos_v is None:
        ldos_v = estimate_ldos_hist(op, v, cfg)
    if ldos_v2 is None:
        ldos_v2 = estimate_ldos_hist(op, v2, cfg)
    vsum = AttributeVector.from_values(
        f"{v.label}+{v2.label}", v.values + v2.values
    )
    ldos_sum = estimate_ldos_hist(op, vsum, cfg)
    bins = (ldos_sum.bins - (ldos_v.bins + ldos_v2.bins)) * 0.5
    clamped = ldos_sum.n_clamped + ldos_v.n_clamped + ldos_v2.n_clamped
    return SpectralHistogram(
        bins, CLDOS, op.n, provenance=(v.label, v2.label), n_clamped=clamped
    )
