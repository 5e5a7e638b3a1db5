"""Assemble fixed-size graph embeddings from spectral-density features.

One embedding concatenates, in a deterministic column order, per-source
feature blocks:

    [dos block] [ldos block per attribute vector] [cldos block per pair]

where each block holds, in order and subject to the include flags, the B
histogram bins, the K Chebyshev aggregates, and the K signed-power
aggregates of that source's spectral histogram. With every flag on the
total width is (B + 2K) * (1 + D + P) for D attribute vectors and P pairs.
The layout depends only on the configuration and the dataset schema, never
on an individual graph, so embeddings of same-schema graphs of any size are
directly comparable and invariant to node order (up to round-off; the
stochastic DOS block is keyed by the graph's dataset index).
"""

from __future__ import annotations

import itertools
import time
import warnings as _warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EmptyFeatureSet, NonFiniteFeature
from .estimators import (
    EstimatorConfig,
    SpectralHistogram,
    estimate_cldos_hist,
    estimate_dos_hist,
    estimate_ldos_hist,
)
from .filterbank import FRFTable, aggregate, chebyshev_frf_table, power_frf_table
from .graph import AttributeOptions, AttributeSchema, Graph, attribute_vectors, normalize_adjacency
from .ingest import GraphDataset

HIST = "hist"
CHEB = "cheb"
POW = "pow"


@dataclass(frozen=True)
class EmbeddingConfig:
    """Everything that determines an embedding's columns and values.

    ``estimator.bins`` is the histogram resolution B and ``k`` the size of
    each filterbank. ``include_degree=None`` resolves to "on iff the schema
    has no attribute columns", so plain graphs still get one attribute
    vector. ``pair_selection`` is either ``"all"`` (every unordered pair of
    attribute vectors, index-lexicographic) or an explicit sequence of index
    pairs; an all-pairs count above ``pair_budget`` triggers a warning but is
    still honored.
    """

    estimator: EstimatorConfig = field(default_factory=EstimatorConfig)
    k: int = 100
    include_dos: bool = True
    include_ldos: bool = True
    include_cldos: bool = True
    include_hist: bool = True
    include_cheb: bool = True
    include_pow: bool = True
    include_degree: bool | None = None
    pair_selection: object = "all"
    eps_guard: float = 0.05
    pair_budget: int = 1000

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.include_pow and self.k % 2 != 0:
            raise ValueError("signed-power features need an even k")
        if self.eps_guard < 0.0:
            raise ValueError(f"eps_guard must be >= 0, got {self.eps_guard}")
        if self.pair_selection != "all":
            object.__setattr__(
                self,
                "pair_selection",
                tuple((int(i), int(j)) for i, j in self.pair_selection),
            )

    def degree_enabled(self, schema: AttributeSchema) -> bool:
        if self.include_degree is None:
            return len(schema) == 0
        return bool(self.include_degree)


@dataclass(frozen=True)
class ColumnDescriptor:
    """One embedding column: its source histogram, feature kind, and index.

    ``index`` is the 0-based bin for ``hist`` columns, the 1-based filter
    order for ``cheb`` columns, and the signed exponent for ``pow`` columns.
    """

    source: str
    labels: tuple[str, ...]
    kind: str
    index: int

    @property
    def name(self) -> str:
        src = self.source
        if self.labels:
            src += "[" + "&".join(self.labels) + "]"
        idx = f"{self.index:+d}" if self.kind == POW else str(self.index)
        return f"{src}:{self.kind}:{idx}"


@dataclass(frozen=True)
class ColumnManifest:
    """Ordered column descriptors shared by every embedding of a dataset."""

    columns: tuple[ColumnDescriptor, ...]

    def __len__(self) -> int:
        return len(self.columns)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    def to_json(self) -> list[dict]:
        return [
            {
                "name": c.name,
                "source": c.source,
                "labels": list(c.labels),
                "kind": c.kind,
                "index": c.index,
            }
            for c in self.columns
        ]


@dataclass(frozen=True)
class Embedding:
    """Feature vector of one graph plus the manifest describing its columns."""

    graph_id: int
    values: np.ndarray
    manifest: ColumnManifest
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class FRFTables:
    """Filterbank tables shared across a dataset (built once per config)."""

    cheb: FRFTable | None
    pow: FRFTable | None


@dataclass(frozen=True)
class DatasetEmbedding:
    """Result of embedding a dataset: partial results survive bad graphs.

    ``embeddings`` holds the successful graphs in dataset order; ``errors``
    the (dataset index, exception) pairs of failed ones; ``timings`` one
    wall-clock duration per dataset index, failed or not.
    """

    embeddings: list[Embedding]
    manifest: ColumnManifest
    errors: list[tuple[int, Exception]]
    timings: list[float]


def resolve_pairs(cfg: EmbeddingConfig, dim: int) -> tuple[tuple[int, int], ...]:
    """Attribute-vector index pairs selected by the config for dimension D."""
    if cfg.pair_selection == "all":
        pairs = tuple(itertools.combinations(range(dim), 2))
        if len(pairs) > cfg.pair_budget:
            _warnings.warn(
                f"all-pairs selection yields {len(pairs)} pairs "
                f"(budget {cfg.pair_budget}); pass an explicit pair list to cut cost",
                stacklevel=2,
            )
        return pairs
    for i, j in cfg.pair_selection:
        if not (0 <= i < dim and 0 <= j < dim) or i == j:
            raise DimensionMismatch(
                f"pair ({i}, {j}) invalid for {dim} attribute vectors"
            )
    return cfg.pair_selection


def feature_layout(cfg: EmbeddingConfig, schema: AttributeSchema) -> ColumnManifest:
    """Build the column manifest for a config and dataset schema.

    Raises :class:`EmptyFeatureSet` when no feature kind is selected or no
    source block survives (e.g. only LDOS requested on a schema with no
    attribute vectors).
    """
    kinds: list[tuple[str, list[int]]] = []
    if cfg.include_hist:
        kinds.append((HIST, list(range(cfg.estimator.bins))))
    if cfg.include_cheb:
        kinds.append((CHEB, list(range(1, cfg.k + 1))))
    if cfg.include_pow:
        half = cfg.k // 2
        kinds.append((POW, list(range(1, half + 1)) + list(range(-1, -half - 1, -1))))
    if not kinds:
        raise EmptyFeatureSet("no feature kinds selected (hist/cheb/pow all off)")

    labels = schema.vector_labels(cfg.degree_enabled(schema))
    blocks: list[tuple[str, tuple[str, ...]]] = []
    if cfg.include_dos:
        blocks.append(("dos", ()))
    if cfg.include_ldos:
        blocks.extend(("ldos", (lab,)) for lab in labels)
    if cfg.include_cldos:
        blocks.extend(
            ("cldos", (labels[i], labels[j]))
            for i, j in resolve_pairs(cfg, len(labels))
        )
    if not blocks:
        raise EmptyFeatureSet(
            "no source blocks: enable dos, or provide attribute vectors"
        )

    columns = [
        ColumnDescriptor(source, labs, kind, idx)
        for source, labs in blocks
        for kind, indices in kinds
        for idx in indices
    ]
    return ColumnManifest(tuple(columns))


def build_frf_tables(cfg: EmbeddingConfig) -> FRFTables:
    """Materialize the filterbank tables a config needs (possibly none)."""
    bins = cfg.estimator.bins
    cheb = chebyshev_frf_table(cfg.k, bins) if cfg.include_cheb else None
    pw = power_frf_table(cfg.k, bins, cfg.eps_guard) if cfg.include_pow else None
    return FRFTables(cheb, pw)


def _block_features(
    hist: SpectralHistogram, cfg: EmbeddingConfig, tables: FRFTables
) -> list[np.ndarray]:
    parts = []
    if cfg.include_hist:
        parts.append(hist.bins)
    if cfg.include_cheb:
        parts.append(aggregate(hist, tables.cheb))
    if cfg.include_pow:
        parts.append(aggregate(hist, tables.pow))
    return parts


def embed_graph(
    g: Graph,
    cfg: EmbeddingConfig,
    tables: FRFTables | None = None,
    graph_index: int = 0,
    manifest: ColumnManifest | None = None,
) -> Embedding:
    """Embed a single graph.

    ``graph_index`` keys the DOS probe stream (the dataset position when
    called through :func:`embed_dataset`); ``tables`` and ``manifest`` may be
    passed in to share work across a dataset and are rebuilt here when
    omitted. The result is fully deterministic given the graph, the config,
    and ``graph_index``.

    Raises
    ------
    NonFiniteFeature
        If any feature value comes out NaN or infinite.
    """
    if tables is None:
        tables = build_frf_tables(cfg)
    if manifest is None:
        manifest = feature_layout(cfg, g.schema)
    est = cfg.estimator
    op = normalize_adjacency(g)
    vecs = attribute_vectors(g, AttributeOptions(cfg.degree_enabled(g.schema)))
    dim = len(vecs)

    hists: list[SpectralHistogram] = []
    if cfg.include_dos:
        hists.append(estimate_dos_hist(op, est, graph_index=graph_index))
    ldos: dict[int, SpectralHistogram] = {}
    if cfg.include_ldos or cfg.include_cldos:
        pairs = resolve_pairs(cfg, dim) if cfg.include_cldos else ()
        needed = (
            range(dim)
            if cfg.include_ldos
            else sorted({i for pair in pairs for i in pair})
        )
        for i in needed:
            ldos[i] = estimate_ldos_hist(op, vecs[i], est)
        if cfg.include_ldos:
            hists.extend(ldos[i] for i in range(dim))
        if cfg.include_cldos:
            hists.extend(
                estimate_cldos_hist(
                    op, vecs[i], vecs[j], est, ldos_v=ldos[i], ldos_v2=ldos[j]
                )
                for i, j in pairs
            )

    parts: list[np.ndarray] = []
    for h in hists:
        parts.extend(_block_features(h, cfg, tables))
    values = np.concatenate(parts) if parts else np.empty(0)
    if values.shape[0] != len(manifest):
        raise DimensionMismatch(
            f"assembled {values.shape[0]} features, manifest expects {len(manifest)}"
        )
    graph_id = g.graph_id if g.graph_id is not None else graph_index
    if not np.all(np.isfinite(values)):
        bad = int(np.count_nonzero(~np.isfinite(values)))
        raise NonFiniteFeature(f"graph {graph_id}: {bad} non-finite feature(s)")

    warn: list[str] = []
    clamped = sum(h.n_clamped for h in hists)
    if clamped:
        warn.append(f"clamped_ritz_values:{clamped}")
    for v in vecs:
        if v.norm_sq == 0.0:
            warn.append(f"zero_attribute_vector:{v.label}")
    if cfg.include_pow and tables.pow is not None:
        guarded = np.abs(tables.pow.centers) < cfg.eps_guard
        hit = sum(
            int(np.count_nonzero(h.bins[guarded] != 0.0)) for h in hists
        )
        if hit:
            warn.append(f"guarded_bins_hit:{hit}")
    return Embedding(graph_id, values, manifest, tuple(warn))


def embed_dataset(
    ds: GraphDataset, cfg: EmbeddingConfig, workers: int = 1
) -> DatasetEmbedding:
    """Embed every graph of a dataset.

    Output order always follows dataset order and the values are
    byte-identical for any worker count: each graph's computation depends
    only on (graph, config, dataset index). Worker threads simply run
    disjoint graphs concurrently. Per-graph failures are collected, not
    raised; the returned object carries the successes and the indexed
    errors side by side.
    """
    manifest = feature_layout(cfg, ds.schema)
    tables = build_frf_tables(cfg)
    n = len(ds.graphs)
    results: list[Embedding | None] = [None] * n
    errors: list[tuple[int, Exception]] = []
    timings = [0.0] * n

    def run(i: int) -> None:
        t0 = time.perf_counter()
        try:
            results[i] = embed_graph(
                ds.graphs[i], cfg, tables=tables, graph_index=i, manifest=manifest
            )
        except Exception as exc:  # noqa: BLE001 - isolation is the contract
            errors.append((i, exc))
        finally:
            timings[i] = time.perf_counter() - t0

    if workers <= 1 or n <= 1:
        for i in range(n):
            run(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(n)))
    errors.sort(key=lambda pair: pair[0])
    embeddings = [e for e in results if e is not None]
    return DatasetEmbedding(embeddings, manifest, errors, timings)
