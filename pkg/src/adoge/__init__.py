"""Fixed-size whole-graph embeddings from spectral densities.

The pipeline: build an attributed graph, normalize its adjacency into a
shift operator with spectrum in [-1, 1], estimate global/local/cross
spectral density histograms with Lanczos-based Gauss quadrature, aggregate
them through Chebyshev and signed-power filterbanks, and concatenate the
blocks into one permutation- and size-invariant feature vector per graph.
"""

from .embedder import (
    ColumnDescriptor,
    ColumnManifest,
    DatasetEmbedding,
    Embedding,
    EmbeddingConfig,
    FRFTables,
    build_frf_tables,
    embed_dataset,
    embed_graph,
    feature_layout,
)
from .errors import (
    AdogeError,
    CrossGraphEdge,
    DimensionMismatch,
    DuplicateEdge,
    EigensolverFailure,
    EmptyFeatureSet,
    InconsistentNodeCount,
    IndexOutOfRange,
    MalformedLine,
    MissingRequiredFile,
    NegativeWeight,
    NonFiniteFeature,
    NonPositiveWeight,
    SizeCapExceeded,
    UnknownCategoricalValue,
    ZeroStartVector,
)
from .estimators import (
    EstimatorConfig,
    SpectralHistogram,
    bin_centers,
    bin_quadrature,
    bin_width,
    estimate_cldos_hist,
    estimate_dos_hist,
    estimate_ldos_hist,
    l1_distance,
    probe_vector,
)
from .filterbank import (
    FRFTable,
    aggregate,
    chebyshev_frf_table,
    power_frf_table,
)
from .graph import (
    AttributeColumn,
    AttributeOptions,
    AttributeSchema,
    AttributeVector,
    Graph,
    ShiftOperator,
    attribute_vectors,
    build_graph,
    normalize_adjacency,
)
from .ingest import (
    GraphDataset,
    load_edgelist,
    load_edgelist_dataset,
    load_tudataset,
    save_tudataset,
)
from .lanczos import (
    LanczosFactorization,
    QuadratureRule,
    gauss_quadrature,
    lanczos_tridiagonalize,
    tridiag_eigh_first_components,
    tridiagonal_quadrature,
)
from .oracle import (
    ExactSpectrum,
    exact_cldos_hist,
    exact_dos_hist,
    exact_ldos_hist,
    exact_spectrum,
    exact_trace_phi,
)
from .synth import (
    attach_random_attributes,
    permute_graph,
    random_attributed_dataset,
    random_er_graph,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
