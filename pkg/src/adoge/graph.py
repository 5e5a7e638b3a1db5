"""Node-attributed undirected graphs and their normalized shift operator.

A graph is a set of ``n`` nodes, a list of weighted undirected edges, and an
``n x d`` table of raw node attributes described by a schema shared across a
dataset. Spectral work happens on the symmetrically normalized adjacency

    S = D^{-1/2} W D^{-1/2},

whose eigenvalues lie in [-1, 1]; rows of isolated nodes are zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .errors import (
    DimensionMismatch,
    DuplicateEdge,
    IndexOutOfRange,
    NonPositiveWeight,
    UnknownCategoricalValue,
)

CATEGORICAL = "categorical"
BINARY = "binary"
CONTINUOUS = "continuous"

_KINDS = (CATEGORICAL, BINARY, CONTINUOUS)


@dataclass(frozen=True)
class AttributeColumn:
    """One attribute column: a name, a kind, and (if discrete) its domain.

    ``domain`` is the ordered tuple of admissible raw values for categorical
    and binary columns; it is ``None`` for continuous columns. Binary columns
    are treated exactly like two-value categorical columns.
    """

    name: str
    kind: str
    domain: tuple | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown column kind {self.kind!r}")
        if self.kind in (CATEGORICAL, BINARY):
            if not self.domain:
                raise ValueError(f"column {self.name!r}: empty domain")
            object.__setattr__(self, "domain", tuple(self.domain))
        elif self.domain is not None:
            raise ValueError(f"column {self.name!r}: continuous columns have no domain")

    @property
    def width(self) -> int:
        """Number of attribute vectors this column expands to."""
        return len(self.domain) if self.domain is not None else 1


@dataclass(frozen=True)
class AttributeSchema:
    """Ordered attribute columns shared by every graph in a dataset."""

    columns: tuple[AttributeColumn, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError("duplicate column names in schema")

    def __len__(self) -> int:
        return len(self.columns)

    def expanded_dim(self, include_degree: bool = False) -> int:
        """Total number of attribute vectors the schema expands to."""
        return sum(c.width for c in self.columns) + (1 if include_degree else 0)

    def vector_labels(self, include_degree: bool = False) -> list[str]:
        """Labels of the expanded attribute vectors, in expansion order."""
        labels = []
        for col in self.columns:
            if col.domain is not None:
                labels.extend(f"attr:{col.name}={v}" for v in col.domain)
            else:
                labels.append(f"attr:{col.name}")
        if include_degree:
            labels.append("degree")
        return labels


@dataclass(frozen=True)
class AttributeOptions:
    """Options controlling attribute-vector expansion."""

    include_degree: bool = False


@dataclass(frozen=True)
class AttributeVector:
    """A node-indexed vector derived from the attribute table.

    ``norm_sq`` caches ``sum(values**2)``; a zero norm marks a vector whose
    spectral density is identically zero (callers short-circuit on it).
    """

    label: str
    values: np.ndarray
    norm_sq: float

    @classmethod
    def from_values(cls, label: str, values) -> "AttributeVector":
        values = np.ascontiguousarray(values, dtype=np.float64)
        if values.ndim != 1:
            raise DimensionMismatch("attribute vector must be 1-d")
        return cls(label, values, float(values @ values))


@dataclass(frozen=True)
class Graph:
    """An undirected weighted graph with raw node attributes.

    Edges are stored once per undirected pair as ``(i, j, weight)`` with
    ``i <= j``; the adjacency property materializes the symmetric sparse
    matrix (self-loop weights appear once on the diagonal).
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]
    attribute_table: np.ndarray
    schema: AttributeSchema
    graph_id: int | None = None
    _adjacency_cache: list = field(default_factory=list, repr=False, compare=False)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> sparse.csr_array:
        """Symmetric weighted adjacency in CSR form (built once, cached)."""
        if not self._adjacency_cache:
            if self.edges:
                ii = np.array([e[0] for e in self.edges], dtype=np.int64)
                jj = np.array([e[1] for e in self.edges], dtype=np.int64)
                ww = np.array([e[2] for e in self.edges], dtype=np.float64)
                off = ii != jj
                rows = np.concatenate([ii, jj[off]])
                cols = np.concatenate([jj, ii[off]])
                vals = np.concatenate([ww, ww[off]])
            else:
                rows = cols = np.empty(0, dtype=np.int64)
                vals = np.empty(0, dtype=np.float64)
            adj = sparse.csr_array(
                (vals, (rows, cols)), shape=(self.n, self.n), dtype=np.float64
            )
            adj.sum_duplicates()
            self._adjacency_cache.append(adj)
        return self._adjacency_cache[0]

    @property
    def degrees(self) -> np.ndarray:
        """Weighted degrees (row sums of the adjacency)."""
        return np.asarray(self.adjacency.sum(axis=1)).reshape(-1)


@dataclass(frozen=True)
class ShiftOperator:
    """The symmetrically normalized adjacency acting as a graph shift.

    ``rows`` stores the full symmetric matrix in CSR; isolated nodes give
    zero rows. The spectrum is contained in [-1, 1].
    """

    n: int
    rows: sparse.csr_array

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.rows @ x

    __matmul__ = matvec


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int, float]],
    attribute_table=None,
    schema: AttributeSchema | None = None,
    graph_id: int | None = None,
) -> Graph:
    """Validate and construct a :class:`Graph`.

    Parameters
    ----------
    n : int
        Node count, at least 1.
    edges : iterable of (i, j, weight)
        Undirected edges, 0-indexed. Listing a pair twice (in either
        orientation) is rejected; self-loops are permitted. Weights must be
        strictly positive.
    attribute_table : array-like of shape (n, d), optional
        Raw attribute values, one row per node, columns in schema order.
        Omitted or empty means a plain graph (d = 0).
    schema : AttributeSchema, optional
        Column descriptions; defaults to the empty schema.
    graph_id : int, optional
        Identifier carried through to embeddings and CSV output.

    Raises
    ------
    IndexOutOfRange, DuplicateEdge, NonPositiveWeight, DimensionMismatch
    """
    n = int(n)
    if n < 1:
        raise DimensionMismatch(f"graph needs at least one node, got n={n}")
    schema = schema if schema is not None else AttributeSchema()

    canon: dict[tuple[int, int], float] = {}
    for e in edges:
        try:
            i, j, w = e
        except (TypeError, ValueError):
            i, j = e  # type: ignore[misc]
            w = 1.0
        i, j, w = int(i), int(j), float(w)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"edge ({i}, {j}) outside [0, {n})")
        if w <= 0.0:
            raise NonPositiveWeight(f"edge ({i}, {j}) has weight {w}")
        key = (i, j) if i <= j else (j, i)
        if key in canon:
            raise DuplicateEdge(f"undirected edge {key} listed more than once")
        canon[key] = w
    edge_tuple = tuple((i, j, w) for (i, j), w in canon.items())

    d = len(schema)
    if attribute_table is None:
        table = np.empty((n, 0), dtype=object)
    else:
        table = np.asarray(attribute_table, dtype=object)
        if table.ndim == 1:
            table = table.reshape(n, -1) if table.size else table.reshape(n, 0)
    if table.shape != (n, d):
        raise DimensionMismatch(
            f"attribute table shape {table.shape} does not match (n={n}, d={d})"
        )
    return Graph(n, edge_tuple, table, schema, graph_id)


def normalize_adjacency(g: Graph) -> ShiftOperator:
    """Return the shift operator S = D^{-1/2} W D^{-1/2} of a graph.

    Rows and columns of zero-degree nodes are identically zero, which pins
    an eigenvalue at 0 for each isolated node; all eigenvalues lie in
    [-1, 1] because the weights are nonnegative.
    """
    adj = g.adjacency
    deg = np.asarray(adj.sum(axis=1)).reshape(-1)
    with np.errstate(divide="ignore"):
        dinv = np.where(deg > 0.0, 1.0 / np.sqrt(deg), 0.0)
    scaled = adj.multiply(dinv[:, None]).multiply(dinv[None, :])
    return ShiftOperator(g.n, sparse.csr_array(scaled))


def _standardize(x: np.ndarray) -> np.ndarray:
    # Population standardization; constant columns map to the zero vector.
    mu = x.mean()
    centered = x - mu
    std = np.sqrt(np.mean(centered * centered))
    if std == 0.0 or not np.isfinite(1.0 / std):
        return np.zeros_like(x)
    return centered / std


def attribute_vectors(g: Graph, opts: AttributeOptions = AttributeOptions()) -> list[AttributeVector]:
    """Expand a graph's attribute table into spectral-density probe vectors.

    Categorical and binary columns yield one 0/1 indicator vector per domain
    value (in domain order); continuous columns yield the standardized column
    (zero-variance columns map to the zero vector). When
    ``opts.include_degree`` is set, the standardized weighted-degree vector is
    appended last. The output order defines the attribute dimension D used by
    the embedding layout.

    Raises
    ------
    UnknownCategoricalValue
        If a table entry falls outside its column's domain.
    """
    out: list[AttributeVector] = []
    table = g.attribute_table
    for j, col in enumerate(g.schema.columns):
        column = table[:, j]
        if col.domain is not None:
            seen = set(column.tolist())
            extra = seen - set(col.domain)
            if extra:
                raise UnknownCategoricalValue(
                    f"column {col.name!r}: value(s) {sorted(map(repr, extra))} outside domain"
                )
            for val in col.domain:
                ind = np.fromiter((1.0 if x == val else 0.0 for x in column),
                                  dtype=np.float64, count=g.n)
                out.append(AttributeVector.from_values(f"attr:{col.name}={val}", ind))
        else:
            try:
                values = column.astype(np.float64)
            except (TypeError, ValueError) as exc:
                raise UnknownCategoricalValue(
                    f"column {col.name!r}: non-numeric value in continuous column"
                ) from exc
            out.append(AttributeVector.from_values(f"attr:{col.name}", _standardize(values)))
    if opts.include_degree:
        out.append(AttributeVector.from_values("degree", _standardize(g.degrees)))
    return out
