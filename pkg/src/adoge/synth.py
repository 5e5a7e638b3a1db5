"""Synthetic graphs and datasets for demos, selfchecks, and benchmarks."""

from __future__ import annotations

import numpy as np

from .graph import (
    CATEGORICAL,
    CONTINUOUS,
    AttributeColumn,
    AttributeSchema,
    Graph,
    build_graph,
)
from .ingest import GraphDataset


def random_er_graph(
    n: int,
    p: float,
    rng: np.random.Generator,
    weight_high: float = 2.0,
    min_degree_one: bool = False,
    graph_id: int | None = None,
) -> Graph:
    """Erdos-Renyi graph with i.i.d. edge weights uniform on (0, weight_high].

    With ``min_degree_one`` every otherwise-isolated node is wired to one
    uniformly random other node, which keeps the shift operator free of
    exactly-zero rows (and of the zero eigenvalues they pin to a bin edge).
    """
    n = int(n)
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(iu.shape[0]) < p
    ii, jj = iu[mask], ju[mask]
    ww = (1.0 - rng.random(ii.shape[0])) * weight_high
    edges = list(zip(ii.tolist(), jj.tolist(), ww.tolist()))
    if min_degree_one and n > 1:
        touched = np.zeros(n, dtype=bool)
        touched[ii] = True
        touched[jj] = True
        for node in np.flatnonzero(~touched):
            if touched[node]:
                continue
            other = int(rng.integers(n - 1))
            other += other >= node
            w = float((1.0 - rng.random()) * weight_high)
            a, b = (node, other) if node < other else (other, node)
            edges.append((a, b, w))
            touched[node] = True
            touched[other] = True
    return build_graph(n, edges, None, AttributeSchema(), graph_id=graph_id)


def attach_random_attributes(
    g: Graph, schema: AttributeSchema, rng: np.random.Generator
) -> Graph:
    """Fill a random attribute table for ``g`` under the given schema."""
    table = np.empty((g.n, len(schema)), dtype=object)
    for c, col in enumerate(schema.columns):
        if col.domain is not None:
            draws = rng.integers(len(col.domain), size=g.n)
            for r in range(g.n):
                table[r, c] = col.domain[int(draws[r])]
        else:
            vals = rng.standard_normal(g.n)
            for r in range(g.n):
                table[r, c] = float(vals[r])
    return Graph(g.n, g.edges, table, schema, g.graph_id)


def random_attributed_dataset(
    num_graphs: int,
    rng: np.random.Generator,
    n_low: int = 8,
    n_high: int = 64,
    p: float = 0.3,
    n_cat_values: int = 3,
    n_continuous: int = 1,
    min_degree_one: bool = False,
    name: str = "synthetic",
) -> GraphDataset:
    """Random ER dataset with one categorical and some continuous columns."""
    cols = []
    if n_cat_values > 0:
        cols.append(AttributeColumn("label", CATEGORICAL, tuple(range(n_cat_values))))
    cols.extend(AttributeColumn(f"x{j}", CONTINUOUS) for j in range(n_continuous))
    schema = AttributeSchema(tuple(cols))
    graphs = []
    for gid in range(1, num_graphs + 1):
        n = int(rng.integers(n_low, n_high + 1))
        g = random_er_graph(n, p, rng, min_degree_one=min_degree_one, graph_id=gid)
        graphs.append(attach_random_attributes(g, schema, rng))
    return GraphDataset(name, tuple(graphs), schema)


def permute_graph(g: Graph, perm: np.ndarray) -> Graph:
    """Relabel nodes by ``perm`` (old index i becomes ``perm[i]``)."""
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(g.n)):
        raise ValueError("perm must be a permutation of range(n)")
    edges = [(int(perm[i]), int(perm[j]), w) for i, j, w in g.edges]
    table = np.empty_like(g.attribute_table)
    table[perm] = g.attribute_table
    return build_graph(g.n, edges, table, g.schema, graph_id=g.graph_id)
