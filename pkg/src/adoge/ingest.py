"""Dataset ingestion: TUDataset text bundles and simple edge-list files.

The TUDataset layout is a directory of parallel text files sharing a prefix:
``{p}_A.txt`` (1-indexed, comma-separated edge pairs, conventionally listing
both orientations of every edge), ``{p}_graph_indicator.txt`` (graph id of
each node), and optional ``{p}_node_labels.txt`` (one integer per node, one
shared categorical column), ``{p}_node_attributes.txt`` (comma-separated
reals, the continuous columns), ``{p}_edge_attributes.txt`` (field 1 is the
edge weight) and ``{p}_graph_labels.txt``.

The edge-list format holds a single graph: one ``i j [weight]`` line per
undirected edge, 0-indexed, plus an optional attribute table whose first
line names the columns and whose second line ``#kind ...`` declares each as
categorical, binary, or continuous. Discrete domains are inferred from the
observed values in sorted order.
"""

from __future__ import annotations

import warnings as _warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    CrossGraphEdge,
    DimensionMismatch,
    DuplicateEdge,
    InconsistentNodeCount,
    MalformedLine,
    MissingRequiredFile,
    NegativeWeight,
)
from .graph import (
    BINARY,
    CATEGORICAL,
    CONTINUOUS,
    AttributeColumn,
    AttributeSchema,
    Graph,
    build_graph,
)


@dataclass(frozen=True)
class GraphDataset:
    """A named collection of graphs sharing one attribute schema."""

    name: str
    graphs: tuple[Graph, ...]
    schema: AttributeSchema
    graph_labels: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        for g in self.graphs:
            if g.schema != self.schema:
                raise DimensionMismatch(
                    f"graph {g.graph_id} does not share the dataset schema"
                )
        if self.graph_labels is not None:
            object.__setattr__(self, "graph_labels", tuple(self.graph_labels))
            if len(self.graph_labels) != len(self.graphs):
                raise InconsistentNodeCount(
                    f"{len(self.graph_labels)} graph labels for {len(self.graphs)} graphs"
                )

    def __len__(self) -> int:
        return len(self.graphs)


def _lines(path: Path) -> list[str]:
    return path.read_text().splitlines()


def _parse_int(path: Path, line_no: int, text: str) -> int:
    try:
        return int(text.strip())
    except ValueError as exc:
        raise MalformedLine(path, line_no, f"expected integer, got {text.strip()!r}") from exc


def _tud_prefix(directory: Path) -> str:
    hits = sorted(directory.glob("*_A.txt"))
    if not hits:
        raise MissingRequiredFile(f"no *_A.txt under {directory}")
    if len(hits) > 1:
        raise MissingRequiredFile(
            f"ambiguous dataset: multiple *_A.txt under {directory}"
        )
    return hits[0].name[: -len("_A.txt")]


def load_tudataset(directory) -> GraphDataset:
    """Load a TUDataset-format directory into a :class:`GraphDataset`.

    Nodes are renumbered 0-based within each graph in file order; graphs are
    ordered by ascending graph id. Mirrored edge pairs collapse to one
    undirected edge (weight taken from the first occurrence); an edge file
    that is not fully mirrored is accepted with a warning.

    Raises
    ------
    MissingRequiredFile, MalformedLine, InconsistentNodeCount, CrossGraphEdge,
    DuplicateEdge
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise MissingRequiredFile(f"{directory} is not a directory")
    prefix = _tud_prefix(directory)

    indicator_path = directory / f"{prefix}_graph_indicator.txt"
    if not indicator_path.is_file():
        raise MissingRequiredFile(f"missing {indicator_path.name}")
    indicator = [
        _parse_int(indicator_path, i + 1, t)
        for i, t in enumerate(_lines(indicator_path))
    ]
    total_nodes = len(indicator)
    if total_nodes == 0:
        raise InconsistentNodeCount(f"{indicator_path.name} declares no nodes")
    graph_ids = sorted(set(indicator))
    local_index = np.empty(total_nodes, dtype=np.int64)
    sizes = {gid: 0 for gid in graph_ids}
    for k, gid in enumerate(indicator):
        local_index[k] = sizes[gid]
        sizes[gid] += 1

    # --- edges -------------------------------------------------------------
    a_path = directory / f"{prefix}_A.txt"
    edge_lines = _lines(a_path)
    weights_path = directory / f"{prefix}_edge_attributes.txt"
    edge_weights: list[float] | None = None
    if weights_path.is_file():
        edge_weights = []
        warned_extra = False
        w_lines = _lines(weights_path)
        if len(w_lines) != len(edge_lines):
            raise InconsistentNodeCount(
                f"{weights_path.name} has {len(w_lines)} lines, "
                f"{a_path.name} has {len(edge_lines)}"
            )
        for i, t in enumerate(w_lines):
            fields = t.split(",")
            if len(fields) > 1 and not warned_extra:
                _warnings.warn(
                    f"{weights_path.name}: using field 1 as weight, "
                    f"ignoring {len(fields) - 1} extra field(s)"
                )
                warned_extra = True
            try:
                edge_weights.append(float(fields[0]))
            except ValueError as exc:
                raise MalformedLine(weights_path, i + 1, "bad weight") from exc

    per_graph_edges: dict[int, dict[tuple[int, int], float]] = {
        gid: {} for gid in graph_ids
    }
    seen_oriented: set[tuple[int, int]] = set()
    canon_orientations: dict[tuple[int, int], int] = {}
    for i, t in enumerate(edge_lines):
        fields = t.split(",")
        if len(fields) != 2:
            raise MalformedLine(a_path, i + 1, "expected 'u, v'")
        u = _parse_int(a_path, i + 1, fields[0])
        v = _parse_int(a_path, i + 1, fields[1])
        if not (1 <= u <= total_nodes and 1 <= v <= total_nodes):
            raise MalformedLine(a_path, i + 1, f"node id outside [1, {total_nodes}]")
        if (u, v) in seen_oriented:
            raise DuplicateEdge(f"{a_path.name}:{i + 1}: edge ({u}, {v}) repeated")
        seen_oriented.add((u, v))
        gu, gv = indicator[u - 1], indicator[v - 1]
        if gu != gv:
            raise CrossGraphEdge(
                f"{a_path.name}:{i + 1}: nodes {u} and {v} belong to graphs {gu} and {gv}"
            )
        key = (u, v) if u <= v else (v, u)
        if key not in canon_orientations:
            canon_orientations[key] = 1
            w = edge_weights[i] if edge_weights is not None else 1.0
            per_graph_edges[gu][
                (int(local_index[u - 1]), int(local_index[v - 1]))
            ] = w
        else:
            canon_orientations[key] += 1

    offdiag = [k for k in canon_orientations if k[0] != k[1]]
    if offdiag and not all(canon_orientations[k] == 2 for k in offdiag):
        if all(canon_orientations[k] == 1 for k in offdiag):
            _warnings.warn(f"{a_path.name}: edge file is not mirrored")
        else:
            _warnings.warn(f"{a_path.name}: edge file is inconsistently mirrored")

    # --- node attributes ----------------------------------------------------
    columns: list[AttributeColumn] = []
    labels: list[int] | None = None
    labels_path = directory / f"{prefix}_node_labels.txt"
    if labels_path.is_file():
        rows = _lines(labels_path)
        if len(rows) != total_nodes:
            raise InconsistentNodeCount(
                f"{labels_path.name} has {len(rows)} lines for {total_nodes} nodes"
            )
        labels = [_parse_int(labels_path, i + 1, t) for i, t in enumerate(rows)]
        columns.append(
            AttributeColumn("label", CATEGORICAL, tuple(sorted(set(labels))))
        )

    attrs_path = directory / f"{prefix}_node_attributes.txt"
    attr_rows: list[list[float]] | None = None
    if attrs_path.is_file():
        rows = _lines(attrs_path)
        if len(rows) != total_nodes:
            raise InconsistentNodeCount(
                f"{attrs_path.name} has {len(rows)} lines for {total_nodes} nodes"
            )
        attr_rows = []
        width = None
        for i, t in enumerate(rows):
            try:
                vals = [float(x) for x in t.split(",")]
            except ValueError as exc:
                raise MalformedLine(attrs_path, i + 1, "bad real value") from exc
            if width is None:
                width = len(vals)
            elif len(vals) != width:
                raise MalformedLine(
                    attrs_path, i + 1, f"expected {width} fields, got {len(vals)}"
                )
            attr_rows.append(vals)
        columns.extend(
            AttributeColumn(f"x{j}", CONTINUOUS) for j in range(width or 0)
        )

    schema = AttributeSchema(tuple(columns))

    # --- graph labels ---------------------------------------------------------
    glabels_path = directory / f"{prefix}_graph_labels.txt"
    graph_labels: tuple[int, ...] | None = None
    if glabels_path.is_file():
        rows = _lines(glabels_path)
        if len(rows) != len(graph_ids):
            raise InconsistentNodeCount(
                f"{glabels_path.name} has {len(rows)} lines for {len(graph_ids)} graphs"
            )
        graph_labels = tuple(
            _parse_int(glabels_path, i + 1, t) for i, t in enumerate(rows)
        )

    # --- assemble ----------------------------------------------------------
    node_rows: dict[int, list[list]] = {gid: [] for gid in graph_ids}
    for k, gid in enumerate(indicator):
        row: list = []
        if labels is not None:
            row.append(labels[k])
        if attr_rows is not None:
            row.extend(attr_rows[k])
        node_rows[gid].append(row)

    graphs = []
    for gid in graph_ids:
        n = sizes[gid]
        table = np.empty((n, len(schema)), dtype=object)
        for r, row in enumerate(node_rows[gid]):
            for c, val in enumerate(row):
                table[r, c] = val
        edges = [(i, j, w) for (i, j), w in per_graph_edges[gid].items()]
        graphs.append(build_graph(n, edges, table, schema, graph_id=gid))
    return GraphDataset(prefix, tuple(graphs), schema, graph_labels)


def save_tudataset(ds: GraphDataset, directory, prefix: str | None = None) -> Path:
    """Write a dataset back out in TUDataset format (mirrored edge file).

    The format itself is nameless: on reload the categorical column is named
    ``label`` and continuous columns ``x0..``; datasets loaded from this
    format round-trip exactly. At most one categorical column (with integer
    domain) can be represented.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    prefix = prefix or ds.name

    cats = [c for c in ds.schema.columns if c.domain is not None]
    conts = [c for c in ds.schema.columns if c.domain is None]
    if len(cats) > 1:
        raise ValueError("TUDataset format carries at most one categorical column")
    if cats and ds.schema.columns[0] is not cats[0]:
        raise ValueError("the categorical column must come first in the schema")
    if cats and not all(isinstance(v, (int, np.integer)) for v in cats[0].domain):
        raise ValueError("TUDataset node labels must be integers")

    a_lines: list[str] = []
    w_lines: list[str] = []
    ind_lines: list[str] = []
    label_lines: list[str] = []
    attr_lines: list[str] = []
    offset = 0
    for pos, g in enumerate(ds.graphs, start=1):
        for i, j, w in g.edges:
            u, v = offset + i + 1, offset + j + 1
            a_lines.append(f"{u}, {v}")
            w_lines.append(f"{w:.17g}")
            if u != v:
                a_lines.append(f"{v}, {u}")
                w_lines.append(f"{w:.17g}")
        ind_lines.extend([str(pos)] * g.n)
        for r in range(g.n):
            row = g.attribute_table[r]
            col = 0
            if cats:
                label_lines.append(str(int(row[0])))
                col = 1
            if conts:
                attr_lines.append(
                    ", ".join(f"{float(x):.17g}" for x in row[col:])
                )
        offset += g.n

    (directory / f"{prefix}_A.txt").write_text("\n".join(a_lines) + "\n" if a_lines else "")
    (directory / f"{prefix}_edge_attributes.txt").write_text(
        "\n".join(w_lines) + "\n" if w_lines else ""
    )
    (directory / f"{prefix}_graph_indicator.txt").write_text("\n".join(ind_lines) + "\n")
    if cats:
        (directory / f"{prefix}_node_labels.txt").write_text("\n".join(label_lines) + "\n")
    if conts:
        (directory / f"{prefix}_node_attributes.txt").write_text("\n".join(attr_lines) + "\n")
    if ds.graph_labels is not None:
        (directory / f"{prefix}_graph_labels.txt").write_text(
            "\n".join(str(x) for x in ds.graph_labels) + "\n"
        )
    return directory


_EDGELIST_KINDS = {"categorical": CATEGORICAL, "binary": BINARY, "continuous": CONTINUOUS}


def _load_attr_table(path: Path):
    lines = _lines(path)
    if len(lines) < 2:
        raise MalformedLine(path, max(len(lines), 1), "need a name row and a #kind row")
    names = lines[0].split()
    kind_fields = lines[1].split()
    if not kind_fields or kind_fields[0] != "#kind":
        raise MalformedLine(path, 2, "second line must start with '#kind'")
    kinds = kind_fields[1:]
    if len(kinds) != len(names):
        raise MalformedLine(path, 2, f"{len(kinds)} kinds for {len(names)} columns")
    for k in kinds:
        if k not in _EDGELIST_KINDS:
            raise MalformedLine(path, 2, f"unknown kind {k!r}")
    rows: list[list[str]] = []
    for i, t in enumerate(lines[2:], start=3):
        if not t.strip() or t.lstrip().startswith("#"):
            continue
        fields = t.split()
        if len(fields) != len(names):
            raise MalformedLine(path, i, f"expected {len(names)} fields, got {len(fields)}")
        rows.append(fields)
    return names, [_EDGELIST_KINDS[k] for k in kinds], rows


def load_edgelist(graph_file, attr_file=None, graph_id: int | None = None) -> Graph:
    """Load one graph from an edge-list file plus optional attribute table.

    Edge lines are ``i j`` or ``i j weight`` (0-indexed, whitespace
    separated; blank lines and ``#`` comments are skipped; weight defaults
    to 1). With no attribute file the node count is the largest endpoint
    plus one and the schema is empty; otherwise one table row per node fixes
    the node count, and discrete domains are the sorted observed values.

    Raises
    ------
    MalformedLine, NegativeWeight, InconsistentNodeCount
    """
    graph_file = Path(graph_file)
    if not graph_file.is_file():
        raise MissingRequiredFile(f"missing edge-list file {graph_file}")
    edges: list[tuple[int, int, float]] = []
    max_node = -1
    for i, t in enumerate(_lines(graph_file), start=1):
        s = t.strip()
        if not s or s.startswith("#"):
            continue
        fields = s.split()
        if len(fields) not in (2, 3):
            raise MalformedLine(graph_file, i, "expected 'i j [weight]'")
        try:
            u, v = int(fields[0]), int(fields[1])
            w = float(fields[2]) if len(fields) == 3 else 1.0
        except ValueError as exc:
            raise MalformedLine(graph_file, i, "bad field") from exc
        if u < 0 or v < 0:
            raise MalformedLine(graph_file, i, "negative node index")
        if w < 0.0:
            raise NegativeWeight(f"{graph_file.name}:{i}: weight {w} is negative")
        edges.append((u, v, w))
        max_node = max(max_node, u, v)

    if attr_file is None:
        n = max_node + 1 if max_node >= 0 else 1
        return build_graph(n, edges, None, AttributeSchema(), graph_id=graph_id)

    attr_file = Path(attr_file)
    if not attr_file.is_file():
        raise MissingRequiredFile(f"missing attribute file {attr_file}")
    names, kinds, rows = _load_attr_table(attr_file)
    n = len(rows)
    if n == 0:
        raise InconsistentNodeCount(f"{attr_file.name} has no data rows")
    if max_node >= n:
        raise InconsistentNodeCount(
            f"{graph_file.name} references node {max_node}, "
            f"but {attr_file.name} has only {n} rows"
        )
    table = np.empty((n, len(names)), dtype=object)
    columns = []
    for c, (name, kind) in enumerate(zip(names, kinds)):
        raw = [rows[r][c] for r in range(n)]
        if kind == CONTINUOUS:
            for r, x in enumerate(raw):
                try:
                    table[r, c] = float(x)
                except ValueError as exc:
                    raise MalformedLine(
                        attr_file, r + 3, f"column {name!r}: bad real value {x!r}"
                    ) from exc
            columns.append(AttributeColumn(name, CONTINUOUS))
        else:
            domain = tuple(sorted(set(raw)))
            if kind == BINARY and len(domain) > 2:
                raise MalformedLine(
                    attr_file, 2, f"binary column {name!r} has {len(domain)} values"
                )
            for r, x in enumerate(raw):
                table[r, c] = x
            columns.append(AttributeColumn(name, kind, domain))
    return build_graph(n, edges, table, AttributeSchema(tuple(columns)), graph_id=graph_id)


def load_edgelist_dataset(directory, pattern: str = "*.edges") -> GraphDataset:
    """Load a directory of edge-list graphs as one dataset.

    Files matching ``pattern`` are taken in sorted order, each with an
    optional sibling ``<stem>.attrs`` table. All graphs must agree on column
    names and kinds; discrete domains are unioned (sorted) into the shared
    schema.
    """
    directory = Path(directory)
    files = sorted(directory.glob(pattern))
    if not files:
        raise MissingRequiredFile(f"no {pattern} files under {directory}")
    loaded = []
    for pos, f in enumerate(files, start=1):
        attrs = f.with_suffix(".attrs")
        loaded.append(load_edgelist(f, attrs if attrs.is_file() else None, graph_id=pos))

    base = loaded[0].schema
    for g in loaded[1:]:
        if [(c.name, c.kind) for c in g.schema.columns] != [
            (c.name, c.kind) for c in base.columns
        ]:
            raise InconsistentNodeCount(
                "edge-list graphs disagree on attribute columns"
            )
    merged_cols = []
    for idx, col in enumerate(base.columns):
        if col.domain is None:
            merged_cols.append(col)
        else:
            union = sorted(set().union(*(g.schema.columns[idx].domain for g in loaded)))
            merged_cols.append(AttributeColumn(col.name, col.kind, tuple(union)))
    schema = AttributeSchema(tuple(merged_cols))
    graphs = tuple(
        Graph(g.n, g.edges, g.attribute_table, schema, g.graph_id) for g in loaded
    )
    return GraphDataset(directory.name, graphs, schema)
