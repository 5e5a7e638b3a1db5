"""Dataset loaders and writers: TUDataset directories and edge lists."""

import numpy as np
import pytest

from adoge import (
    CrossGraphEdge,
    DimensionMismatch,
    DuplicateEdge,
    GraphDataset,
    InconsistentNodeCount,
    MalformedLine,
    MissingRequiredFile,
    NegativeWeight,
    load_edgelist,
    load_edgelist_dataset,
    load_tudataset,
    random_attributed_dataset,
    save_tudataset,
)


def write_tud(tmp_path, prefix="tiny", **overrides):
    """Two graphs: a weighted edge (2 nodes) and a weighted path (3 nodes)."""
    files = {
        "_A.txt": "1, 2\n2, 1\n3, 4\n4, 3\n4, 5\n5, 4\n",
        "_graph_indicator.txt": "1\n1\n2\n2\n2\n",
        "_edge_attributes.txt": "1.5\n1.5\n2\n2\n0.5\n0.5\n",
        "_node_labels.txt": "0\n1\n1\n0\n2\n",
        "_node_attributes.txt": "0.1\n0.2\n0.3\n0.4\n0.5\n",
        "_graph_labels.txt": "1\n-1\n",
    }
    files.update(overrides)
    d = tmp_path / prefix
    d.mkdir()
    for suffix, text in files.items():
        if text is not None:
            (d / f"{prefix}{suffix}").write_text(text)
    return d


class TestLoadTUDataset:
    def test_basic_layout(self, tmp_path):
        ds = load_tudataset(write_tud(tmp_path))
        assert ds.name == "tiny"
        assert len(ds.graphs) == 2
        g1, g2 = ds.graphs
        assert (g1.n, g1.graph_id) == (2, 1)
        assert g1.edges == ((0, 1, 1.5),)
        assert (g2.n, g2.graph_id) == (3, 2)
        assert sorted(g2.edges) == [(0, 1, 2.0), (1, 2, 0.5)]
        assert ds.graph_labels == (1, -1)

    def test_schema_from_labels_and_attributes(self, tmp_path):
        ds = load_tudataset(write_tud(tmp_path))
        cols = ds.schema.columns
        assert [c.name for c in cols] == ["label", "x0"]
        assert cols[0].kind == "categorical" and cols[0].domain == (0, 1, 2)
        assert cols[1].kind == "continuous"
        g2 = ds.graphs[1]
        assert g2.attribute_table[:, 0].tolist() == [1, 0, 2]
        assert g2.attribute_table[:, 1].tolist() == [0.3, 0.4, 0.5]

    def test_optional_files_absent(self, tmp_path):
        d = write_tud(
            tmp_path,
            **{
                "_node_labels.txt": None,
                "_node_attributes.txt": None,
                "_graph_labels.txt": None,
                "_edge_attributes.txt": None,
            },
        )
        ds = load_tudataset(d)
        assert len(ds.schema) == 0
        assert ds.graph_labels is None
        assert ds.graphs[0].edges == ((0, 1, 1.0),)

    def test_multiline_attributes(self, tmp_path):
        d = write_tud(
            tmp_path,
            **{"_node_attributes.txt": "0.1, 9\n0.2, 8\n0.3, 7\n0.4, 6\n0.5, 5\n"},
        )
        ds = load_tudataset(d)
        assert [c.name for c in ds.schema.columns] == ["label", "x0", "x1"]

    def test_unmirrored_edges_warn(self, tmp_path):
        d = write_tud(
            tmp_path,
            **{"_A.txt": "1, 2\n3, 4\n4, 5\n", "_edge_attributes.txt": "1.5\n2\n0.5\n"},
        )
        with pytest.warns(UserWarning, match="not mirrored"):
            ds = load_tudataset(d)
        assert ds.graphs[0].edges == ((0, 1, 1.5),)

    def test_inconsistent_mirroring_warns(self, tmp_path):
        d = write_tud(
            tmp_path,
            **{
                "_A.txt": "1, 2\n2, 1\n3, 4\n4, 5\n",
                "_edge_attributes.txt": "1.5\n1.5\n2\n0.5\n",
            },
        )
        with pytest.warns(UserWarning, match="inconsistently mirrored"):
            load_tudataset(d)

    def test_mirror_weight_first_occurrence_wins(self, tmp_path):
        d = write_tud(
            tmp_path,
            **{
                "_A.txt": "1, 2\n2, 1\n3, 4\n4, 3\n4, 5\n5, 4\n",
                "_edge_attributes.txt": "1.5\n99\n2\n2\n0.5\n0.5\n",
            },
        )
        ds = load_tudataset(d)
        assert ds.graphs[0].edges == ((0, 1, 1.5),)

    def test_extra_edge_attribute_fields_warn(self, tmp_path):
        d = write_tud(
            tmp_path,
            **{"_edge_attributes.txt": "1.5, 7\n1.5, 7\n2, 7\n2, 7\n0.5, 7\n0.5, 7\n"},
        )
        with pytest.warns(UserWarning, match="extra field"):
            ds = load_tudataset(d)
        assert ds.graphs[0].edges == ((0, 1, 1.5),)

    def test_duplicate_oriented_edge(self, tmp_path):
        d = write_tud(
            tmp_path,
            **{
                "_A.txt": "1, 2\n1, 2\n3, 4\n4, 3\n4, 5\n5, 4\n",
            },
        )
        with pytest.raises(DuplicateEdge):
            load_tudataset(d)

    def test_cross_graph_edge(self, tmp_path):
        d = write_tud(
            tmp_path,
            **{"_A.txt": "1, 2\n2, 1\n2, 3\n3, 2\n4, 5\n5, 4\n"},
        )
        with pytest.raises(CrossGraphEdge):
            load_tudataset(d)

    def test_malformed_edge_line(self, tmp_path):
        d = write_tud(
            tmp_path, **{"_A.txt": "1 2\n", "_edge_attributes.txt": "1.5\n"}
        )
        with pytest.raises(MalformedLine) as err:
            load_tudataset(d)
        assert err.value.line_no == 1

    def test_node_id_out_of_range(self, tmp_path):
        d = write_tud(
            tmp_path,
            **{"_A.txt": "1, 6\n6, 1\n3, 4\n4, 3\n4, 5\n5, 4\n"},
        )
        with pytest.raises(MalformedLine):
            load_tudataset(d)

    def test_bad_integer(self, tmp_path):
        d = write_tud(tmp_path, **{"_graph_indicator.txt": "1\nx\n2\n2\n2\n"})
        with pytest.raises(MalformedLine):
            load_tudataset(d)

    def test_label_count_mismatch(self, tmp_path):
        d = write_tud(tmp_path, **{"_node_labels.txt": "0\n1\n"})
        with pytest.raises(InconsistentNodeCount):
            load_tudataset(d)

    def test_weight_count_mismatch(self, tmp_path):
        d = write_tud(tmp_path, **{"_edge_attributes.txt": "1.5\n"})
        with pytest.raises(InconsistentNodeCount):
            load_tudataset(d)

    def test_graph_label_count_mismatch(self, tmp_path):
        d = write_tud(tmp_path, **{"_graph_labels.txt": "1\n"})
        with pytest.raises(InconsistentNodeCount):
            load_tudataset(d)

    def test_empty_indicator(self, tmp_path):
        d = write_tud(tmp_path, **{"_graph_indicator.txt": ""})
        with pytest.raises(InconsistentNodeCount):
            load_tudataset(d)

    def test_missing_directory(self, tmp_path):
        with pytest.raises(MissingRequiredFile):
            load_tudataset(tmp_path / "nope")

    def test_missing_edge_file(self, tmp_path):
        d = tmp_path / "empty"
        d.mkdir()
        with pytest.raises(MissingRequiredFile):
            load_tudataset(d)

    def test_ambiguous_prefix(self, tmp_path):
        d = write_tud(tmp_path)
        (d / "other_A.txt").write_text("1, 2\n")
        with pytest.raises(MissingRequiredFile):
            load_tudataset(d)

    def test_missing_indicator(self, tmp_path):
        d = write_tud(tmp_path, **{"_graph_indicator.txt": None})
        with pytest.raises(MissingRequiredFile):
            load_tudataset(d)


class TestSaveTUDataset:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(30)
        ds = random_attributed_dataset(
            4, rng, n_low=3, n_high=8, n_cat_values=3, n_continuous=2
        )
        out = save_tudataset(ds, tmp_path / "rt")
        back = load_tudataset(out)
        assert back.schema == ds.schema
        assert back.graph_labels == ds.graph_labels
        assert len(back.graphs) == len(ds.graphs)
        for a, b in zip(ds.graphs, back.graphs):
            assert a.n == b.n
            assert sorted(a.edges) == sorted(b.edges)
            assert np.array_equal(a.attribute_table, b.attribute_table)

    def test_rejects_two_categorical_columns(self, tmp_path):
        from adoge import AttributeColumn, AttributeSchema, build_graph

        schema = AttributeSchema((
            AttributeColumn("a", "categorical", (0, 1)),
            AttributeColumn("b", "categorical", (0, 1)),
        ))
        g = build_graph(2, [(0, 1, 1.0)],
                        attribute_table=np.array([[0, 1], [1, 0]], dtype=object),
                        schema=schema)
        ds = GraphDataset("two", (g,), schema)
        with pytest.raises(ValueError):
            save_tudataset(ds, tmp_path / "two")

    def test_rejects_non_integer_domain(self, tmp_path):
        from adoge import AttributeColumn, AttributeSchema, build_graph

        schema = AttributeSchema((
            AttributeColumn("label", "categorical", ("a", "b")),
        ))
        g = build_graph(2, [(0, 1, 1.0)],
                        attribute_table=np.array([["a"], ["b"]], dtype=object),
                        schema=schema)
        ds = GraphDataset("str", (g,), schema)
        with pytest.raises(ValueError):
            save_tudataset(ds, tmp_path / "str")


class TestLoadEdgelist:
    def test_basic(self, tmp_path):
        f = tmp_path / "g.edges"
        f.write_text("# a comment\n0 1 2.5\n\n1 2\n")
        g = load_edgelist(f)
        assert g.n == 3
        assert sorted(g.edges) == [(0, 1, 2.5), (1, 2, 1.0)]
        assert len(g.schema) == 0

    def test_attribute_table(self, tmp_path):
        f = tmp_path / "g.edges"
        f.write_text("0 1\n")
        a = tmp_path / "g.attrs"
        a.write_text(
            "color temp\n#kind categorical continuous\nred 0.5\nblue 1.5\nred 2.5\n"
        )
        g = load_edgelist(f, a)
        assert g.n == 3
        cols = g.schema.columns
        assert cols[0].domain == ("blue", "red")
        assert cols[1].kind == "continuous"
        assert g.attribute_table[2, 1] == 2.5

    def test_binary_kind_capped_at_two_values(self, tmp_path):
        f = tmp_path / "g.edges"
        f.write_text("0 1\n")
        a = tmp_path / "g.attrs"
        a.write_text("flag\n#kind binary\n0\n1\n2\n")
        with pytest.raises(MalformedLine):
            load_edgelist(f, a)

    def test_negative_weight(self, tmp_path):
        f = tmp_path / "g.edges"
        f.write_text("0 1 -2.0\n")
        with pytest.raises(NegativeWeight):
            load_edgelist(f)

    def test_negative_index(self, tmp_path):
        f = tmp_path / "g.edges"
        f.write_text("-1 1\n")
        with pytest.raises(MalformedLine):
            load_edgelist(f)

    def test_bad_field_count(self, tmp_path):
        f = tmp_path / "g.edges"
        f.write_text("0 1 2 3\n")
        with pytest.raises(MalformedLine):
            load_edgelist(f)

    def test_node_beyond_attr_rows(self, tmp_path):
        f = tmp_path / "g.edges"
        f.write_text("0 5\n")
        a = tmp_path / "g.attrs"
        a.write_text("x\n#kind continuous\n1.0\n2.0\n")
        with pytest.raises(InconsistentNodeCount):
            load_edgelist(f, a)

    def test_bad_continuous_value(self, tmp_path):
        f = tmp_path / "g.edges"
        f.write_text("0 1\n")
        a = tmp_path / "g.attrs"
        a.write_text("x\n#kind continuous\n1.0\noops\n")
        with pytest.raises(MalformedLine):
            load_edgelist(f, a)

    def test_missing_kind_row(self, tmp_path):
        f = tmp_path / "g.edges"
        f.write_text("0 1\n")
        a = tmp_path / "g.attrs"
        a.write_text("x\n1.0\n2.0\n")
        with pytest.raises(MalformedLine):
            load_edgelist(f, a)

    def test_missing_files(self, tmp_path):
        with pytest.raises(MissingRequiredFile):
            load_edgelist(tmp_path / "nope.edges")
        f = tmp_path / "g.edges"
        f.write_text("0 1\n")
        with pytest.raises(MissingRequiredFile):
            load_edgelist(f, tmp_path / "nope.attrs")


class TestLoadEdgelistDataset:
    def make_pair(self, d, stem, edges, attr_text=None):
        (d / f"{stem}.edges").write_text(edges)
        if attr_text is not None:
            (d / f"{stem}.attrs").write_text(attr_text)

    def test_sorted_order_and_domain_union(self, tmp_path):
        self.make_pair(tmp_path, "b", "0 1\n", "c\n#kind categorical\n2\n3\n")
        self.make_pair(tmp_path, "a", "0 1\n", "c\n#kind categorical\n1\n2\n")
        ds = load_edgelist_dataset(tmp_path)
        assert [g.graph_id for g in ds.graphs] == [1, 2]
        # File "a" sorts first; domains union to (1, 2, 3).
        assert ds.schema.columns[0].domain == ("1", "2", "3")
        assert ds.graphs[0].attribute_table[0, 0] == "1"

    def test_schema_disagreement(self, tmp_path):
        self.make_pair(tmp_path, "a", "0 1\n", "c\n#kind categorical\n1\n2\n")
        self.make_pair(tmp_path, "b", "0 1\n", "d\n#kind categorical\n1\n2\n")
        with pytest.raises(InconsistentNodeCount):
            load_edgelist_dataset(tmp_path)

    def test_empty_directory(self, tmp_path):
        with pytest.raises(MissingRequiredFile):
            load_edgelist_dataset(tmp_path)

    def test_plain_graphs_share_empty_schema(self, tmp_path):
        self.make_pair(tmp_path, "a", "0 1\n")
        self.make_pair(tmp_path, "b", "0 1\n1 2\n")
        ds = load_edgelist_dataset(tmp_path)
        assert len(ds.schema) == 0
        assert [g.n for g in ds.graphs] == [2, 3]


class TestGraphDataset:
    def test_schema_mismatch_rejected(self):
        from adoge import AttributeSchema, build_graph

        g = build_graph(2, [(0, 1, 1.0)])
        other = AttributeSchema((
            __import__("adoge").AttributeColumn("x", "continuous"),
        ))
        with pytest.raises(DimensionMismatch):
            GraphDataset("bad", (g,), other)
