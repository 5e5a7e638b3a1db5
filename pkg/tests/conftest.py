"""Shared fixtures: tiny closed-form graphs and random-graph helpers."""

import numpy as np
import pytest

from adoge import (
    AttributeColumn,
    AttributeSchema,
    build_graph,
    normalize_adjacency,
    random_er_graph,
)


@pytest.fixture
def k2():
    """Single unit-weight edge; normalized spectrum {-1, +1}."""
    return build_graph(2, [(0, 1, 1.0)])


@pytest.fixture
def k3():
    """Unit-weight triangle; normalized spectrum {-1/2, -1/2, 1}."""
    return build_graph(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])


@pytest.fixture
def star4():
    """Star with 3 leaves; normalized spectrum {-1, 0, 0, 1}."""
    return build_graph(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)])


@pytest.fixture
def path3():
    """Path on 3 nodes; normalized spectrum {-1, 0, 1}."""
    return build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)])


@pytest.fixture
def k2_op(k2):
    return normalize_adjacency(k2)


def er_graph(rng, n_lo=8, n_hi=64, p=0.3, min_degree_one=True):
    """Weighted ER graph with the sizes used throughout the suite."""
    n = int(rng.integers(n_lo, n_hi + 1))
    return random_er_graph(n, p=p, rng=rng, min_degree_one=min_degree_one)


def toy_schema(n_cat=2, n_cont=1):
    cols = []
    if n_cat:
        cols.append(
            AttributeColumn("label", "categorical", tuple(range(n_cat)))
        )
    for j in range(n_cont):
        cols.append(AttributeColumn(f"x{j}", "continuous"))
    return AttributeSchema(tuple(cols))
