from __future__ import annotations


import pytest

from rwlab.decomposition import linear_width
from rwlab.errors import ResourceLimitError
from rwlab.graph import iter_bits
from rwlab.oracles import is_induced_matching
from rwlab.separation import (
    build_separation_instance, independent_subsets, induced_matching_across, measure_cut_boolean_dimension,
    split_every_leaf,
)


def test_vertex_counts():
    assert build_separation_instance(1).graph.n == 6
    assert build_separation_instance(2).graph.n == 72
    with pytest.raises(ResourceLimitError):
        build_separation_instance(4)


@pytest.mark.parametrize("k", [1, 2])
def test_width_certificate(k):
    inst = build_separation_instance(k)
    assert linear_width(inst.graph, inst.order).width <= 2 * k + 1


def test_cut_measurements():
    r1 = measure_cut_boolean_dimension(*_center_and_leaf(1))
    assert r1["cut_rank"] == 2 and r1["independent_neighborhood_count"] == 3
    r2 = measure_cut_boolean_dimension(*_center_and_leaf(2))
    assert r2["cut_rank"] == 4 and r2["independent_neighborhood_count"] == 25
    assert r2["log2_independent_neighborhood_count"] > r2["cut_rank"]
    g, _, leaf = _center_and_leaf(2)
    empty = measure_cut_boolean_dimension(g, [], leaf)
    assert empty["cut_rank"] == 0 and empty["neighborhood_count"] == empty["independent_neighborhood_count"] == 1


def _center_and_leaf(k):
    inst = build_separation_instance(k)
    return inst.graph, inst.center, inst.leaves[0]


def test_independent_selections_distinct_in_every_leaf():
    inst = build_separation_instance(2)
    g = inst.graph
    subsets = list(independent_subsets(g, g.mask(inst.center)))
    assert len(subsets) == 25
    for leaf in inst.leaves:
        lmask = g.mask(leaf)
        seen = set()
        for x in subsets:
            nb = 0
            for v in iter_bits(x):
                nb |= g.adj[v]
            seen.add(nb & lmask)
        assert len(seen) == 25


@pytest.mark.parametrize("k", [1, 2])
def test_induced_matching_across_split(k):
    inst = build_separation_instance(k)
    left, right = split_every_leaf(inst)
    edges = induced_matching_across(inst.graph, left, right, inst.leaves)
    assert len(edges) == k * k
    g = inst.graph
    assert is_induced_matching(g, [(g.index(u), g.index(v)) for u, v in edges])
