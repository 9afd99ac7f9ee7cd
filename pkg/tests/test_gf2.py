from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rwlab.errors import PreconditionError, ResourceLimitError
from rwlab.gf2 import (
    GF2Matrix, biadjacency, cut_rank, cut_rank_masks, gf2_rank, neighborhood_count,
    neighborhood_count_masks, rank_of_rows, union_closure,
)
from rwlab.graph import Graph, plain

from conftest import graphs


def brute_rank(rows: list[int], n_cols: int) -> int:
    # size of the row space is 2^rank
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    return len(span).bit_length() - 1


def test_identity_and_zero():
    assert GF2Matrix.from_lists([[1, 0], [0, 1]]).rank() == 2
    assert GF2Matrix.from_lists([[0, 0], [0, 0]]).rank() == 0
    assert GF2Matrix.from_lists([[1, 1], [1, 1]]).rank() == 1


def test_dependent_rows():
    m = GF2Matrix.from_lists([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert gf2_rank(m) == 2


def test_entry_and_transpose():
    m = GF2Matrix.from_lists([[1, 0, 1], [0, 1, 1]])
    t = m.transpose()
    assert (t.n_rows, t.n_cols) == (3, 2)
    assert all(m.entry(r, c) == t.entry(c, r) for r in range(2) for c in range(3))


@given(st.lists(st.integers(0, 255), max_size=10))
def test_rank_matches_span_size(rows):
    assert rank_of_rows(rows) == brute_rank(rows, 8)


@given(st.lists(st.lists(st.integers(0, 1), min_size=5, max_size=5), min_size=1, max_size=6))
def test_rank_transpose_invariant(data):
    m = GF2Matrix.from_lists(data)
    assert m.rank() == m.transpose().rank() <= min(m.n_rows, m.n_cols)


def test_cut_rank_of_matching_and_biclique():
    matching = Graph.from_edges(6, [(0, 3), (1, 4), (2, 5)])
    a, b = [plain(0), plain(1), plain(2)], [plain(3), plain(4), plain(5)]
    assert cut_rank(matching, a, b) == 3
    biclique = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
    assert cut_rank(biclique, a, b) == 1


def test_cut_rank_rejects_overlap():
    g = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(PreconditionError):
        cut_rank(g, [plain(0), plain(1)], [plain(1), plain(2)])


def test_biadjacency_matches_cut_rank():
    g = Graph.from_edges(5, [(0, 2), (0, 3), (1, 3), (1, 4)])
    a, b = [plain(0), plain(1)], [plain(2), plain(3), plain(4)]
    assert gf2_rank(biadjacency(g, a, b)) == cut_rank(g, a, b) == 2


@given(graphs(min_n=2, max_n=9), st.data())
def test_cut_rank_symmetric(g, data):
    a = data.draw(st.integers(1, g.all_mask - 1))
    b = g.all_mask & ~a
    assert cut_rank_masks(g, a, b) == cut_rank_masks(g, b, a)


def test_union_closure_counts_and_cap():
    closure, saturated = union_closure([1, 2, 4])
    assert closure == set(range(8)) and not saturated
    _, saturated = union_closure([1, 2, 4, 8], cap=5)
    assert saturated


def brute_neighborhoods(g: Graph, amask: int, bmask: int) -> int:
    verts = [v for v in range(g.n) if amask >> v & 1]
    seen = set()
    for r in range(len(verts) + 1):
        for xs in itertools.combinations(verts, r):
            nb = 0
            for v in xs:
                nb |= g.adj[v]
            seen.add(nb & bmask)
    return len(seen)


@given(graphs(min_n=2, max_n=8), st.data())
def test_neighborhood_count_brute_force(g, data):
    a = data.draw(st.integers(1, g.all_mask - 1))
    b = g.all_mask & ~a
    count, saturated = neighborhood_count_masks(g, a, b)
    assert not saturated and count == brute_neighborhoods(g, a, b)
    # a chain of r independent rows already gives r + 1 unions; rows span at most 2^r vectors
    r = cut_rank_masks(g, a, b)
    assert r + 1 <= count <= 1 << (1 << r)


def test_neighborhood_count_guard():
    g = Graph.from_edges(44, [(i, 22 + i) for i in range(22)])
    a = [plain(i) for i in range(22)]
    b = [plain(22 + i) for i in range(22)]
    with pytest.raises(ResourceLimitError):
        neighborhood_count(g, a, b, limit=5, cap=1000)
