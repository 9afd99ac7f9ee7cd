from __future__ import annotations

import itertools

import pytest

from rwlab.errors import PreconditionError, ResourceLimitError
from rwlab.formula import Collection
from rwlab.gf2 import rank_of_rows
from rwlab.universal_cut import (
    all_collections, build_universal_cut, enumerate_family, extend_collection, is_in_family, odd,
    rref_pivots, verify_distinct_neighborhoods, verify_family_equivalence, verify_neighborhood_size,
    verify_private_neighbors, witness_vector,
)


def C(k, *sets):
    return Collection.of(k, sets)


def subspace_count(k: int) -> int:
    """Distinct row spaces over all sets of vectors in GF(2)^k."""
    spaces = set()
    vectors = range(1, 1 << k)
    for r in range(k + 1):
        for rows in itertools.combinations(vectors, r):
            if rank_of_rows(rows) != r:
                continue
            span = {0}
            for x in rows:
                span |= {y ^ x for y in span}
            spaces.add(frozenset(span))
    return len(spaces)


def test_small_cuts():
    r1 = build_universal_cut(1)
    assert r1.graph.n == 4 and r1.graph.num_edges == 1
    assert r1.graph.has_edge(r1.a(1), r1.b(1))
    r2 = build_universal_cut(2)
    g = r2.graph
    assert g.neighbors(r2.a(0b11)) == {r2.b(0b01), r2.b(0b10)}
    for k in (1, 2, 3):
        cut = build_universal_cut(k)
        assert cut.graph.degree(cut.a(0)) == cut.graph.degree(cut.b(0)) == 0


def test_universal_cut_has_full_rank():
    from rwlab.gf2 import cut_rank
    for k in (1, 2, 3):
        cut = build_universal_cut(k)
        assert cut_rank(cut.graph, cut.side_a, cut.side_b) == k


def test_extension_examples():
    assert extend_collection(C(1)) == {C(2), C(2, [2])}
    assert extend_collection(C(1, [1])) == {C(2, [1]), C(2, [1, 2]), C(2, [1], [2])}
    s = C(3, [1], [2, 3])
    assert len(extend_collection(s)) == 2 ** len(s) + 1


def test_family_sizes_match_subspace_counts():
    assert enumerate_family(1) == {C(1), C(1, [1])}
    sizes = [len(enumerate_family(k)) for k in (1, 2, 3, 4)]
    assert sizes == [2, 5, 16, 67]
    assert sizes == [subspace_count(k) for k in (1, 2, 3, 4)]


def test_family_guard():
    with pytest.raises(ResourceLimitError):
        enumerate_family(5, guard=4)
    with pytest.raises(PreconditionError):
        enumerate_family(0)


def test_membership_examples():
    assert rref_pivots(C(2, [1], [2])) == (1, 2)
    assert not is_in_family(C(2, [1, 2], [2]))
    assert is_in_family(C(3))
    assert not is_in_family(Collection(2, (0,)))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_family_equivalence(k):
    report = verify_family_equivalence(k)
    assert report["ok"], report


def test_all_collections_count():
    assert sum(1 for _ in all_collections(2)) == 16


def test_witness_examples():
    assert witness_vector(C(2, [1], [2]), C(2, [1])) == 0b01
    assert witness_vector(C(2, [1], [2]), C(2)) == 0
    assert witness_vector(C(3, [1, 3], [2, 3]), C(3, [1, 3], [2, 3])) == 0b011
    with pytest.raises(PreconditionError):
        witness_vector(C(2, [1, 2], [2]), C(2))
    with pytest.raises(PreconditionError):
        witness_vector(C(2, [1]), C(2, [2]))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_neighbourhood_reports(k):
    distinct = verify_distinct_neighborhoods(k)
    assert distinct["ok"] and distinct["distinct"] == distinct["family_size"]
    assert verify_neighborhood_size(k)["ok"]


def test_thread_count_invariant():
    assert verify_distinct_neighborhoods(3, threads=1) == verify_distinct_neighborhoods(3, threads=4)


def test_private_neighbors_k3():
    report = verify_private_neighbors(3)
    assert report["ok"] and report["pairs"] > 0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_non_neighbours_are_orthogonal_complement(k):
    cut = build_universal_cut(k)
    for s in enumerate_family(k):
        span = {0}
        for x in s.members:
            span |= {y ^ x for y in span}
        perp = {t for t in range(1 << k) if all(not odd(v & t) for v in span)}
        nb = cut.neighborhood_mask(s)
        assert {t for t in range(1 << k) if not nb >> t & 1} == perp
