from __future__ import annotations

import itertools

import pytest
from hypothesis import given

from rwlab.errors import ResourceLimitError
from rwlab.formula import CnfFormula, Literal, all_assignments
from rwlab.graph import Graph, WeightedGraph, iter_bits
from rwlab.oracles import (
    alpha, dominating_sets_within, is_dominating, is_forest, is_independent, max_induced_forest,
    max_induced_matching, max_weight_independent_set, min_weight_dominating_set, sat_enumerate,
)

from conftest import formulas, graphs, weighted_graphs


def subsets(n):
    return range(1 << n)


def brute_mwis(wg: WeightedGraph) -> int:
    g = wg.graph
    return max(sum(wg.weights[v] for v in iter_bits(s)) for s in subsets(g.n) if is_independent(g, s))


def brute_mwds(wg: WeightedGraph) -> int:
    g = wg.graph
    return min(sum(wg.weights[v] for v in iter_bits(s)) for s in subsets(g.n) if is_dominating(g, s))


def brute_forest(g: Graph) -> int:
    return max(s.bit_count() for s in subsets(g.n) if is_forest(g, s))


def brute_mim(g: Graph) -> int:
    edges = list(g.edges())
    best = 0
    for r in range(1, len(edges) + 1):
        for chosen in itertools.combinations(edges, r):
            ends = 0
            for u, v in chosen:
                ends |= 1 << u | 1 << v
            if ends.bit_count() == 2 * r and all((g.adj[x] & ends).bit_count() == 1 for x in iter_bits(ends)):
                best = r
                break
        else:
            break
    return best


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_named_graphs():
    c5 = cycle(5)
    assert alpha(c5) == 2
    assert max_induced_forest(c5)[0] == 4
    assert max_induced_matching(c5)[0] == 1
    assert min_weight_dominating_set(WeightedGraph(c5))[0] == 2
    k4 = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert max_induced_forest(k4)[0] == 2 and max_induced_matching(k4)[0] == 1
    assert max_induced_matching(Graph.from_edges(3, []))[0] == 0


@given(weighted_graphs(max_n=9))
def test_mwis_brute_force(wg):
    value, witness = max_weight_independent_set(wg)
    assert value == brute_mwis(wg) == wg.weight_of(witness)


@given(weighted_graphs(max_n=9))
def test_mwds_brute_force(wg):
    value, witness = min_weight_dominating_set(wg)
    assert value == brute_mwds(wg) == wg.weight_of(witness)
    assert is_dominating(wg.graph, wg.graph.mask(witness))


@given(weighted_graphs(max_n=7))
def test_dominating_enumeration_finds_all_optima(wg):
    g = wg.graph
    best = brute_mwds(wg)
    optima = {s for s in subsets(g.n) if is_dominating(g, s) and sum(wg.weights[v] for v in iter_bits(s)) == best}
    # zero-weight vertices can make optima non-unique supersets; weights here are >= 1
    found = {g.mask(w) for value, w in dominating_sets_within(wg, best) if value == best}
    assert found == optima


@given(graphs(max_n=8))
def test_forest_brute_force(g):
    size, witness = max_induced_forest(g)
    assert size == brute_forest(g) == len(witness)


@given(graphs(max_n=8))
def test_mim_brute_force(g):
    assert max_induced_matching(g)[0] == brute_mim(g)


@given(formulas(k=2, max_m=5))
def test_sat_against_truth_table(phi):
    models = [f for f in all_assignments(2) if phi.satisfies(f)]
    res = sat_enumerate(phi)
    assert res.count == len(models) and res.satisfiable == bool(models)
    if models:
        assert res.model == models[0]


def test_sat_examples():
    v = Literal(1, 2)
    assert sat_enumerate(CnfFormula(1, ((v, v, v),))).satisfiable
    assert not sat_enumerate(CnfFormula(1, ((v,), (-v,)))).satisfiable
    assert sat_enumerate(CnfFormula(1, ((v, -v),))).count == 2


def test_caps():
    big = Graph.from_edges(30, [])
    with pytest.raises(ResourceLimitError):
        max_induced_forest(big)
    with pytest.raises(ResourceLimitError):
        sat_enumerate(CnfFormula(5, ((Literal(1, 6),),)))
    assert max_induced_forest(big, cap=30)[0] == 30


def test_guard_override(monkeypatch):
    monkeypatch.setenv("RWLAB_GUARD_OVERRIDE", "1")
    assert max_induced_matching(Graph.from_edges(26, [(0, 1)]))[0] == 1
