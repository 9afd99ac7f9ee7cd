"""3-CNF-SAT to (Weighted) Independent Set, with a linear order of cut-rank width at most 2k+4."""

from __future__ import annotations

from .bundle import ReductionBundle
from .decomposition import LinearOrder
from .errors import PreconditionError
from .formula import CnfFormula, block_sets, literal_sets
from .graph import Graph, Label, WeightedGraph
from .universal_cut import odd


def a_label(i: int, s: int) -> Label:
    return Label("A", i, s)


def b_label(t: int) -> Label:
    return Label("B", 0, t)


def clause_label(i: int, p: int) -> Label:
    return Label("Clause", i, p)


def is_target(k: int, m: int) -> int:
    return (1 << (2 * k)) * k * m + (1 << k) + m


def build_is_instance(phi: CnfFormula) -> ReductionBundle:
    """Weighted independent set instance: weight ``>= is_target(k, m)`` iff ``phi`` is satisfiable.

    ``phi`` must have exactly three literal positions per clause (see
    :meth:`CnfFormula.padded`).
    """
    if not phi.is_padded():
        raise PreconditionError("every clause needs exactly 3 literal positions; call phi.padded() first")
    if phi.m < 1:
        raise PreconditionError("need at least one clause")
    k, m = phi.k, phi.m
    heavy = 1 << (2 * k)
    blocks = [block_sets(k, j) for j in range(1, k + 1)]
    b = [b_label(t) for t in range(1 << (2 * k))]

    labels: list[Label] = list(b)
    edges: list[tuple[Label, Label]] = []
    weights: dict[Label, int] = {v: 1 for v in b}
    order: list[Label] = list(b)
    for i, clause in enumerate(phi.clauses, 1):
        for block in blocks:
            group = [a_label(i, s) for s in block]
            labels += group
            order += group
            weights.update({v: heavy for v in group})
            edges += [(u, v) for x, u in enumerate(group) for v in group[x + 1:]]
            for s, v in zip(block, group):
                edges += [(v, b[t]) for t in range(len(b)) if odd(s & t)]
        tri = [clause_label(i, p) for p in (1, 2, 3)]
        labels += tri
        order += tri
        weights.update({v: 1 for v in tri})
        edges += [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
        for c, lit in zip(tri, clause):
            edges += [(c, a_label(i, s)) for s in literal_sets(-lit, k)]

    g = Graph(labels, edges)
    return ReductionBundle(
        instance=WeightedGraph.from_mapping(g, weights),
        target=is_target(k, m),
        sense="max",
        order=LinearOrder(tuple(order)),
        width_bound=2 * k + 4,
        meta={"construction": "is", "k": k, "m": m, "weighted": True},
    )


def make_unweighted(bundle: ReductionBundle) -> ReductionBundle:
    """Replace every vertex ``v`` by ``w(v)`` pairwise non-adjacent copies with the same neighbours.

    The maximum independent set size of the result equals the maximum weight of
    the input; the order grows by substituting each vertex with its copies.
    """
    if bundle.sense != "max":
        raise PreconditionError("unweighting applies to maximisation bundles")
    wg = bundle.instance
    g = wg.graph
    if any(w == 0 for w in wg.weights):
        raise PreconditionError("delete zero-weight vertices first")
    copies = [[lab] + [lab.twin(c) for c in range(1, w)] for lab, w in zip(g.labels, wg.weights)]
    edges = []
    for i, j in g.edges():
        edges += [(x, y) for x in copies[i] for y in copies[j]]
    h = Graph([x for group in copies for x in group], edges)
    order = [x for v in bundle.order for x in copies[g.index(v)]]
    meta = dict(bundle.meta, weighted=False)
    return ReductionBundle(WeightedGraph(h), bundle.target, "max", LinearOrder(tuple(order)), bundle.width_bound + 1, meta)

