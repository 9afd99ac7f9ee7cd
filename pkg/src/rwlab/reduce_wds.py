"""3-CNF-SAT to Weighted Dominating Set with a linear order of cut-rank width at most 4k+2.

Consecutive copies ``A_i`` and ``A_{i+1}`` are coupled through a layer ``B_i``
and a layer ``B^_i`` joined by a perfect matching. Vertices that must never be
chosen get a sentinel weight exceeding the sum of all other weights.
"""

from __future__ import annotations

from .bundle import ReductionBundle
from .decomposition import LinearOrder
from .errors import PreconditionError
from .formula import CnfFormula, block_sets, literal_sets
from .graph import Graph, Label, WeightedGraph, checked_total
from .oracles import MWDS_CAP, dominating_sets_within
from .universal_cut import odd


def a_label(i: int, s: int) -> Label:
    return Label("A", i, s)


def aux_label(i: int, j: int) -> Label:
    return Label("AuxClique", i, j)


def b_label(i: int, t: int) -> Label:
    return Label("B", i, t)


def bhat_label(i: int, t: int) -> Label:
    return Label("BHat", i, t)


def clause_label(i: int) -> Label:
    return Label("Clause", i, 0)


def wds_target(k: int, m: int) -> int:
    return ((1 << (2 * k)) + 2) * k * m + (1 << k) * (m - 1)


def wds_vertex_count(k: int, m: int) -> int:
    """Actual vertex count: ``(2^k k + k + 1) m`` plus ``2 * 2^(2k) (m - 1)`` for the two layer kinds."""
    return ((1 << k) * k + k + 1) * m + 2 * (1 << (2 * k)) * (m - 1)


def build_wds_instance(phi: CnfFormula) -> ReductionBundle:
    """Weighted dominating set instance: weight ``<= wds_target(k, m)`` iff ``phi`` is satisfiable."""
    if phi.m < 1:
        raise PreconditionError("need at least one clause")
    k, m = phi.k, phi.m
    full = 1 << (2 * k)
    heavy = full + 2
    blocks = [block_sets(k, j) for j in range(1, k + 1)]
    all_s = [s for block in blocks for s in block]

    labels: list[Label] = []
    edges: list[tuple[Label, Label]] = []
    finite: dict[Label, int] = {}
    sentinel_vertices: list[Label] = []
    # sigma(A_1), sigma(B_1 u B^_1), sigma(A_2), ..., sigma(A_m)
    order: list[Label] = []

    for i, clause in enumerate(phi.clauses, 1):
        c = clause_label(i)
        labels.append(c)
        finite[c] = 1
        order.append(c)
        for j, block in enumerate(blocks, 1):
            group = [a_label(i, s) for s in block]
            aux = aux_label(i, j)
            clique = group + [aux]
            labels += clique
            finite.update({v: heavy for v in group})
            sentinel_vertices.append(aux)
            order += clique
            edges += [(u, v) for x, u in enumerate(clique) for v in clique[x + 1:]]
        hit = set()
        for lit in clause:
            hit |= set(literal_sets(lit, k))
        edges += [(c, a_label(i, s)) for s in sorted(hit)]
        if i < m:
            for t in range(full):
                b, bh = b_label(i, t), bhat_label(i, t)
                labels += [b, bh]
                finite[b] = 1
                sentinel_vertices.append(bh)
                order += [b, bh]
                edges.append((b, bh))
                for s in all_s:
                    if odd(s & t):
                        edges += [(a_label(i, s), b), (bh, a_label(i + 1, s))]

    sentinel = 1 + checked_total(finite.values())
    weights = dict(finite)
    weights.update({v: sentinel for v in sentinel_vertices})
    g = Graph(labels, edges)
    return ReductionBundle(
        instance=WeightedGraph.from_mapping(g, weights),
        target=wds_target(k, m),
        sense="min",
        order=LinearOrder(tuple(order)),
        width_bound=4 * k + 2,
        meta={
            "construction": "wds",
            "k": k,
            "m": m,
            "sentinel": sentinel,
            "layer_matching": "all subsets of [2k]",
            "vertex_count": g.n,
            "degenerate": m == 1,
        },
    )


def selection_assignment(masks: tuple[int, ...], k: int) -> str:
    """Render one A-selection as the assignment it encodes, row by row (``v_{i,k+1}..v_{i,2k}``)."""
    rows = {}
    for s in masks:
        i = (s & ((1 << k) - 1)).bit_length()
        rows[i] = "".join("1" if s >> (j - 1) & 1 else "0" for j in range(k + 1, 2 * k + 1))
    return " ".join(rows.get(i, "?" * k) for i in range(1, k + 1))


def decode_optima(bundle: ReductionBundle, cap: int | None = None) -> dict:
    """Decode every dominating set at the target weight into per-copy A-selections."""
    sentinel = bundle.meta["sentinel"]
    k, m = bundle.meta["k"], bundle.meta["m"]
    solutions = 0
    consistent = True
    assignments = set()
    for _, witness in dominating_sets_within(bundle.instance, bundle.target, cap or MWDS_CAP):
        solutions += 1
        if any(bundle.instance.weight(v) == sentinel for v in witness):
            consistent = False
        selections = set()
        for i in range(1, m + 1):
            chosen = tuple(sorted(v.mask for v in witness if v.kind == "A" and v.copy == i))
            per_block = [sum(1 for s in chosen if s & ((1 << k) - 1) == 1 << (j - 1)) for j in range(1, k + 1)]
            if per_block != [1] * k:
                consistent = False
            selections.add(chosen)
            if i < m:
                # the chosen B_i vertices are exactly those the A_i-selection misses
                hit = {t for t in range(1 << (2 * k)) for s in chosen if odd(s & t)}
                chosen_b = {v.mask for v in witness if v.kind == "B" and v.copy == i}
                if chosen_b != set(range(1 << (2 * k))) - hit:
                    consistent = False
        if len(selections) != 1:
            consistent = False
        assignments.add(selection_assignment(min(selections), k))
    return {
        "solutions": solutions,
        "assignments": sorted(assignments),
        "consistent": consistent and solutions > 0,
    }
