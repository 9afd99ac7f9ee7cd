"""A graph family with cut-rank width at most 2k+1 whose cuts carry many neighbourhoods.

A centre ``A`` (sets meeting ``[k]`` in one element, one clique per element)
is attached to ``k^2`` disjoint cliques ``B_1..B_{k^2}``, each wired to ``A``
like the universal ``2k``-rank cut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .decomposition import LinearOrder
from .errors import PreconditionError, check_guard
from .formula import block_sets
from .gf2 import DEFAULT_CLOSURE_CAP, cut_rank_masks, neighborhood_count_masks
from .graph import Graph, Label, iter_bits
from .universal_cut import odd

SEPARATION_GUARD = 3


@dataclass(frozen=True)
class SeparationInstance:
    k: int
    graph: Graph
    order: LinearOrder
    center_blocks: tuple[tuple[Label, ...], ...]
    leaves: tuple[tuple[Label, ...], ...]

    @property
    def center(self) -> tuple[Label, ...]:
        return tuple(v for block in self.center_blocks for v in block)

    def __iter__(self):
        return iter((self.graph, self.order))


def build_separation_instance(k: int, guard: int = SEPARATION_GUARD) -> SeparationInstance:
    if k < 1:
        raise PreconditionError("k must be at least 1")
    check_guard("separation instance k", k, guard)
    blocks = [tuple(Label("A", 0, s) for s in block_sets(k, i)) for i in range(1, k + 1)]
    center = [v for block in blocks for v in block]
    leaves = [tuple(Label("B", j, t) for t in range(1 << (2 * k))) for j in range(1, k * k + 1)]
    edges = []
    for group in blocks + leaves:
        edges += [(u, v) for x, u in enumerate(group) for v in group[x + 1:]]
    for leaf in leaves:
        for b in leaf:
            edges += [(a, b) for a in center if odd(a.mask & b.mask)]
    g = Graph(center + [v for leaf in leaves for v in leaf], edges)
    order = LinearOrder(tuple(center) + tuple(v for leaf in leaves for v in leaf))
    return SeparationInstance(k, g, order, tuple(blocks), tuple(leaves))


def independent_subsets(g: Graph, mask: int) -> Iterable[int]:
    """All independent subsets of ``mask`` (including the empty set), as bitmasks."""
    verts = list(iter_bits(mask))

    def rec(pos: int, chosen: int, banned: int):
        if pos == len(verts):
            yield chosen
            return
        v = verts[pos]
        yield from rec(pos + 1, chosen, banned)
        if not banned >> v & 1:
            yield from rec(pos + 1, chosen | 1 << v, banned | g.adj[v])

    return rec(0, 0, 0)


def independent_neighborhood_count(g: Graph, amask: int, bmask: int, cap: int = DEFAULT_CLOSURE_CAP) -> tuple[int, bool]:
    seen = set()
    for x in independent_subsets(g, amask):
        nb = 0
        for v in iter_bits(x):
            nb |= g.adj[v]
        seen.add(nb & bmask)
        if len(seen) > cap:
            return len(seen), True
    return len(seen), False


def measure_cut_boolean_dimension(g: Graph, a: Iterable[Label], b: Iterable[Label], cap: int = DEFAULT_CLOSURE_CAP) -> dict:
    """Cut-rank and neighbourhood counts of the cut ``(a, b)``, all subsets vs. independent subsets of ``a``."""
    amask, bmask = g.mask(a), g.mask(b)
    if amask & bmask:
        raise PreconditionError("cut sides overlap")
    rank = cut_rank_masks(g, amask, bmask)
    count, sat = neighborhood_count_masks(g, amask, bmask, cap=cap)
    ind, ind_sat = independent_neighborhood_count(g, amask, bmask, cap)
    return {
        "a_size": amask.bit_count(),
        "b_size": bmask.bit_count(),
        "cut_rank": rank,
        "neighborhood_count": count,
        "neighborhood_count_saturated": sat,
        "log2_neighborhood_count": math.log2(count),
        "independent_neighborhood_count": ind,
        "independent_neighborhood_count_saturated": ind_sat,
        "log2_independent_neighborhood_count": math.log2(ind),
        "saturated": sat or ind_sat,
    }


def split_every_leaf(inst: SeparationInstance) -> tuple[frozenset[Label], frozenset[Label]]:
    """Bipartition putting the centre and the first half of every leaf clique on the left."""
    left = set(inst.center)
    for leaf in inst.leaves:
        left.update(leaf[: len(leaf) // 2])
    return frozenset(left), frozenset(inst.graph.labels) - frozenset(left)


def induced_matching_across(g: Graph, left: Iterable[Label], right: Iterable[Label], groups: Iterable[Iterable[Label]]) -> list[tuple[Label, Label]]:
    """One left-right edge inside every group that meets both sides.

    Callers verify that the returned edges form an induced matching.
    """
    left, right = frozenset(left), frozenset(right)
    out = []
    for group in groups:
        gl = [v for v in group if v in left]
        gr = [v for v in group if v in right]
        pair = next(((u, v) for u in gl for v in gr if g.has_edge(u, v)), None)
        if pair is not None:
            out.append(pair)
    return out
