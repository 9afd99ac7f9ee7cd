"""Exact exponential-time solvers used as ground truth.

All solvers work on bitset adjacency, break ties by lowest canonical vertex
index, and re-check their witness with an independent checker before
returning it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import check_guard
from .formula import CnfFormula, grid_cell
from .graph import Graph, Label, WeightedGraph, iter_bits

SAT_CAP = 16
MWIS_CAP = 64
MWDS_CAP = 40
MIM_CAP = 24
FOREST_CAP = 24


class OracleError(AssertionError):
    """A solver produced a witness its checker rejects."""


# ---------- checkers


def is_independent(g: Graph, mask: int) -> bool:
    return all(not g.adj[v] & mask for v in iter_bits(mask))


def is_dominating(g: Graph, mask: int) -> bool:
    covered = mask
    for v in iter_bits(mask):
        covered |= g.adj[v]
    return covered == g.all_mask


def is_induced_matching(g: Graph, edges: list[tuple[int, int]]) -> bool:
    ends = 0
    for u, v in edges:
        if not g.adj[u] >> v & 1:
            return False
        ends |= 1 << u | 1 << v
    if ends.bit_count() != 2 * len(edges):
        return False
    # every endpoint must see exactly its partner inside the endpoint set
    return all((g.adj[x] & ends).bit_count() == 1 for x in iter_bits(ends))


def is_forest(g: Graph, mask: int) -> bool:
    parent = {v: v for v in iter_bits(mask)}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in iter_bits(mask):
        for u in iter_bits(g.adj[v] & mask & ((1 << v) - 1)):
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
    return True


# ---------- SAT


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    model: dict[tuple[int, int], bool] | None
    count: int


def sat_enumerate(phi: CnfFormula, cap: int = SAT_CAP) -> SatResult:
    """Truth-table evaluation; the model is the lexicographically first (variable 1 most significant)."""
    n = phi.n_vars
    check_guard("SAT variables", n, cap)
    pos_of = {grid_cell(v, phi.k): n - v for v in range(1, n + 1)}  # bit position in the code
    # a clause is falsified by codes matching (care, value) on its variables
    falsifiers = []
    for c in phi.clauses:
        care = value = 0
        consistent = True
        for lit in c:
            bit = 1 << pos_of[lit.i, lit.j]
            want = 0 if lit.positive else bit  # the falsifying value of this literal
            if care & bit and value & bit != want:
                consistent = False  # clause contains x and ~x: never falsified
                break
            care |= bit
            value |= want
        if consistent:
            falsifiers.append((care, value))
    count = 0
    first = None
    for code in range(1 << n):
        if all(code & care != value for care, value in falsifiers):
            count += 1
            if first is None:
                first = code
    model = None
    if first is not None:
        model = {cell: bool(first >> pos & 1) for cell, pos in pos_of.items()}
        if not phi.satisfies(model):
            raise OracleError("SAT model does not satisfy the formula")
    return SatResult(first is not None, model, count)


# ---------- maximum weight independent set


def _mwis(adj: list[int], weights: list[int], cand: int, lower: int = -1) -> tuple[int, int]:
    """Branch and bound; returns (weight, mask). ``lower`` is a known achievable bound minus one."""
    order = sorted(iter_bits(cand), key=lambda v: (-weights[v], v))
    best_w, best_set = lower, 0

    def cover_bound(p: int) -> int:
        commons: list[int] = []
        ub = 0
        for v in order:
            if not p >> v & 1:
                continue
            for idx, common in enumerate(commons):
                if common >> v & 1:
                    commons[idx] = common & adj[v]
                    break
            else:
                commons.append(adj[v] & p)
                ub += weights[v]
        return ub

    def solve(p: int, cur_w: int, cur_set: int) -> None:
        nonlocal best_w, best_set
        # vertices without neighbours in p are always taken
        free = 0
        for v in iter_bits(p):
            if not adj[v] & p:
                free |= 1 << v
        if free:
            p &= ~free
            cur_set |= free
            cur_w += sum(weights[v] for v in iter_bits(free))
        if not p:
            if cur_w > best_w:
                best_w, best_set = cur_w, cur_set
            return
        if cur_w + cover_bound(p) <= best_w:
            return
        v = max(iter_bits(p), key=lambda x: (weights[x], (adj[x] & p).bit_count(), -x))
        bit = 1 << v
        solve(p & ~bit & ~adj[v], cur_w + weights[v], cur_set | bit)
        solve(p & ~bit, cur_w, cur_set)

    solve(cand, 0, 0)
    return best_w, best_set


def max_weight_independent_set(wg: WeightedGraph, cap: int = MWIS_CAP) -> tuple[int, frozenset[Label]]:
    g = wg.graph
    check_guard("MWIS |V|", g.n, cap)
    weight, mask = _mwis(list(g.adj), list(wg.weights), g.all_mask)
    weight = max(weight, 0)
    if not is_independent(g, mask) or sum(wg.weights[v] for v in iter_bits(mask)) != weight:
        raise OracleError("MWIS witness check failed")
    return weight, frozenset(g.labels_of(mask))


# ---------- minimum weight dominating set


class _Domination:
    def __init__(self, wg: WeightedGraph):
        g = wg.graph
        self.n = g.n
        self.full = g.all_mask
        self.closed = [row | 1 << v for v, row in enumerate(g.adj)]
        self.w = list(wg.weights)

    def lower_bound(self, undominated: int, allowed: int) -> int | None:
        """Packing bound: disjoint candidate sets each need their own vertex. ``None`` if infeasible."""
        used = 0
        lb = 0
        for u in iter_bits(undominated):
            cands = self.closed[u] & allowed
            if not cands:
                return None
            if cands & used:
                continue
            used |= cands
            lb += min(self.w[v] for v in iter_bits(cands))
        return lb

    def search(self, bound: int, strict: bool) -> Iterator[tuple[int, int]]:
        """Yield (weight, mask) leaves of weight below (strict) or at most ``bound``.

        Each dominating set has exactly one leaf that is a subset of it, so
        every minimal-weight dominating set within the bound is produced.
        With ``strict`` the bound tightens as better leaves are found.
        """
        state = {"bound": bound}

        def rec(chosen: int, dominated: int, allowed: int, weight: int) -> Iterator[tuple[int, int]]:
            undominated = self.full & ~dominated
            if not undominated:
                if weight < state["bound"] or (not strict and weight <= state["bound"]):
                    if strict:
                        state["bound"] = weight
                    yield weight, chosen
                return
            lb = self.lower_bound(undominated, allowed)
            if lb is None:
                return
            limit = state["bound"]
            if weight + lb > limit or (strict and weight + lb >= limit):
                return
            u = min(iter_bits(undominated), key=lambda x: ((self.closed[x] & allowed).bit_count(), x))
            excluded = 0
            for v in iter_bits(self.closed[u] & allowed):
                yield from rec(chosen | 1 << v, dominated | self.closed[v], allowed & ~excluded & ~(1 << v), weight + self.w[v])
                excluded |= 1 << v

        yield from rec(0, 0, self.full, 0)


def min_weight_dominating_set(wg: WeightedGraph, cap: int = MWDS_CAP) -> tuple[int, frozenset[Label]]:
    g = wg.graph
    check_guard("MWDS |V|", g.n, cap)
    dom = _Domination(wg)
    best = None
    for weight, mask in dom.search(sum(wg.weights) + 1, strict=True):
        best = (weight, mask)
    assert best is not None  # the whole vertex set dominates
    weight, mask = best
    if not is_dominating(g, mask) or sum(wg.weights[v] for v in iter_bits(mask)) != weight:
        raise OracleError("MWDS witness check failed")
    return weight, frozenset(g.labels_of(mask))


def dominating_sets_within(wg: WeightedGraph, bound: int, cap: int = MWDS_CAP) -> Iterator[tuple[int, frozenset[Label]]]:
    """Every dominating set of weight at most ``bound`` that is minimal for
    the search (in particular every minimum-weight dominating set)."""
    g = wg.graph
    check_guard("MWDS |V|", g.n, cap)
    for weight, mask in _Domination(wg).search(bound, strict=False):
        if not is_dominating(g, mask):
            raise OracleError("dominating set enumeration produced a non-dominating set")
        yield weight, frozenset(g.labels_of(mask))


# ---------- maximum induced matching


def max_induced_matching(g: Graph, cap: int = MIM_CAP) -> tuple[int, list[tuple[Label, Label]]]:
    """Solved as a maximum independent set among the edges, two edges conflicting
    when they share or are joined by an edge."""
    check_guard("MIM |V|", g.n, cap)
    edges = list(g.edges())
    if not edges:
        return 0, []
    closed = [row | 1 << v for v, row in enumerate(g.adj)]
    reach = [closed[u] | closed[v] for u, v in edges]
    ends = [1 << u | 1 << v for u, v in edges]
    conflict = [0] * len(edges)
    for x in range(len(edges)):
        for y in range(x + 1, len(edges)):
            if reach[x] & ends[y]:
                conflict[x] |= 1 << y
                conflict[y] |= 1 << x
    size, mask = _mwis(conflict, [1] * len(edges), (1 << len(edges)) - 1)
    chosen = [edges[x] for x in iter_bits(mask)]
    if not is_induced_matching(g, chosen) or len(chosen) != size:
        raise OracleError("induced matching witness check failed")
    return size, [(g.labels[u], g.labels[v]) for u, v in chosen]


# ---------- maximum induced forest


def _clique_pairs_bound(adj: list[int], p: int) -> int:
    """Greedy clique partition of ``p``; a forest keeps at most two vertices per clique."""
    commons: list[int] = []
    sizes: list[int] = []
    for v in iter_bits(p):
        for idx, common in enumerate(commons):
            if common >> v & 1:
                commons[idx] = common & adj[v]
                sizes[idx] += 1
                break
        else:
            commons.append(adj[v] & p)
            sizes.append(1)
    return sum(min(2, s) for s in sizes)


def max_induced_forest(g: Graph, cap: int = FOREST_CAP) -> tuple[int, frozenset[Label]]:
    """Largest vertex set inducing an acyclic subgraph; the minimum feedback
    vertex set is its complement."""
    check_guard("forest |V|", g.n, cap)
    adj = list(g.adj)
    unit = [1] * g.n
    best = [0, 0]

    def rec(chosen: int, comps: list[int], p: int) -> None:
        # forced moves: drop vertices closing a cycle, take vertices that never can
        changed = True
        while changed:
            changed = False
            for v in iter_bits(p):
                nb = adj[v]
                if any((nb & c).bit_count() >= 2 for c in comps):
                    p &= ~(1 << v)
                    changed = True
                elif (nb & (chosen | p)).bit_count() <= 1:
                    p &= ~(1 << v)
                    chosen, comps = _attach(chosen, comps, v, nb)
                    changed = True
        size = chosen.bit_count()
        if size > best[0]:
            best[0], best[1] = size, chosen
        if not p or size + _clique_pairs_bound(adj, p) <= best[0]:
            return
        # a forest is bipartite: at most twice the independence number of what is still live
        if 2 * _mwis(adj, unit, chosen | p, best[0] // 2)[0] <= best[0]:
            return
        live = chosen | p
        v = min(iter_bits(p), key=lambda x: ((adj[x] & live).bit_count(), x))
        bit = 1 << v
        nb = adj[v]
        rec(*_attach(chosen, comps, v, nb), p & ~bit)
        rec(chosen, comps, p & ~bit)

    rec(0, [], g.all_mask)
    size, mask = best
    if not is_forest(g, mask) or mask.bit_count() != size:
        raise OracleError("induced forest witness check failed")
    return size, frozenset(g.labels_of(mask))


def _attach(chosen: int, comps: list[int], v: int, nb: int) -> tuple[int, list[int]]:
    merged = 1 << v
    rest = []
    for c in comps:
        if nb & c:
            merged |= c
        else:
            rest.append(c)
    rest.append(merged)
    return chosen | 1 << v, rest


def alpha(g: Graph) -> int:
    """Maximum independent set size."""
    return _mwis(list(g.adj), [1] * g.n, g.all_mask)[0] if g.n else 0
