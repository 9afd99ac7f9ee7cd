"""Linear orders, branch decompositions and their widths under cut measures."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .errors import PreconditionError, check_guard
from .gf2 import cut_rank_masks, neighborhood_count_masks
from .graph import Graph, Label, iter_bits

# A measure maps (graph, side mask, other side mask) to (value, saturated).
Measure = Callable[[Graph, int, int], "tuple[int, bool]"]


def _cut_rank_measure(g: Graph, a: int, b: int) -> tuple[int, bool]:
    return cut_rank_masks(g, a, b), False


def _neighborhood_measure(g: Graph, a: int, b: int) -> tuple[int, bool]:
    return neighborhood_count_masks(g, a, b)


MEASURES: dict[str, Measure] = {
    "cut-rank": _cut_rank_measure,
    "neighborhood-count": _neighborhood_measure,
}


def get_measure(measure: str | Measure) -> Measure:
    if callable(measure):
        return measure
    try:
        return MEASURES[measure]
    except KeyError:
        raise PreconditionError(f"unknown measure {measure!r}; choose from {sorted(MEASURES)}") from None


@dataclass(frozen=True)
class LinearOrder:
    order: tuple[Label, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))
        if len(set(self.order)) != len(self.order):
            raise PreconditionError("order repeats a vertex")

    def __iter__(self) -> Iterator[Label]:
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def check_covers(self, g: Graph) -> None:
        if len(self.order) != g.n or any(v not in g for v in self.order):
            raise PreconditionError(f"order of length {len(self.order)} is not a permutation of the {g.n} vertices")

    def indices(self, g: Graph) -> list[int]:
        self.check_covers(g)
        return [g.index(v) for v in self.order]


@dataclass(frozen=True)
class WidthReport:
    width: int
    argmax_prefix: int
    values: tuple[int, ...]
    saturated: tuple[bool, ...]

    def __iter__(self):
        return iter((self.width, self.argmax_prefix))


def linear_width(g: Graph, order: LinearOrder | Sequence[Label], measure: str | Measure = "cut-rank") -> WidthReport:
    """Maximum measure over the cuts ``(prefix, rest)`` for prefixes of length ``1..n-1``.

    ``argmax_prefix`` is the first prefix length attaining the maximum (0 when
    there are no proper prefixes).
    """
    f = get_measure(measure)
    if not isinstance(order, LinearOrder):
        order = LinearOrder(tuple(order))
    idx = order.indices(g)
    full = g.all_mask
    values, flags = [], []
    prefix = 0
    for i in idx[:-1]:
        prefix |= 1 << i
        value, sat = f(g, prefix, full & ~prefix)
        values.append(value)
        flags.append(sat)
    if not values:
        return WidthReport(0, 0, (), ())
    width = max(values)
    return WidthReport(width, values.index(width) + 1, tuple(values), tuple(flags))


@dataclass(frozen=True)
class BranchTree:
    """Unrooted tree whose leaves are labelled by the vertices of a graph.

    ``adjacency`` maps each node id to its neighbours; ``leaves`` maps leaf
    node ids to vertex labels.
    """

    adjacency: dict[int, tuple[int, ...]]
    leaves: dict[int, Label]

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, nbrs in self.adjacency.items() for v in nbrs if u < v)

    def validate(self, g: Graph | None = None) -> None:
        nodes = self.adjacency
        n_edges = sum(len(v) for v in nodes.values())
        if n_edges % 2 or n_edges // 2 != len(nodes) - 1:
            raise PreconditionError("branch tree must be a tree")
        for u, nbrs in nodes.items():
            if len(set(nbrs)) != len(nbrs) or u in nbrs or any(u not in nodes[v] for v in nbrs):
                raise PreconditionError(f"inconsistent adjacency at node {u}")
        seen = {next(iter(nodes))} if nodes else set()
        stack = list(seen)
        while stack:
            u = stack.pop()
            for v in nodes[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != len(nodes):
            raise PreconditionError("branch tree is disconnected")
        for u, nbrs in nodes.items():
            if u in self.leaves:
                if len(nodes) > 1 and len(nbrs) != 1:
                    raise PreconditionError(f"leaf {u} has degree {len(nbrs)}")
            elif len(nbrs) != 3:
                raise PreconditionError(f"internal node {u} has degree {len(nbrs)}")
        if len(set(self.leaves.values())) != len(self.leaves):
            raise PreconditionError("leaf labels repeat")
        if g is not None and set(self.leaves.values()) != set(g.labels):
            raise PreconditionError("leaves are not in bijection with the vertices")

    def side(self, u: int, v: int) -> frozenset[Label]:
        """Leaf labels in the component of ``v`` after deleting the edge ``uv``."""
        out = []
        stack = [(v, u)]
        while stack:
            x, parent = stack.pop()
            if x in self.leaves:
                out.append(self.leaves[x])
            stack.extend((y, x) for y in self.adjacency[x] if y != parent)
        return frozenset(out)

    def bipartitions(self) -> Iterator[tuple[tuple[int, int], frozenset[Label], frozenset[Label]]]:
        for u, v in self.edges():
            yield (u, v), self.side(v, u), self.side(u, v)


def caterpillar(order: LinearOrder | Sequence[Label]) -> BranchTree:
    """The caterpillar tree whose spine follows ``order``."""
    labels = list(order)
    n = len(labels)
    leaves = dict(enumerate(labels))
    adj: dict[int, list[int]] = {i: [] for i in range(n)}

    def link(x: int, y: int) -> None:
        adj[x].append(y)
        adj[y].append(x)

    if n == 2:
        link(0, 1)
    elif n == 3:
        adj[3] = []
        for leaf in range(3):
            link(leaf, 3)
    elif n >= 4:
        spine = list(range(n, 2 * n - 2))
        for s in spine:
            adj[s] = []
        link(0, spine[0])
        link(1, spine[0])
        for pos in range(2, n - 2):
            link(pos, spine[pos - 1])
        link(n - 2, spine[-1])
        link(n - 1, spine[-1])
        for x, y in zip(spine, spine[1:]):
            link(x, y)
    return BranchTree({u: tuple(vs) for u, vs in adj.items()}, leaves)


def random_branch_tree(labels: Sequence[Label], rng: random.Random) -> BranchTree:
    """A random ternary tree built by repeatedly subdividing a random edge."""
    labels = list(labels)
    rng.shuffle(labels)
    n = len(labels)
    leaves = dict(enumerate(labels))
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    if n >= 2:
        adj[0].add(1)
        adj[1].add(0)
    next_id = n
    for leaf in range(2, n):
        edges = sorted((u, v) for u in adj for v in adj[u] if u < v)
        u, v = rng.choice(edges)
        mid = next_id
        next_id += 1
        adj[u].discard(v)
        adj[v].discard(u)
        adj[mid] = {u, v, leaf}
        adj[u].add(mid)
        adj[v].add(mid)
        adj[leaf].add(mid)
    return BranchTree({u: tuple(sorted(vs)) for u, vs in adj.items()}, leaves)


def branch_width(g: Graph, tree: BranchTree, measure: str | Measure = "cut-rank") -> int:
    """Maximum measure over all bipartitions displayed by the edges of ``tree``."""
    tree.validate(g)
    f = get_measure(measure)
    best = 0
    for _, left, right in tree.bipartitions():
        best = max(best, f(g, g.mask(left), g.mask(right))[0])
    return best


@dataclass(frozen=True)
class BalancedEdge:
    edge: tuple[int, int]
    left: frozenset[Label]
    right: frozenset[Label]


def find_balanced_cut_edge(tree: BranchTree, x: Iterable[Label]) -> BalancedEdge:
    """An edge whose two sides each hold at least a third of ``x``.

    Walks along edges oriented towards the side holding more of ``x``; stops
    at a balanced edge, or at a sink node where the heaviest incident branch
    gives the answer.
    """
    xs = frozenset(x)
    if len(xs) < 2:
        raise PreconditionError("x needs at least two vertices")
    if not xs <= set(tree.leaves.values()):
        raise PreconditionError("x contains labels that are not leaves")

    def weight(u: int, v: int) -> int:
        return len(tree.side(u, v) & xs)

    node = min(tree.adjacency)
    while True:
        outgoing = None
        for v in tree.adjacency[node]:
            far, near = weight(node, v), len(xs) - weight(node, v)
            if far == near:
                return BalancedEdge((node, v), tree.side(v, node), tree.side(node, v))
            if far > near and outgoing is None:
                outgoing = v
        if outgoing is None:
            break
        node = outgoing
    v = max(tree.adjacency[node], key=lambda y: (weight(node, y), -y))
    return BalancedEdge((node, v), tree.side(v, node), tree.side(node, v))


def _cut_values(g: Graph, f: Measure) -> Callable[[int], int]:
    full = g.all_mask

    @lru_cache(maxsize=None)
    def value(mask: int) -> int:
        if mask in (0, full):
            return 0
        return f(g, mask, full & ~mask)[0]

    return value


def optimal_linear_width(g: Graph, measure: str | Measure = "cut-rank", guard: int = 9) -> tuple[int, tuple[Label, ...]]:
    """Minimum width over all vertex orders, by dynamic programming over prefix sets."""
    check_guard("optimal linear width |V|", g.n, guard)
    cut = _cut_values(g, get_measure(measure))
    n = g.n
    best = {0: (0, -1)}
    for mask in range(1, 1 << n):
        here = cut(mask)
        choice = None
        for v in iter_bits(mask):
            prev = best[mask & ~(1 << v)][0]
            w = max(prev, here)
            if choice is None or w < choice[0]:
                choice = (w, v)
        best[mask] = choice
    order = []
    mask = (1 << n) - 1
    while mask:
        v = best[mask][1]
        order.append(g.labels[v])
        mask &= ~(1 << v)
    return best[(1 << n) - 1][0], tuple(reversed(order))


def optimal_branch_width(g: Graph, measure: str | Measure = "cut-rank", guard: int = 10) -> int:
    """Minimum width over all branch decompositions of a tiny graph."""
    check_guard("optimal branch width |V|", g.n, guard)
    n = g.n
    if n <= 1:
        return 0
    cut = _cut_values(g, get_measure(measure))

    @lru_cache(maxsize=None)
    def rooted(mask: int) -> int:
        # width of the best rooted binary tree over mask, excluding the root edge
        if mask & (mask - 1) == 0:
            return 0
        low = mask & -mask
        rest = mask ^ low
        best = None
        sub = rest
        while True:
            part = sub | low
            if part != mask:
                other = mask ^ part
                w = max(cut(part), cut(other), rooted(part), rooted(other))
                if best is None or w < best:
                    best = w
            if sub == 0:
                break
            sub = (sub - 1) & rest
        return best

    root = 1 << (n - 1)
    return max(cut(root), rooted(g.all_mask ^ root))
