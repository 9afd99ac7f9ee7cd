"""Undirected simple graphs with structured vertex labels and integer weights.

Adjacency is stored as one Python ``int`` bitset per vertex, indexed by the
canonical position of the vertex. Graphs are immutable once built.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping

from .errors import PreconditionError, UnknownVertexError, WeightOverflowError

INT64_MAX = (1 << 63) - 1

# Canonical block order of label kinds.
KIND_RANK = {"V": 0, "A": 1, "B": 2, "BHat": 3, "Clause": 4, "AuxClique": 5}


@dataclass(frozen=True)
class Label:
    """Provenance tag of a vertex.

    ``kind`` names the construction block, ``copy`` the copy index and ``mask``
    the set encoded as a bitmask (or a position/index for clause and auxiliary
    vertices). ``twins`` records twin expansions as ``(index, is_true_twin)``
    pairs appended to a base label.
    """

    kind: str
    copy: int = 0
    mask: int = 0
    twins: tuple[tuple[int, bool], ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KIND_RANK:
            raise PreconditionError(f"unknown label kind {self.kind!r}")

    def sort_key(self) -> tuple:
        return (KIND_RANK[self.kind], self.copy, self.mask, self.twins)

    def twin(self, index: int, true: bool = False) -> Label:
        return replace(self, twins=self.twins + ((index, true),))

    @property
    def base(self) -> Label:
        return replace(self, twins=())

    def __str__(self) -> str:
        text = f"V({self.mask})" if self.kind == "V" else f"{self.kind}({self.copy},{self.mask})"
        for index, true in self.twins:
            text = f"{'TrueTwin' if true else 'Twin'}({text},{index})"
        return text

    @classmethod
    def parse(cls, text: str) -> Label:
        text = text.strip()
        twins: list[tuple[int, bool]] = []
        while True:
            m = re.fullmatch(r"(Twin|TrueTwin)\((.*),(\d+)\)", text)
            if not m:
                break
            twins.append((int(m.group(3)), m.group(1) == "TrueTwin"))
            text = m.group(2)
        m = re.fullmatch(r"V\((\d+)\)", text)
        if m:
            base = cls("V", 0, int(m.group(1)))
        else:
            m = re.fullmatch(r"(\w+)\((\d+),(\d+)\)", text)
            if not m or m.group(1) not in KIND_RANK:
                raise PreconditionError(f"cannot parse vertex label {text!r}")
            base = cls(m.group(1), int(m.group(2)), int(m.group(3)))
        return replace(base, twins=tuple(reversed(twins)))


def plain(x: int) -> Label:
    """Label for an anonymous vertex ``x`` of a generic graph."""
    return Label("V", 0, x)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph.

    Vertices are kept in canonical order (sorted by :meth:`Label.sort_key`);
    ``adj[i]`` is the neighbourhood bitset of the ``i``-th vertex.
    """

    __slots__ = ("labels", "adj", "_index")

    def __init__(self, labels: Iterable[Label], edges: Iterable[tuple[Label, Label]] = ()):
        ordered = sorted(labels, key=Label.sort_key)
        if len(set(ordered)) != len(ordered):
            raise PreconditionError("duplicate vertex labels")
        self.labels: tuple[Label, ...] = tuple(ordered)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        adj = [0] * len(self.labels)
        for u, v in edges:
            i, j = self.index(u), self.index(v)
            if i == j:
                raise PreconditionError(f"loop at {u}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self.adj: tuple[int, ...] = tuple(adj)

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
        return cls([plain(i) for i in range(n)], [(plain(i), plain(j)) for i, j in pairs])

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def all_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertexError(label) from None

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def mask(self, labels: Iterable[Label]) -> int:
        out = 0
        for lab in labels:
            out |= 1 << self.index(lab)
        return out

    def labels_of(self, mask: int) -> list[Label]:
        return [self.labels[i] for i in iter_bits(mask)]

    def has_edge(self, u: Label, v: Label) -> bool:
        return bool(self.adj[self.index(u)] >> self.index(v) & 1)

    def neighbors(self, label: Label) -> frozenset[Label]:
        return frozenset(self.labels_of(self.adj[self.index(label)]))

    def degree(self, label: Label) -> int:
        return self.adj[self.index(label)].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        """Index pairs ``(i, j)`` with ``i < j``."""
        for i, row in enumerate(self.adj):
            for j in iter_bits(row >> (i + 1)):
                yield i, i + 1 + j

    def label_edges(self) -> Iterator[tuple[Label, Label]]:
        for i, j in self.edges():
            yield self.labels[i], self.labels[j]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def extended(self, labels: Iterable[Label], edges: Iterable[tuple[Label, Label]]) -> Graph:
        """A new graph with extra vertices and edges added."""
        return Graph(list(self.labels) + list(labels), list(self.label_edges()) + list(edges))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.labels == other.labels and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.labels, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def checked_total(values: Iterable[int]) -> int:
    total = 0
    for v in values:
        total += v
        if total > INT64_MAX:
            raise WeightOverflowError("weight sum exceeds 64-bit range")
    return total


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    weights: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * self.graph.n)
        if len(self.weights) != self.graph.n:
            raise PreconditionError("one weight per vertex required")
        if any(w < 0 for w in self.weights):
            raise PreconditionError("weights must be nonnegative")
        checked_total(self.weights)

    @classmethod
    def from_mapping(cls, graph: Graph, weights: Mapping[Label, int]) -> WeightedGraph:
        return cls(graph, tuple(weights[lab] for lab in graph.labels))

    def weight(self, label: Label) -> int:
        return self.weights[self.graph.index(label)]

    def weight_of(self, labels: Iterable[Label]) -> int:
        return checked_total(self.weight(lab) for lab in labels)

    @property
    def total_weight(self) -> int:
        return checked_total(self.weights)


def neighborhood(g: Graph, u: Iterable[Label]) -> frozenset[Label]:
    """Open neighbourhood of a vertex set: all neighbours of ``u`` outside ``u``."""
    umask = g.mask(u)
    out = 0
    for i in iter_bits(umask):
        out |= g.adj[i]
    return frozenset(g.labels_of(out & ~umask))


def _next_twin_index(g: Graph, v: Label, true: bool) -> int:
    used = {lab.twins[-1][0] for lab in g.labels if lab.twins and lab.base == v.base
            and lab.twins[:-1] == v.twins and lab.twins[-1][1] == true}
    return max(used, default=0) + 1


def add_false_twins(wg: WeightedGraph, v: Label, count: int) -> WeightedGraph:
    """Add ``count`` weight-1 copies of ``v`` with the same open neighbourhood."""
    if count < 0:
        raise PreconditionError("count must be nonnegative")
    g = wg.graph
    nbrs = g.neighbors(v)
    start = _next_twin_index(g, v, False)
    twins = [v.twin(start + i, False) for i in range(count)]
    h = g.extended(twins, [(t, u) for t in twins for u in nbrs])
    weights = {lab: wg.weight(lab) for lab in g.labels}
    weights.update({t: 1 for t in twins})
    return WeightedGraph.from_mapping(h, weights)


def add_true_twin(g: Graph, v: Label) -> Graph:
    """Add a vertex adjacent to ``v`` and to every neighbour of ``v``."""
    nbrs = g.neighbors(v)
    hat = v.twin(_next_twin_index(g, v, True), True)
    return g.extended([hat], [(hat, u) for u in nbrs | {v}])


def true_twin_label(v: Label) -> Label:
    """The label :func:`add_true_twin` gives the first true twin of ``v``."""
    return v.twin(1, True)


# ---------- serialization


def graph_to_dict(wg: WeightedGraph) -> dict:
    g = wg.graph
    return {
        "vertices": [{"label": str(lab), "weight": w} for lab, w in zip(g.labels, wg.weights)],
        "edges": [[i, j] for i, j in g.edges()],
    }


def graph_from_dict(data: Mapping) -> WeightedGraph:
    labels = [Label.parse(v["label"]) for v in data["vertices"]]
    weights = [int(v.get("weight", 1)) for v in data["vertices"]]
    if len(set(labels)) != len(labels):
        raise PreconditionError("duplicate vertex labels")
    if labels != sorted(labels, key=Label.sort_key):
        raise PreconditionError("vertices are not in canonical order")
    n = len(labels)
    edges = []
    for i, j in data["edges"]:
        if not (0 <= i < n and 0 <= j < n):
            raise PreconditionError(f"edge index out of range: {(i, j)}")
        edges.append((labels[i], labels[j]))
    g = Graph(labels, edges)
    return WeightedGraph(g, tuple(weights))


def to_edge_list(wg: WeightedGraph) -> str:
    """Plain text export: ``p edge n m``, ``e u v`` and ``w v x`` lines, 1-based."""
    g = wg.graph
    lines = [f"p edge {g.n} {g.num_edges}"]
    lines += [f"e {i + 1} {j + 1}" for i, j in g.edges()]
    lines += [f"w {i + 1} {w}" for i, w in enumerate(wg.weights)]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> WeightedGraph:
    """Parse :func:`to_edge_list` output; vertices get anonymous labels ``V(0..n-1)``."""
    n = None
    pairs: list[tuple[int, int]] = []
    weights: dict[int, int] = {}
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            n = int(parts[2])
        elif parts[0] == "e":
            pairs.append((int(parts[1]) - 1, int(parts[2]) - 1))
        elif parts[0] == "w":
            weights[int(parts[1]) - 1] = int(parts[2])
        else:
            raise PreconditionError(f"unrecognised line {raw!r}")
    if n is None:
        raise PreconditionError("missing 'p edge' header")
    g = Graph.from_edges(n, pairs)
    return WeightedGraph(g, tuple(weights.get(i, 1) for i in range(n)))
