"""GF(2) linear algebra on integer bitset rows.

A row is a Python ``int`` whose bit ``c`` is the entry in column ``c``; this
gives word-parallel XOR for any number of columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionError, ResourceLimitError
from .graph import Graph, Label, iter_bits

# Cuts with at most this many rows are always counted exactly.
DEFAULT_ROW_LIMIT = 20
DEFAULT_CLOSURE_CAP = 1 << 20


@dataclass(frozen=True)
class GF2Matrix:
    n_rows: int
    n_cols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n_rows:
            raise PreconditionError("row count mismatch")
        for r in self.rows:
            if r < 0 or r >> self.n_cols:
                raise PreconditionError("row has bits beyond n_cols")

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]], n_cols: int | None = None) -> GF2Matrix:
        if n_cols is None:
            n_cols = len(data[0]) if data else 0
        rows = []
        for entries in data:
            if len(entries) != n_cols:
                raise PreconditionError("ragged matrix")
            rows.append(sum(1 << c for c, x in enumerate(entries) if x & 1))
        return cls(len(rows), n_cols, tuple(rows))

    def entry(self, r: int, c: int) -> int:
        return self.rows[r] >> c & 1

    def transpose(self) -> GF2Matrix:
        cols = [0] * self.n_cols
        for r, row in enumerate(self.rows):
            for c in iter_bits(row):
                cols[c] |= 1 << r
        return GF2Matrix(self.n_cols, self.n_rows, tuple(cols))

    def rank(self) -> int:
        return rank_of_rows(self.rows)


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of the row space spanned by ``rows``; inputs are not modified."""
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                break
            r ^= p
    return len(pivots)


def gf2_rank(m: GF2Matrix) -> int:
    return rank_of_rows(m.rows)


def _disjoint_masks(g: Graph, a: Iterable[Label], b: Iterable[Label]) -> tuple[int, int]:
    amask, bmask = g.mask(a), g.mask(b)
    if amask & bmask:
        raise PreconditionError("cut sides overlap: " + ", ".join(map(str, g.labels_of(amask & bmask))))
    return amask, bmask


def cut_rank_masks(g: Graph, amask: int, bmask: int) -> int:
    if amask.bit_count() > bmask.bit_count():
        amask, bmask = bmask, amask
    return rank_of_rows(g.adj[i] & bmask for i in iter_bits(amask))


def cut_rank(g: Graph, a: Iterable[Label], b: Iterable[Label]) -> int:
    """GF(2)-rank of the biadjacency matrix between disjoint vertex sets."""
    return cut_rank_masks(g, *_disjoint_masks(g, a, b))


def biadjacency(g: Graph, a: Sequence[Label], b: Sequence[Label]) -> GF2Matrix:
    """The ``|a| x |b|`` 0/1 matrix of ``g[a, b]``, rows and columns in the given order."""
    _disjoint_masks(g, a, b)
    cols = [g.index(v) for v in b]
    rows = []
    for u in a:
        row = g.adj[g.index(u)]
        rows.append(sum(1 << c for c, j in enumerate(cols) if row >> j & 1))
    return GF2Matrix(len(rows), len(cols), tuple(rows))


def union_closure(rows: Iterable[int], cap: int | None = None) -> tuple[set[int], bool]:
    """All unions of subsets of ``rows``; stops early once more than ``cap`` are found.

    Returns the (possibly partial) closure and whether it was cut off.
    """
    seen = {0}
    for r in set(rows):
        if not r:
            continue
        seen |= {x | r for x in seen}
        if cap is not None and len(seen) > cap:
            return seen, True
    return seen, False


def neighborhood_count_masks(
    g: Graph, amask: int, bmask: int, limit: int = DEFAULT_ROW_LIMIT, cap: int = DEFAULT_CLOSURE_CAP
) -> tuple[int, bool]:
    """Like :func:`neighborhood_count` but reports saturation instead of raising."""
    rows = [g.adj[i] & bmask for i in iter_bits(amask)]
    closure, saturated = union_closure(rows, None if len(rows) <= limit else cap)
    return len(closure), saturated


def neighborhood_count(
    g: Graph,
    a: Iterable[Label],
    b: Iterable[Label],
    limit: int = DEFAULT_ROW_LIMIT,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> int:
    """Number of distinct sets ``N(X) & b`` over all ``X`` subsets of ``a``.

    Cuts with more than ``limit`` rows are counted only while the closure stays
    within ``cap`` sets; beyond that a :class:`ResourceLimitError` is raised.
    """
    amask, bmask = _disjoint_masks(g, a, b)
    count, saturated = neighborhood_count_masks(g, amask, bmask, limit, cap)
    if saturated:
        raise ResourceLimitError(
            f"neighbourhood closure of cut with |a|={amask.bit_count()}, |b|={bmask.bit_count()} exceeds {cap}"
        )
    return count
