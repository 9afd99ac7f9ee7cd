"""The universal k-rank cut and the family of row-reduced echelon collections.

The family ``F_k`` is grown recursively by :func:`extend_collection`; a
collection belongs to it exactly when its members are the rows of a binary
matrix in row-reduced echelon form, whose leading columns act as pivots.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import PreconditionError, check_guard
from .formula import Collection, mask_elements
from .graph import Graph, Label

FAMILY_GUARD = 6


@dataclass(frozen=True)
class UniversalCut:
    k: int
    graph: Graph

    def a(self, s: int) -> Label:
        return Label("A", 0, s)

    def b(self, t: int) -> Label:
        return Label("B", 0, t)

    @property
    def side_a(self) -> list[Label]:
        return [self.a(s) for s in range(1 << self.k)]

    @property
    def side_b(self) -> list[Label]:
        return [self.b(t) for t in range(1 << self.k)]

    def a_of(self, coll: Collection) -> list[Label]:
        return [self.a(s) for s in coll.members]

    def neighborhood_mask(self, coll: Collection) -> int:
        """Neighbourhood of ``A[coll]`` as a bitmask over ``t`` (bit ``t`` set iff ``b_t`` adjacent)."""
        g = self.graph
        rows = 0
        for s in coll.members:
            rows |= g.adj[g.index(self.a(s))]
        offset = 1 << self.k  # B labels follow the A labels in canonical order
        return rows >> offset


def odd(x: int) -> bool:
    return x.bit_count() & 1 == 1


def build_universal_cut(k: int) -> UniversalCut:
    if k < 1:
        raise PreconditionError("k must be at least 1")
    size = 1 << k
    a = [Label("A", 0, s) for s in range(size)]
    b = [Label("B", 0, t) for t in range(size)]
    edges = [(a[s], b[t]) for s in range(size) for t in range(size) if odd(s & t)]
    return UniversalCut(k, Graph(a + b, edges))


def extend_collection(s: Collection) -> frozenset[Collection]:
    """All one-step extensions of ``s`` to ground ``k + 1``."""
    k = s.ground
    new = 1 << k
    out = {Collection(k + 1, s.members + (new,))}
    for choice in range(1 << len(s)):
        members = tuple(m | new if choice >> i & 1 else m for i, m in enumerate(s.members))
        out.add(Collection(k + 1, members))
    return frozenset(out)


def enumerate_family(k: int, guard: int = FAMILY_GUARD) -> frozenset[Collection]:
    if k < 1:
        raise PreconditionError("k must be at least 1")
    check_guard("family enumeration k", k, guard)
    family = {Collection(1, ()), Collection(1, (1,))}
    for _ in range(1, k):
        family = {t for s in family for t in extend_collection(s)}
    return frozenset(family)


def rref_pivots(s: Collection) -> tuple[int, ...] | None:
    """Pivots ``alpha_i`` (1-based, one per member in stored order) or ``None``.

    A member's pivot must be in it and be its smallest element, and no member
    may contain another member's pivot.
    """
    pivots = []
    for m in s.members:
        if not m:
            return None
        pivots.append((m & -m).bit_length())
    if len(set(pivots)) != len(pivots):
        return None
    pmask = sum(1 << (p - 1) for p in pivots)
    for m, p in zip(s.members, pivots):
        if m & pmask != 1 << (p - 1) or m & ((1 << (p - 1)) - 1):
            return None
    return tuple(pivots)


def is_in_family(s: Collection) -> bool:
    return rref_pivots(s) is not None


def witness_vector(s: Collection, x: Collection) -> int:
    """A mask ``t`` with odd ``|m & t|`` for exactly the members ``m`` of ``s`` lying in ``x``."""
    pivots = rref_pivots(s)
    if pivots is None:
        raise PreconditionError(f"{s} is not in the family")
    if not set(x.members) <= set(s.members):
        raise PreconditionError("x must be a sub-collection of s")
    return sum(1 << (p - 1) for m, p in zip(s.members, pivots) if m in x.members)


def _sorted_family(k: int) -> list[Collection]:
    return sorted(enumerate_family(k), key=lambda c: (len(c), c.members))


def verify_distinct_neighborhoods(k: int, threads: int = 1) -> dict:
    """Check that ``A[S]`` has a different neighbourhood for every ``S`` in ``F_k``."""
    cut = build_universal_cut(k)
    family = _sorted_family(k)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        nbhds = list(pool.map(cut.neighborhood_mask, family))
    first: dict[int, Collection] = {}
    collisions = []
    for coll, nb in zip(family, nbhds):
        if nb in first:
            collisions.append([str(first[nb]), str(coll)])
        else:
            first[nb] = coll
    n = len(family)
    return {
        "check": "distinct-neighborhoods",
        "k": k,
        "family_size": n,
        "pairs": n * (n - 1) // 2,
        "distinct": len(first),
        "collisions": collisions,
        "ok": not collisions,
    }


def verify_neighborhood_size(k: int, threads: int = 1) -> dict:
    """Check ``|N(A[S])| == 2^k - 2^(k - |S|)`` for every ``S`` in ``F_k``."""
    cut = build_universal_cut(k)
    family = _sorted_family(k)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        sizes = list(pool.map(lambda c: cut.neighborhood_mask(c).bit_count(), family))
    mismatches = [
        {"collection": str(c), "size": got, "expected": (1 << k) - (1 << (k - len(c)))}
        for c, got in zip(family, sizes)
        if got != (1 << k) - (1 << (k - len(c)))
    ]
    return {
        "check": "neighborhood-size",
        "k": k,
        "family_size": len(family),
        "mismatches": mismatches,
        "ok": not mismatches,
    }


def verify_private_neighbors(k: int) -> dict:
    """Check :func:`witness_vector` against its contract for every ``(S, X)`` pair."""
    checked = 0
    failures = []
    for s in _sorted_family(k):
        for r in range(len(s) + 1):
            for sub in itertools.combinations(s.members, r):
                x = Collection(k, sub)
                t = witness_vector(s, x)
                checked += 1
                if any(odd(m & t) != (m in x.members) for m in s.members):
                    failures.append([str(s), str(x), list(mask_elements(t))])
    return {"check": "private-neighbors", "k": k, "pairs": checked, "failures": failures, "ok": not failures}


def all_collections(k: int):
    """Every collection of subsets of ``[k]`` (``2^(2^k)`` of them)."""
    universe = range(1 << k)
    for code in range(1 << len(universe)):
        yield Collection(k, tuple(s for s in universe if code >> s & 1))


def verify_family_equivalence(k: int) -> dict:
    """Compare the recursive family with the pivot characterisation over all collections."""
    check_guard("family equivalence k", k, 4)
    family = enumerate_family(k)
    by_pivots = {c for c in all_collections(k) if is_in_family(c)}
    only_recursive = sorted(str(c) for c in family - by_pivots)
    only_pivots = sorted(str(c) for c in by_pivots - family)
    return {
        "check": "family-equivalence",
        "k": k,
        "family_size": len(family),
        "only_recursive": only_recursive,
        "only_pivots": only_pivots,
        "ok": not only_recursive and not only_pivots,
    }
