"""3-CNF formulas on the square variable grid and their set-collection encoding.

Variables are ``v[i, j]`` with ``i`` in ``1..k`` and ``j`` in ``k+1..2k``. Sets of
integers are bitmasks where element ``e`` occupies bit ``e - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import PreconditionError

Assignment = Mapping[tuple[int, int], bool]


class DimacsError(PreconditionError):
    pass


def set_mask(elements: Iterable[int]) -> int:
    out = 0
    for e in elements:
        if e < 1:
            raise PreconditionError(f"set elements are 1-based, got {e}")
        out |= 1 << (e - 1)
    return out


def mask_elements(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


class Literal(NamedTuple):
    i: int
    j: int
    positive: bool = True

    def __neg__(self) -> Literal:
        return Literal(self.i, self.j, not self.positive)

    def __str__(self) -> str:
        return f"{'' if self.positive else '~'}v{self.i},{self.j}"


@dataclass(frozen=True)
class CnfFormula:
    k: int
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise PreconditionError("grid dimension k must be at least 1")
        object.__setattr__(self, "clauses", tuple(tuple(Literal(*lit) for lit in c) for c in self.clauses))
        for c in self.clauses:
            if not 1 <= len(c) <= 3:
                raise PreconditionError(f"clause {c} must have 1 to 3 literals")
            for lit in c:
                if not (1 <= lit.i <= self.k and self.k < lit.j <= 2 * self.k):
                    raise PreconditionError(f"literal {lit} outside the {self.k}x{self.k} grid")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def n_vars(self) -> int:
        return self.k * self.k

    def variables(self) -> list[tuple[int, int]]:
        """Grid cells in variable-index order (row-major)."""
        return [grid_cell(v, self.k) for v in range(1, self.n_vars + 1)]

    def padded(self) -> CnfFormula:
        """Every clause extended to three positions by repeating its last literal."""
        return CnfFormula(self.k, tuple(c + (c[-1],) * (3 - len(c)) for c in self.clauses))

    def is_padded(self) -> bool:
        return all(len(c) == 3 for c in self.clauses)

    def satisfies(self, f: Assignment) -> bool:
        return all(any(f[lit.i, lit.j] == lit.positive for lit in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n_vars} {self.m}"]
        for c in self.clauses:
            lits = [var_index(lit.i, lit.j, self.k) * (1 if lit.positive else -1) for lit in c]
            lines.append(" ".join(map(str, lits)) + " 0")
        return "\n".join(lines) + "\n"


def grid_cell(v: int, k: int) -> tuple[int, int]:
    """Row-major map from a 1-based variable index to its grid cell ``(i, j)``."""
    return (v - 1) // k + 1, k + (v - 1) % k + 1


def var_index(i: int, j: int, k: int) -> int:
    return (i - 1) * k + (j - k - 1) + 1


def parse_dimacs(text: str | bytes) -> tuple[list[list[int]], int]:
    """Read a DIMACS CNF with clauses of at most three literals.

    Returns the clause list (signed 1-based variable indices) and the declared
    variable count.
    """
    if isinstance(text, bytes):
        text = text.decode()
    n_vars = n_clauses = None
    tokens: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        if line.startswith("p"):
            parts = line.split()
            if n_vars is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                n_vars, n_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if n_vars is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        try:
            tokens.extend(int(t) for t in line.split())
        except ValueError:
            raise DimacsError(f"line {lineno}: non-integer token in {line!r}") from None
    if n_vars is None:
        raise DimacsError("missing 'p cnf' header")
    clauses: list[list[int]] = []
    current: list[int] = []
    for t in tokens:
        if t == 0:
            if not current:
                raise DimacsError("empty clause")
            clauses.append(current)
            current = []
            continue
        if abs(t) > n_vars:
            raise DimacsError(f"variable {abs(t)} out of range 1..{n_vars}")
        current.append(t)
        if len(current) > 3:
            raise DimacsError(f"clause {current}... has more than 3 literals")
    if current:
        clauses.append(current)
    if n_clauses is not None and len(clauses) != n_clauses:
        raise DimacsError(f"header declares {n_clauses} clauses, found {len(clauses)}")
    return clauses, n_vars


def pad_to_square(raw: Iterable[Iterable[int]], n_vars: int) -> CnfFormula:
    """Place variables row-major on a ``k x k`` grid, ``k = ceil(sqrt(n_vars))``.

    Cells past ``n_vars`` become unconstrained dummy variables.
    """
    if n_vars < 1:
        raise PreconditionError("need at least one variable")
    k = math.isqrt(n_vars - 1) + 1
    clauses = []
    for c in raw:
        clause = []
        for t in c:
            if t == 0 or abs(t) > n_vars:
                raise PreconditionError(f"variable index {t} out of range")
            i, j = grid_cell(abs(t), k)
            clause.append(Literal(i, j, t > 0))
        clauses.append(tuple(clause))
    return CnfFormula(k, tuple(clauses))


def all_assignments(k: int) -> Iterator[dict[tuple[int, int], bool]]:
    """All assignments of the ``k*k`` grid in lexicographic order (variable 1 most significant)."""
    cells = [grid_cell(v, k) for v in range(1, k * k + 1)]
    n = len(cells)
    for code in range(1 << n):
        yield {cell: bool(code >> (n - 1 - pos) & 1) for pos, cell in enumerate(cells)}


@dataclass(frozen=True)
class Collection:
    """A set of subsets of ``{1..ground}``, stored as sorted distinct bitmasks."""

    ground: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(set(self.members)))
        for s in members:
            if s < 0 or s >> self.ground:
                raise PreconditionError(f"member {mask_elements(s)} not inside [{self.ground}]")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, ground: int, sets: Iterable[Iterable[int]]) -> Collection:
        return cls(ground, tuple(set_mask(s) for s in sets))

    def as_sets(self) -> list[tuple[int, ...]]:
        return [mask_elements(s) for s in self.members]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self.members

    def __and__(self, other: Collection) -> Collection:
        return Collection(self.ground, tuple(set(self.members) & set(other.members)))

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.as_sets()) + "}"


def block_sets(k: int, i: int) -> list[int]:
    """Masks of all ``s`` in ``[2k]`` whose intersection with ``[k]`` is exactly ``{i}``."""
    return [(1 << (i - 1)) | (x << k) for x in range(1 << k)]


def assignment_to_collection(f: Assignment, k: int) -> Collection:
    members = []
    for i in range(1, k + 1):
        s = 1 << (i - 1)
        for j in range(k + 1, 2 * k + 1):
            try:
                value = f[i, j]
            except KeyError:
                raise PreconditionError(f"assignment misses v{i},{j}") from None
            if value:
                s |= 1 << (j - 1)
        members.append(s)
    return Collection(2 * k, tuple(members))


def literal_sets(lit: Literal, k: int) -> Collection:
    """Members of block ``lit.i`` that contain ``lit.j`` (positive) or omit it (negative)."""
    bit = 1 << (lit.j - 1)
    return Collection(2 * k, tuple(s for s in block_sets(k, lit.i) if bool(s & bit) == lit.positive))
