from __future__ import annotations

import contextlib
import time

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rwlab.formula import CnfFormula, Literal
from rwlab.graph import Graph, WeightedGraph

settings.register_profile("ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def weighted_graphs(draw, max_n: int = 8, max_w: int = 4) -> WeightedGraph:
    g = draw(graphs(max_n=max_n))
    weights = draw(st.lists(st.integers(1, max_w), min_size=g.n, max_size=g.n))
    return WeightedGraph(g, tuple(weights))


@st.composite
def formulas(draw, k: int = 1, max_m: int = 3) -> CnfFormula:
    lit = st.builds(Literal, st.integers(1, k), st.integers(k + 1, 2 * k), st.booleans())
    clauses = draw(st.lists(st.lists(lit, min_size=1, max_size=3).map(tuple), min_size=1, max_size=max_m))
    return CnfFormula(k, tuple(clauses))


@pytest.fixture
def criterion():
    """Context manager timing one acceptance criterion and recording its outcome."""

    @contextlib.contextmanager
    def run(number: int, title: str, limit: float):
        info: dict[str, str] = {}
        start = time.perf_counter()
        try:
            yield info
        except BaseException as exc:
            ACCEPTANCE[number] = (False, f"{title}: {type(exc).__name__}: {exc}"[:300])
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < limit
        ACCEPTANCE[number] = (ok, f"{title} [{info.get('detail', '')}] {elapsed:.1f}s (limit {limit:g}s)")
        assert ok, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
