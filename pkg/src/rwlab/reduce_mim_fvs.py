"""Independent Set to Maximum Induced Matching and Feedback Vertex Set via true twins.

Every vertex ``v`` gets a true twin ``v^``. An independent set of size ``x`` in
the input then corresponds to an induced matching with ``x`` edges and to an
induced forest with ``2x`` vertices in the doubled graph.
"""

from __future__ import annotations

from typing import Sequence

from .bundle import ReductionBundle
from .decomposition import LinearOrder, linear_width
from .errors import PreconditionError
from .graph import Graph, Label, WeightedGraph, true_twin_label


def doubled_graph(g: Graph) -> Graph:
    """``g`` with a true twin added to every vertex, built in one pass."""
    hat = {v: true_twin_label(v) for v in g.labels}
    edges = [(v, hat[v]) for v in g.labels]
    for u, v in g.label_edges():
        edges += [(u, v), (hat[u], v), (u, hat[v]), (hat[u], hat[v])]
    return Graph(list(g.labels) + list(hat.values()), edges)


def duplicate_with_true_twins(
    g: Graph,
    order: LinearOrder | Sequence[Label],
    kappa: int | None = None,
    width: int | None = None,
    meta: dict | None = None,
) -> tuple[ReductionBundle, ReductionBundle]:
    """Bundles for induced matching (target ``kappa`` edges) and induced forest (``2 * kappa`` vertices).

    ``width`` is a known cut-rank width bound of ``order``; it is computed when
    omitted. The new order inserts each twin right after its original.
    ``kappa`` defaults to 0.
    """
    if not isinstance(order, LinearOrder):
        order = LinearOrder(tuple(order))
    order.check_covers(g)
    if width is None:
        width = linear_width(g, order).width
    kappa = 0 if kappa is None else kappa
    h = doubled_graph(g)
    new_order = LinearOrder(tuple(x for v in order for x in (v, true_twin_label(v))))
    base = dict(meta or {})
    base.update(source_n=g.n, kappa=kappa)
    mim = ReductionBundle(
        WeightedGraph(h), kappa, "max", new_order, width + 1, dict(base, construction="mim")
    )
    fvs = ReductionBundle(
        WeightedGraph(h), 2 * kappa, "max", new_order, width + 1,
        dict(base, construction="fvs", objective="induced-forest", fvs_budget=h.n - 2 * kappa),
    )
    return mim, fvs


def from_is_bundle(bundle: ReductionBundle) -> tuple[ReductionBundle, ReductionBundle]:
    """Compose with an unweighted independent set bundle, keeping its target and width bound."""
    if bundle.meta.get("weighted", False) or any(w != 1 for w in bundle.instance.weights):
        raise PreconditionError("expects an unweighted independent set bundle (see make_unweighted)")
    meta = {k: v for k, v in bundle.meta.items() if k not in ("construction",)}
    meta["source"] = bundle.meta.get("construction")
    return duplicate_with_true_twins(bundle.graph, bundle.order, bundle.target, bundle.width_bound, meta)
