"""Reduction bundles: a reduced instance with its threshold and certified order."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .decomposition import LinearOrder, linear_width
from .errors import PreconditionError
from .graph import WeightedGraph, graph_from_dict, graph_to_dict

SCHEMA = "rwlab.bundle/1"


@dataclass(frozen=True)
class ReductionBundle:
    instance: WeightedGraph
    target: int
    sense: str  # "max": solution value >= target; "min": solution value <= target
    order: LinearOrder
    width_bound: int
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.sense not in ("max", "min"):
            raise PreconditionError(f"sense must be 'max' or 'min', got {self.sense!r}")
        if not isinstance(self.order, LinearOrder):
            object.__setattr__(self, "order", LinearOrder(tuple(self.order)))
        self.order.check_covers(self.instance.graph)

    @property
    def graph(self):
        return self.instance.graph

    def meets(self, value: int) -> bool:
        return value >= self.target if self.sense == "max" else value <= self.target

    def certified_width(self) -> int:
        return linear_width(self.graph, self.order, "cut-rank").width

    def to_dict(self) -> dict:
        g = self.graph
        data = graph_to_dict(self.instance)
        meta = {"construction": self.meta.get("construction"), "k": self.meta.get("k"), "m": self.meta.get("m")}
        meta.update(self.meta)
        meta.update(target=self.target, sense=self.sense)
        return {
            "schema": SCHEMA,
            "meta": meta,
            "vertices": data["vertices"],
            "edges": data["edges"],
            "order": [g.index(v) for v in self.order],
            "width_bound": self.width_bound,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_dict(cls, data: Mapping) -> ReductionBundle:
        try:
            wg = graph_from_dict(data)
            meta = dict(data["meta"])
            target = int(meta.pop("target"))
            sense = meta.pop("sense")
            order = [wg.graph.labels[i] for i in data["order"]]
            width_bound = int(data["width_bound"])
        except (KeyError, IndexError, TypeError) as exc:
            raise PreconditionError(f"malformed bundle: {exc!r}") from None
        return cls(wg, target, sense, LinearOrder(tuple(order)), width_bound, meta)

    @classmethod
    def from_json(cls, text: str) -> ReductionBundle:
        return cls.from_dict(json.loads(text))
