from __future__ import annotations

import json

import pytest

from rwlab.bundle import SCHEMA, ReductionBundle
from rwlab.errors import PreconditionError
from rwlab.formula import CnfFormula, Literal
from rwlab.reduce_is import build_is_instance, make_unweighted
from rwlab.reduce_mim_fvs import from_is_bundle
from rwlab.reduce_wds import build_wds_instance

V = Literal(1, 2)


def bundles():
    phi = CnfFormula(1, ((V, V, V), (-V, -V, V)))
    is_b = build_is_instance(phi)
    mim, fvs = from_is_bundle(make_unweighted(is_b))
    return [is_b, make_unweighted(is_b), mim, fvs, build_wds_instance(phi)]


@pytest.mark.parametrize("bundle", bundles(), ids=lambda b: b.meta["construction"])
def test_json_round_trip(bundle):
    text = bundle.to_json()
    data = json.loads(text)
    assert data["schema"] == SCHEMA
    assert data["meta"]["target"] == bundle.target
    back = ReductionBundle.from_json(text)
    assert back.instance == bundle.instance
    assert back.order == bundle.order
    assert (back.target, back.sense, back.width_bound) == (bundle.target, bundle.sense, bundle.width_bound)
    assert back.meta["construction"] == bundle.meta["construction"]


def test_serialisation_is_deterministic():
    a, b = bundles()[0], bundles()[0]
    assert a.to_json() == b.to_json()


def test_malformed_bundles():
    data = bundles()[0].to_dict()
    del data["order"]
    with pytest.raises(PreconditionError):
        ReductionBundle.from_dict(data)
    data = bundles()[0].to_dict()
    data["meta"]["sense"] = "sideways"
    with pytest.raises(PreconditionError):
        ReductionBundle.from_dict(data)


def test_meets():
    b = bundles()[0]
    assert b.meets(b.target) and not b.meets(b.target - 1)
    w = bundles()[-1]
    assert w.meets(w.target) and not w.meets(w.target + 1)
