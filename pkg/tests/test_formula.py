from __future__ import annotations

import pytest
from hypothesis import given

from rwlab.formula import (
    CnfFormula, Collection, DimacsError, Literal, all_assignments, assignment_to_collection,
    block_sets, grid_cell, literal_sets, mask_elements, pad_to_square, parse_dimacs, set_mask, var_index,
)
from rwlab.errors import PreconditionError

from conftest import formulas


def test_set_mask_round_trip():
    assert set_mask([1, 3]) == 0b101
    assert mask_elements(0b101) == (1, 3)


def test_grid_cells_row_major():
    assert [grid_cell(v, 2) for v in range(1, 5)] == [(1, 3), (1, 4), (2, 3), (2, 4)]
    assert all(var_index(*grid_cell(v, 3), 3) == v for v in range(1, 10))


def test_formula_validation():
    with pytest.raises(PreconditionError):
        CnfFormula(1, ((Literal(1, 1),),))  # j must lie in k+1..2k
    with pytest.raises(PreconditionError):
        CnfFormula(1, ((),))
    with pytest.raises(PreconditionError):
        CnfFormula(1, ((Literal(1, 2),) * 4,))


def test_padding_repeats_last_literal():
    phi = CnfFormula(1, ((Literal(1, 2), Literal(1, 2, False)),))
    assert phi.padded().clauses == ((Literal(1, 2), Literal(1, 2, False), Literal(1, 2, False)),)
    assert phi.padded().is_padded() and not phi.is_padded()


@given(formulas(k=2, max_m=4))
def test_padding_preserves_models(phi):
    padded = phi.padded()
    assert all(phi.satisfies(f) == padded.satisfies(f) for f in all_assignments(2))


def test_parse_dimacs_and_square_padding():
    raw, n = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n3 0\n")
    assert raw == [[1, -2], [3]] and n == 3
    phi = pad_to_square(raw, n)
    assert phi.k == 2
    assert phi.clauses[0] == (Literal(1, 3), Literal(1, 4, False))
    assert phi.clauses[1] == (Literal(2, 3),)


@pytest.mark.parametrize("text", [
    "1 2 0\n",
    "p cnf 2 1\n1 2 -1 2 0\n",
    "p cnf 2 1\n3 0\n",
    "p cnf 2 2\n1 0\n",
    "p cnf 2 1\n0\n",
    "p dnf 2 1\n1 0\n",
])
def test_parse_dimacs_errors(text):
    with pytest.raises(DimacsError):
        parse_dimacs(text)


@given(formulas(k=2, max_m=4))
def test_dimacs_round_trip(phi):
    raw, n = parse_dimacs(phi.to_dimacs())
    assert pad_to_square(raw, n) == phi


def test_assignment_order():
    first, second = list(all_assignments(1))
    assert first == {(1, 2): False} and second == {(1, 2): True}
    codes = list(all_assignments(2))
    assert codes[1] == {(1, 3): False, (1, 4): False, (2, 3): False, (2, 4): True}


def test_block_sets_meet_k_in_one_element():
    k = 2
    for i in (1, 2):
        for s in block_sets(k, i):
            assert s & 0b11 == 1 << (i - 1)
        assert len(block_sets(k, i)) == 4


def test_assignment_collection():
    f = {(1, 3): True, (1, 4): False, (2, 3): False, (2, 4): True}
    coll = assignment_to_collection(f, 2)
    assert coll.as_sets() == [(1, 3), (2, 4)]
    with pytest.raises(PreconditionError):
        assignment_to_collection({(1, 3): True}, 2)


@given(formulas(k=2, max_m=1))
def test_literal_sets_match_assignment(phi):
    lit = phi.clauses[0][0]
    for f in all_assignments(2):
        member = next(m for m in assignment_to_collection(f, 2) if m & 0b11 == 1 << (lit.i - 1))
        assert (member in literal_sets(lit, 2)) == (f[lit.i, lit.j] == lit.positive)


def test_collection_basics():
    c = Collection.of(3, [[1], [2, 3], [1]])
    assert len(c) == 2 and str(c) == "{{1}, {2,3}}"
    assert (c & Collection.of(3, [[1]])).as_sets() == [(1,)]
    with pytest.raises(PreconditionError):
        Collection.of(2, [[3]])
