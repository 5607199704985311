import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridkit.classes import AV12, AV21, EMPTY, SKEW12, SUM21, CapExceeded, finite_basis
from gridkit.family import mk_matrix
from gridkit.gridding import (
    Gridding,
    GriddedPermutation,
    all_gridded,
    cell_contents,
    components,
    enumerate_griddings,
    enumerate_griddings_bruteforce,
    from_cells,
    gridded,
    gridded_contains,
    gridded_contains_bruteforce,
    gridded_from_json,
    gridded_to_json,
    gridding_count,
    is_forest,
    is_griddable,
    is_gridded_by,
    is_path,
    matrix_from_json,
    matrix_graph,
    matrix_to_json,
    path_order,
    restrict,
    row_matrix,
    unique_gridding,
)
from gridkit.perm import all_perms, contains

from conftest import matrices, perms

SAMPLE_3X3 = gridded((5, 1, 4, 8, 9, 7, 11, 12, 2, 6, 3, 10), (4, 8), (4, 8))


def test_cell_contents():
    gp = gridded((1, 3, 5, 2, 4, 6), (3,), ())
    assert cell_contents(gp, 1, 1) == (1, 2, 3)
    assert cell_contents(gp, 2, 1) == (1, 2, 3)
    assert cell_contents(SAMPLE_3X3, 2, 2) == (1,)  # only the point 7
    assert cell_contents(SAMPLE_3X3, 2, 3) == (1, 2, 3)  # 9 11 12
    assert cell_contents(SAMPLE_3X3, 3, 3) == (1,)
    assert cell_contents(gridded((2, 1), (1,), (1,)), 1, 1) == ()
    with pytest.raises(IndexError):
        cell_contents(gp, 3, 1)


def test_gridding_examples():
    assert enumerate_griddings((1, 3, 5, 2, 4, 6), row_matrix(AV21, AV21)) == [Gridding((3,), ())]
    got = enumerate_griddings((5, 3, 1, 2, 4, 6), row_matrix(AV12, AV21))
    assert got == [Gridding((2,), ()), Gridding((3,), ())]
    assert unique_gridding((5, 3, 1, 2, 4, 6), row_matrix(AV12, AV21)) is None
    assert gridding_count((2, 1), row_matrix(AV21)) == 0
    assert gridding_count((), row_matrix(SUM21)) == 1
    assert gridding_count((), from_cells(2, 2, {})) == 1


def test_bad_griddings_rejected():
    with pytest.raises(ValueError):
        gridded((1, 2), (3,), ())
    with pytest.raises(ValueError):
        gridded((1, 2, 3), (2, 1), ())
    with pytest.raises(ValueError):
        GriddedPermutation((1, 2), Gridding((1,), ()), (3, 1))


def test_caps():
    with pytest.raises(CapExceeded):
        enumerate_griddings(tuple(range(1, 62)), row_matrix(AV21))
    with pytest.raises(CapExceeded):
        enumerate_griddings((1,), from_cells(4, 5, {}))
    assert is_griddable(tuple(range(1, 62)), row_matrix(AV21), max_length=100)


@settings(max_examples=200, deadline=None)
@given(perms(max_size=6), matrices(max_cols=3, max_rows=2))
def test_pruned_matches_bruteforce(p, M):
    assert enumerate_griddings(p, M) == enumerate_griddings_bruteforce(p, M)


@given(perms(max_size=7), matrices())
def test_every_gridding_is_valid(p, M):
    for gp in all_gridded(p, M):
        assert is_gridded_by(gp, M)


def test_gridded_containment_examples():
    a = gridded((1, 3, 2), (2,), ())
    b = gridded((1, 3, 5, 7, 2, 4, 6, 8), (4,), ())
    assert gridded_contains(a, b)
    assert gridded_contains(a, a)
    assert not gridded_contains(gridded((2, 1), (2,), ()), gridded((2, 1), (0,), ()))
    with pytest.raises(ValueError):
        gridded_contains(a, gridded((1,), (), ()))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_gridded_containment_oracle(data):
    M = data.draw(matrices(classes=(AV21, AV12, SUM21)))
    pi = data.draw(perms(max_size=7))
    alphas = data.draw(perms(max_size=4))
    for gp in all_gridded(pi, M)[:3]:
        for ga in all_gridded(alphas, M)[:3]:
            assert gridded_contains(ga, gp) == gridded_contains_bruteforce(ga, gp)


@settings(max_examples=100, deadline=None)
@given(perms(1, 7), st.data())
def test_restrict_and_gridded_containment(pi, data):
    M = row_matrix(SUM21, AV12)
    found = all_gridded(pi, M)
    if not found:
        return
    gp = data.draw(st.sampled_from(found))
    k = data.draw(st.integers(0, len(pi)))
    positions = sorted(data.draw(st.permutations(range(1, len(pi) + 1)))[:k])
    sub = restrict(gp, positions)
    assert is_gridded_by(sub, M)
    assert gridded_contains(sub, gp)
    # any pattern of a griddable permutation has some gridding contained in it
    assert any(gridded_contains(a, gp) for a in all_gridded(sub.perm, M))


def test_restrict_keeps_cells():
    sub = restrict(SAMPLE_3X3, [1, 4, 6, 10])
    assert sub.perm == (1, 4, 3, 2)
    assert sub.cells() == [SAMPLE_3X3.cell_of(i) for i in (1, 4, 6, 10)]


def test_matrix_graph():
    M3 = mk_matrix(3)[0]
    G = matrix_graph(M3)
    assert nx.is_tree(G) and G.number_of_edges() == 3 and is_path(M3)
    full = from_cells(2, 2, {c: AV21 for c in [(1, 1), (1, 2), (2, 1), (2, 2)]})
    G = matrix_graph(full)
    assert nx.cycle_basis(G) and len(G.edges) == 4 and not is_forest(full)
    single = row_matrix(AV21)
    assert is_forest(single) and is_path(single) and path_order(single) == [(1, 1)]
    # an empty cell between two entries does not break adjacency
    gap = row_matrix(AV21, EMPTY, AV12)
    assert set(matrix_graph(gap).edges) == {((1, 1), (3, 1))}
    assert matrix_graph(gap).edges[(1, 1), (3, 1)]["kind"] == "row"


def test_components_and_path_order():
    M = from_cells(3, 2, {(1, 1): AV21, (2, 2): AV12, (3, 2): SUM21})
    parts = components(M)
    assert [p.nonempty() for p in parts] == [[(1, 1)], [(2, 2), (3, 2)]]
    assert all(p.dims == M.dims for p in parts)
    assert path_order(mk_matrix(2)[0]) == [(1, 1), (2, 1), (2, 2)]
    with pytest.raises(ValueError):
        path_order(M)


def test_json_roundtrip():
    M = from_cells(2, 2, {(1, 1): SUM21, (2, 2): finite_basis("231", finitely_many_simples=False), (2, 1): SKEW12})
    assert matrix_from_json(matrix_to_json(M)) == M
    assert gridded_from_json(gridded_to_json(SAMPLE_3X3)) == SAMPLE_3X3
    with pytest.raises(ValueError):
        matrix_from_json({"cols": 1})
    with pytest.raises(ValueError):
        matrix_from_json({"cols": 1, "rows": 1, "cells": [{"col": 1, "row": 1, "class": "av21"}] * 2})
    with pytest.raises(ValueError):
        gridded_from_json({"perm": [1, 1], "x": [], "y": []})


def test_griddable_closed_downwards():
    rng = random.Random(7)
    M = from_cells(2, 2, {(1, 1): SUM21, (2, 1): AV12, (1, 2): AV21})
    for _ in range(50):
        pi = tuple(rng.sample(range(1, 8), 7))
        if not is_griddable(pi, M):
            continue
        for sigma in all_perms(4):
            if contains(sigma, pi):
                assert is_griddable(sigma, M)
