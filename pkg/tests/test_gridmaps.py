import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridkit.classes import AV12, AV21, SKEW12, SUM21, CapExceeded, finite_basis
from gridkit.family import mk_matrix
from gridkit.gridding import Gridding, GriddedPermutation, from_cells, gridded, gridded_contains, row_matrix
from gridkit.gridmaps import (
    GridMapping,
    apply,
    canonicalize,
    check_path_conditions,
    column_reverse,
    compose,
    enumerate_mappings,
    grid_inverse,
    identity,
    invert_mapping,
    mapping_count,
    mapping_from_json,
    mapping_to_json,
    permute_columns,
    permute_rows,
    row_complement,
)

from conftest import matrices

SAMPLE_3X3 = gridded((5, 1, 4, 8, 9, 7, 11, 12, 2, 6, 3, 10), (4, 8), (4, 8))


def random_gridded(rng: random.Random, dims, length):
    p = tuple(rng.sample(range(1, length + 1), length))
    x = tuple(sorted(rng.choices(range(length + 1), k=dims[0] - 1)))
    y = tuple(sorted(rng.choices(range(length + 1), k=dims[1] - 1)))
    return GriddedPermutation(p, Gridding(x, y), dims)


def random_mapping(rng: random.Random, m, n):
    return GridMapping(
        rng.random() < 0.5,
        tuple(rng.sample(range(1, m + 1), m)),
        tuple(rng.sample(range(1, n + 1), n)),
        frozenset(i for i in range(1, m + 1) if rng.random() < 0.5),
        frozenset(j for j in range(1, n + 1) if rng.random() < 0.5),
    )


@st.composite
def gridded_perms(draw, dims):
    n = draw(st.integers(0, 8))
    p = tuple(draw(st.permutations(range(1, n + 1))))
    x = tuple(sorted(draw(st.lists(st.integers(0, n), min_size=dims[0] - 1, max_size=dims[0] - 1))))
    y = tuple(sorted(draw(st.lists(st.integers(0, n), min_size=dims[1] - 1, max_size=dims[1] - 1))))
    return GriddedPermutation(p, Gridding(x, y), dims)


def test_generator_images_on_example():
    assert row_complement(SAMPLE_3X3, 2).perm == (8, 1, 4, 5, 9, 6, 11, 12, 2, 7, 3, 10)
    assert permute_columns(SAMPLE_3X3, (3, 1, 2)).perm == (2, 6, 3, 10, 5, 1, 4, 8, 9, 7, 11, 12)
    assert apply(identity(3, 3), SAMPLE_3X3) == SAMPLE_3X3


def test_generators_on_matrices():
    M1 = mk_matrix(1)[0]
    assert permute_columns(M1, (2, 1)) == row_matrix(SKEW12, SUM21)
    assert row_complement(M1, 1) == row_matrix(SKEW12, SUM21)
    assert column_reverse(row_matrix(AV21, AV12), 1) == row_matrix(AV12, AV12)
    assert grid_inverse(grid_inverse(M1)) == M1
    assert grid_inverse(M1).dims == (1, 2)
    with pytest.raises(IndexError):
        column_reverse(M1, 3)
    with pytest.raises(ValueError):
        permute_rows(M1, (1, 2))


def test_column_reverse_example():
    gp = gridded((1, 3, 5, 2, 4, 6), (3,), ())
    assert column_reverse(gp, 1).perm == (5, 3, 1, 2, 4, 6)


@pytest.mark.parametrize("dims", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)])
def test_inverse_is_involution(dims):
    rng = random.Random(1)
    for _ in range(50):
        gp = random_gridded(rng, dims, rng.randint(0, 10))
        assert grid_inverse(grid_inverse(gp)) == gp


@given(matrices(max_cols=3, max_rows=3))
def test_inverse_involution_on_matrices(M):
    assert grid_inverse(grid_inverse(M)) == M


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_compose_matches_sequential_application(data):
    m, n = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    g = random_mapping(rng, m, n)
    f = random_mapping(rng, *g.target_dims)
    gp = data.draw(gridded_perms((m, n)))
    assert apply(compose(f, g), gp) == apply(f, apply(g, gp))
    assert apply(invert_mapping(g), apply(g, gp)) == gp
    assert compose(g, invert_mapping(g)) == identity(*g.target_dims)
    assert compose(invert_mapping(g), g) == identity(m, n)


def test_generator_laws():
    r1 = GridMapping(False, (1, 2), (1,), frozenset({1}))
    assert compose(r1, r1) == identity(2, 1)
    phi = GridMapping(True, (1, 2), (1, 2))
    c1 = GridMapping(False, (1, 2), (1, 2), comp_rows=frozenset({1}))
    both = compose(phi, c1)
    # complementing row 1 before the inverse is reversing column 1 after it
    assert both.inverse and both.comp_rows == {1}
    after = compose(GridMapping(False, (1, 2), (1, 2), rev_cols=frozenset({1})), phi)
    assert after == both
    rng = random.Random(3)
    for _ in range(20):
        gp = random_gridded(rng, (2, 2), 7)
        assert apply(both, gp) == column_reverse(grid_inverse(gp), 1)


def test_enumeration_counts():
    assert mapping_count(2, 1) == 32
    assert len(list(enumerate_mappings(2, 1))) == 32
    maps = list(enumerate_mappings(2, 2))
    assert len(maps) == len(set(maps)) == mapping_count(2, 2)
    probe = row_matrix(finite_basis("1342"))
    assert len({apply(f, probe) for f in enumerate_mappings(1, 1)}) == 8
    with pytest.raises(CapExceeded):
        next(enumerate_mappings(6, 6))


def test_enumerated_mappings_invert():
    M = from_cells(2, 2, {(1, 1): SUM21, (2, 1): AV12, (2, 2): finite_basis("231")})
    for f in enumerate_mappings(2, 2):
        assert apply(invert_mapping(f), apply(f, M)) == M


def test_mapping_json():
    rng = random.Random(4)
    for _ in range(20):
        f = random_mapping(rng, 3, 2)
        assert mapping_from_json(mapping_to_json(f)) == f
    with pytest.raises(ValueError):
        mapping_from_json({"inverse": False, "col_perm": [1, 1], "row_perm": [1]})
    with pytest.raises(ValueError):
        mapping_from_json({"inverse": False})


@pytest.mark.parametrize("dims", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_mappings_preserve_gridded_containment(dims):
    rng = random.Random(hash(dims))
    maps = list(enumerate_mappings(*dims))
    for _ in range(60):
        pi = random_gridded(rng, dims, rng.randint(0, 8))
        alpha = random_gridded(rng, dims, rng.randint(0, 4))
        for f in rng.sample(maps, min(16, len(maps))):
            assert gridded_contains(alpha, pi) == gridded_contains(apply(f, alpha), apply(f, pi))


def test_path_conditions():
    for k in range(1, 7):
        assert check_path_conditions(mk_matrix(k)[0]).ok
        assert check_path_conditions(mk_matrix(k)[0]).length == k
    leafless = row_matrix(SUM21, AV21)
    assert not check_path_conditions(leafless).ok
    assert "(3) a leaf is not labelled ⊕21 or ⊖12" in check_path_conditions(leafless).failed
    gap = from_cells(2, 2, {(1, 1): SUM21, (2, 1): SKEW12})
    assert not check_path_conditions(gap).no_empty_lines
    three = row_matrix(SUM21, AV21, SKEW12)
    assert not check_path_conditions(three).at_most_two_per_line


def test_canonicalize_examples():
    for k in range(1, 6):
        Mk = mk_matrix(k)[0]
        got_k, f = canonicalize(Mk)
        assert got_k == k and f == identity(*Mk.dims)
    M3 = mk_matrix(3)[0]
    k, f = canonicalize(grid_inverse(M3))
    assert k == 3 and f.inverse and apply(f, M3) == grid_inverse(M3)
    swapped = row_matrix(SKEW12, SUM21)
    k, f = canonicalize(swapped)
    assert k == 1 and apply(f, mk_matrix(1)[0]) == swapped
    with pytest.raises(ValueError):
        canonicalize(row_matrix(SUM21, AV21))


@pytest.mark.parametrize("k", range(1, 7))
def test_canonicalize_random_images(k):
    rng = random.Random(k)
    Mk = mk_matrix(k)[0]
    for _ in range(25):
        g = random_mapping(rng, *Mk.dims)
        target = apply(g, Mk)
        got_k, f = canonicalize(target)
        assert got_k == k and apply(f, Mk) == target
