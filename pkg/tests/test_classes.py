import pytest
from hypothesis import given

from gridkit.classes import (
    AV12,
    AV21,
    EMPTY,
    SKEW12,
    SUM21,
    CapExceeded,
    CellClass,
    Kind,
    class_complement,
    class_from_json,
    class_inverse,
    class_reverse,
    class_to_json,
    finite_basis,
    generate_members,
    is_monotone,
    is_monotone_griddable,
    member,
)
from gridkit.perm import all_perms, complement, inverse, reverse

from conftest import NAMED, perms

# basis descriptions of the named kinds, used as an independent oracle
AS_BASIS = {
    AV21: finite_basis("21"),
    AV12: finite_basis("12"),
    SUM21: finite_basis("231", "312", "321"),
    SKEW12: finite_basis("123", "132", "213"),
}


@pytest.mark.parametrize("cls", list(AS_BASIS))
def test_named_kinds_match_bases(cls):
    for n in range(0, 8):
        for p in all_perms(n):
            assert member(cls, p) == member(AS_BASIS[cls], p)


def test_empty_class():
    assert member(EMPTY, ())
    assert not member(EMPTY, (1,))


def test_member_counts():
    fib = [1, 1, 2, 3, 5, 8, 13, 21, 34]
    for n in range(9):
        assert len(generate_members(SUM21, n)) == fib[n]
        assert len(generate_members(SKEW12, n)) == fib[n]
        assert len(generate_members(AV21, n)) == 1
    # Av(231) is counted by the Catalan numbers
    assert [len(generate_members(finite_basis("231"), n)) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_generate_members_sorted_and_capped():
    got = generate_members(finite_basis("321"), 4)
    assert got == sorted(got)
    with pytest.raises(CapExceeded):
        generate_members(SUM21, 11)


def test_basis_validation():
    with pytest.raises(ValueError):
        finite_basis("1")
    with pytest.raises(ValueError):
        finite_basis("12", "123")
    with pytest.raises(ValueError):
        CellClass(Kind.FINITE_BASIS)
    with pytest.raises(ValueError):
        CellClass(Kind.SUM21, frozenset({(1, 2)}))


def test_monotone_and_griddable():
    assert is_monotone(AV21) and is_monotone(AV12)
    assert not is_monotone(SUM21) and not is_monotone(EMPTY)
    assert not is_monotone(finite_basis("21"))  # only the named kinds count
    assert is_monotone_griddable(EMPTY) and is_monotone_griddable(AV12)
    assert not is_monotone_griddable(SUM21) and not is_monotone_griddable(SKEW12)
    assert is_monotone_griddable(finite_basis("213", "231"))
    assert not is_monotone_griddable(finite_basis("231"))  # contains all of ⊕21


@pytest.mark.parametrize(
    "op, perm_op", [(class_reverse, reverse), (class_complement, complement), (class_inverse, inverse)]
)
@pytest.mark.parametrize("cls", NAMED + [finite_basis("231"), finite_basis("2413", "3142")])
def test_class_symmetries(op, perm_op, cls):
    image = op(cls)
    for n in range(6):
        for p in all_perms(n):
            assert member(cls, p) == member(image, perm_op(p))


@given(perms(max_size=7))
def test_sum21_closed_under_inverse(p):
    assert member(SUM21, p) == member(SUM21, inverse(p))


@pytest.mark.parametrize("cls", NAMED + [finite_basis("231", "312"), finite_basis("12", finitely_many_simples=True)])
def test_json_roundtrip(cls):
    assert class_from_json(class_to_json(cls)) == cls


@pytest.mark.parametrize("bad", ["basis", "foo", {"basis": [[1, 1]]}, {"basis": [[1, 2]], "finitely_many_simples": "yes"}, 3])
def test_json_rejects(bad):
    with pytest.raises(ValueError):
        class_from_json(bad)
