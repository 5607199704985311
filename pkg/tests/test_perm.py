import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridkit.perm import (
    SYMMETRIES,
    all_perms,
    complement,
    contains,
    contains_bruteforce,
    direct_sum,
    find_embedding,
    fmt,
    inflate,
    intervals,
    inverse,
    is_simple,
    perm,
    reverse,
    skew_sum,
    standardize,
    substitution_decompose,
)

from conftest import perms


def test_parse_forms():
    assert perm("2413") == (2, 4, 1, 3)
    assert perm("[2, 4, 1, 3]") == (2, 4, 1, 3)
    assert perm("2,4,1,3") == perm("2 4 1 3") == (2, 4, 1, 3)
    assert perm("") == ()
    assert perm([3, 1, 2]) == (3, 1, 2)
    assert perm("10 1 2 3 4 5 6 7 8 9")[0] == 10


@pytest.mark.parametrize("bad", ["1224", "0123", "2", "[1, 3]"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        perm(bad)


def test_fmt():
    assert fmt((2, 4, 1, 3)) == "2413"
    assert fmt(()) == "ε"
    assert fmt(tuple(range(1, 11))).startswith("1 2 3")


def test_standardize():
    assert standardize([9, 1, 5, 7]) == (4, 1, 2, 3)
    assert standardize([]) == ()


def test_witness_is_lexicographically_least():
    text = perm("918572346")
    assert find_embedding(perm("51342"), text) == (1, 2, 4, 5, 6)
    assert [text[i - 1] for i in find_embedding(perm("51342"), text)] == [9, 1, 5, 7, 2]
    assert not contains(perm("3142"), text)


def test_containment_edge_cases():
    assert contains((), (2, 1))
    assert contains((1,), (1,))
    assert not contains((1, 2), (1,))
    assert find_embedding((), (1,)) == ()


def test_lex_least_against_brute_force():
    for n in range(1, 7):
        for text in all_perms(n):
            for pattern in [(1, 2), (2, 1), (1, 3, 2), (2, 3, 1)]:
                brute = next(
                    (
                        tuple(i + 1 for i in idx)
                        for idx in itertools.combinations(range(n), len(pattern))
                        if standardize([text[i] for i in idx]) == pattern
                    ),
                    None,
                )
                assert find_embedding(pattern, text) == brute


@given(perms(max_size=5), perms(max_size=8))
def test_contains_matches_oracle(pattern, text):
    assert contains(pattern, text) == contains_bruteforce(pattern, text)


@given(perms(1, 7), perms(0, 4), perms(0, 4))
def test_containment_transitive(a, b, c):
    if contains(a, b) and contains(b, c):
        assert contains(a, c)


def test_intervals_example():
    ivs = intervals(perm("72645813"))
    assert (3, 5) in ivs
    assert all(b - a >= 0 for a, b in ivs)
    assert (1, 8) in ivs


def test_simple():
    assert is_simple((1,)) and is_simple((1, 2)) and is_simple((2, 1))
    assert is_simple(perm("2413")) and is_simple(perm("3142"))
    assert not is_simple(perm("123"))
    with pytest.raises(ValueError):
        is_simple(())
    # 2 4 6 ... 2k 1 3 5 ... 2k-1 is simple for k >= 2
    for k in range(2, 7):
        assert is_simple(tuple(list(range(2, 2 * k + 1, 2)) + list(range(1, 2 * k, 2))))


def test_simple_counts():
    # number of simple permutations of length 4..7 (OEIS A111111)
    assert [sum(is_simple(p) for p in all_perms(n)) for n in range(4, 8)] == [2, 6, 46, 338]


def test_inflate_example():
    assert inflate(perm("2413"), [perm("21"), perm("312"), perm("1"), perm("12")]) == perm("32867145")


def test_inflate_strict_and_lenient():
    with pytest.raises(ValueError):
        inflate((1, 2), [(1,), ()])
    assert inflate((1, 2), [(1,), ()], lenient=True) == (1,)
    with pytest.raises(ValueError):
        inflate((1, 2), [(1,)])
    assert direct_sum((1,), (2, 1)) == (1, 3, 2)
    assert skew_sum((1,), (1, 2)) == (3, 1, 2)


def test_decompose_examples():
    assert substitution_decompose(perm("32867145")) == (perm("2413"), [(2, 1), (3, 1, 2), (1,), (1, 2)])
    assert substitution_decompose(perm("123456")) == ((1, 2), [(1,), (1, 2, 3, 4, 5)])
    assert substitution_decompose(perm("654321")) == ((2, 1), [(1,), (5, 4, 3, 2, 1)])
    with pytest.raises(ValueError):
        substitution_decompose((1,))


@given(perms(2, 9))
def test_decompose_inverts_inflate(p):
    skeleton, blocks = substitution_decompose(p)
    assert is_simple(skeleton) and len(skeleton) >= 2
    assert inflate(skeleton, blocks) == p
    if skeleton == (1, 2):
        assert substitution_decompose(blocks[0])[0] != (1, 2) if len(blocks[0]) > 1 else True
    if skeleton == (2, 1):
        assert substitution_decompose(blocks[0])[0] != (2, 1) if len(blocks[0]) > 1 else True


@given(perms(max_size=8))
def test_symmetries_are_involutions(p):
    assert reverse(reverse(p)) == p
    assert complement(complement(p)) == p
    assert inverse(inverse(p)) == p


@given(perms(max_size=5), perms(max_size=7), st.sampled_from(sorted(SYMMETRIES)))
@settings(max_examples=150)
def test_symmetries_preserve_containment(a, b, name):
    f = SYMMETRIES[name]
    assert contains(a, b) == contains(f(a), f(b))


def test_eight_symmetries_distinct():
    images = {f(perm("2413")) for f in SYMMETRIES.values()}
    assert len(images) == 2  # 2413 and 3142 only
    images = {f(perm("1342")) for f in SYMMETRIES.values()}
    assert len(images) == 8
