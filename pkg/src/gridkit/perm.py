"""Permutations in one-line notation.

A permutation of length n is a tuple holding each of 1..n exactly once.
Indices reported to callers (embeddings, intervals) are 1-based, matching
the usual way the plot of a permutation is drawn.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Iterator, Optional, Sequence

Perm = tuple[int, ...]

EMPTY: Perm = ()


def perm(spec: str | Iterable[int]) -> Perm:
    """Build a permutation from a digit string ("2413"), a JSON array or an iterable.

    Digit strings only make sense for lengths up to 9.

    >>> perm("2413")
    (2, 4, 1, 3)
    >>> perm("[10, 1, 2, 3, 4, 5, 6, 7, 8, 9]")[0]
    10
    """
    if isinstance(spec, str):
        text = spec.strip()
        if text.startswith("["):
            values = tuple(int(v) for v in json.loads(text))
        elif "," in text or " " in text:
            values = tuple(int(v) for v in text.replace(",", " ").split())
        elif text in ("", "e", "ε"):
            values = ()
        else:
            values = tuple(int(c) for c in text)
    else:
        values = tuple(int(v) for v in spec)
    if sorted(values) != list(range(1, len(values) + 1)):
        raise ValueError(f"not a permutation of 1..{len(values)}: {values!r}")
    return values


def is_perm(values: Sequence[int]) -> bool:
    return sorted(values) == list(range(1, len(values) + 1))


def fmt(p: Perm) -> str:
    """Compact string form; digits for short permutations, spaced otherwise."""
    if not p:
        return "ε"
    if len(p) <= 9:
        return "".join(map(str, p))
    return " ".join(map(str, p))


def standardize(values: Sequence) -> Perm:
    """The permutation order isomorphic to a sequence of distinct comparables."""
    order = sorted(range(len(values)), key=values.__getitem__)
    out = [0] * len(values)
    for rank, idx in enumerate(order, 1):
        out[idx] = rank
    return tuple(out)


def all_perms(n: int) -> Iterator[Perm]:
    """All permutations of length n in lexicographic order."""
    return itertools.permutations(range(1, n + 1))


# ---------------------------------------------------------------- containment


def _neighbours(pattern: Perm) -> list[tuple[int, int]]:
    """For each pattern index j, the earlier indices holding the nearest
    smaller and nearest larger value (-1 when there is none).

    Placing pattern[j] then only needs two comparisons against text values
    already chosen.
    """
    out = []
    for j, v in enumerate(pattern):
        lo, hi = -1, -1
        for i in range(j):
            w = pattern[i]
            if w < v and (lo < 0 or w > pattern[lo]):
                lo = i
            elif w > v and (hi < 0 or w < pattern[hi]):
                hi = i
        out.append((lo, hi))
    return out


def _embed(
    pattern: Perm,
    text: Perm,
    allowed: Optional[Sequence[Sequence[bool]]] = None,
) -> Optional[tuple[int, ...]]:
    """Backtracking search for the lexicographically least embedding.

    ``allowed[j][i]`` (optional) restricts which text indices may host
    pattern index j.  Returns 0-based text indices.
    """
    k, n = len(pattern), len(text)
    if k == 0:
        return ()
    if k > n:
        return None
    nbrs = _neighbours(pattern)
    chosen = [0] * k

    def place(j: int, start: int) -> bool:
        lo, hi = nbrs[j]
        lo_val = text[chosen[lo]] if lo >= 0 else 0
        hi_val = text[chosen[hi]] if hi >= 0 else n + 1
        # leave room for the remaining k - j - 1 pattern entries
        for i in range(start, n - (k - j) + 1):
            if allowed is not None and not allowed[j][i]:
                continue
            if lo_val < text[i] < hi_val:
                chosen[j] = i
                if j + 1 == k or place(j + 1, i + 1):
                    return True
        return False

    return tuple(chosen) if place(0, 0) else None


def contains(pattern: Perm, text: Perm) -> bool:
    """True iff some subsequence of ``text`` is order isomorphic to ``pattern``.

    >>> contains((5, 1, 3, 4, 2), (9, 1, 8, 5, 7, 2, 3, 4, 6))
    True
    >>> contains((3, 1, 4, 2), (9, 1, 8, 5, 7, 2, 3, 4, 6))
    False
    """
    return _embed(pattern, text) is not None


def avoids(text: Perm, pattern: Perm) -> bool:
    return _embed(pattern, text) is None


def find_embedding(pattern: Perm, text: Perm) -> Optional[tuple[int, ...]]:
    """Lexicographically least 1-based index sequence witnessing containment."""
    found = _embed(pattern, text)
    if found is None:
        return None
    return tuple(i + 1 for i in found)


def contains_bruteforce(pattern: Perm, text: Perm) -> bool:
    """Exhaustive subsequence scan; the oracle for :func:`contains`."""
    k = len(pattern)
    return any(
        standardize([text[i] for i in idx]) == pattern
        for idx in itertools.combinations(range(len(text)), k)
    )


# ---------------------------------------------------------------- intervals


def intervals(p: Perm) -> list[tuple[int, int]]:
    """Every index range [a, b] (1-based, inclusive) whose values are contiguous."""
    n = len(p)
    out = []
    for a in range(n):
        lo = hi = p[a]
        for b in range(a, n):
            lo = min(lo, p[b])
            hi = max(hi, p[b])
            if hi - lo == b - a:
                out.append((a + 1, b + 1))
    return out


def is_simple(p: Perm) -> bool:
    """True iff the only intervals are singletons and the whole permutation.

    Lengths 1 and 2 count as simple.
    """
    n = len(p)
    if n == 0:
        raise ValueError("the empty permutation is not simple")
    return all(b - a in (0, n - 1) for a, b in intervals(p))


# ---------------------------------------------------------------- inflation


def inflate(skeleton: Perm, blocks: Sequence[Perm], lenient: bool = False) -> Perm:
    """The inflation skeleton[blocks[0], ..., blocks[k-1]].

    With ``lenient`` set, empty blocks are allowed and simply drop out.

    >>> inflate((2, 4, 1, 3), [(2, 1), (3, 1, 2), (1,), (1, 2)])
    (3, 2, 8, 6, 7, 1, 4, 5)
    """
    if len(blocks) != len(skeleton):
        raise ValueError(
            f"skeleton of length {len(skeleton)} needs {len(skeleton)} blocks, got {len(blocks)}"
        )
    if not lenient and any(len(b) == 0 for b in blocks):
        raise ValueError("empty block in a strict inflation")
    # value offset of block i = total size of blocks whose skeleton value is smaller
    sizes_by_value = [0] * (len(skeleton) + 1)
    for s, b in zip(skeleton, blocks):
        sizes_by_value[s] = len(b)
    offset = list(itertools.accumulate(sizes_by_value))
    out: list[int] = []
    for s, b in zip(skeleton, blocks):
        base = offset[s - 1]
        out.extend(base + v for v in b)
    return tuple(out)


def direct_sum(*parts: Perm) -> Perm:
    return inflate(tuple(range(1, len(parts) + 1)), parts, lenient=True)


def skew_sum(*parts: Perm) -> Perm:
    return inflate(tuple(range(len(parts), 0, -1)), parts, lenient=True)


def _sum_split(p: Perm) -> Optional[int]:
    """Length of the shortest nonempty proper prefix holding values 1..i."""
    hi = 0
    for i, v in enumerate(p[:-1], 1):
        hi = max(hi, v)
        if hi == i:
            return i
    return None


def _skew_split(p: Perm) -> Optional[int]:
    n = len(p)
    lo = n + 1
    for i, v in enumerate(p[:-1], 1):
        lo = min(lo, v)
        if lo == n - i + 1:
            return i
    return None


def substitution_decompose(p: Perm) -> tuple[Perm, list[Perm]]:
    """Write ``p`` as an inflation of a simple permutation of length >= 2.

    For sum (skew) decomposable input the skeleton is 12 (21) and the first
    block is the shortest sum (skew) indecomposable prefix, which makes the
    answer unique.

    >>> substitution_decompose((3, 2, 8, 6, 7, 1, 4, 5))
    ((2, 4, 1, 3), [(2, 1), (3, 1, 2), (1,), (1, 2)])
    """
    n = len(p)
    if n < 2:
        raise ValueError("no decomposition: length < 2")
    cut = _sum_split(p)
    if cut is not None:
        return (1, 2), [standardize(p[:cut]), standardize(p[cut:])]
    cut = _skew_split(p)
    if cut is not None:
        return (2, 1), [standardize(p[:cut]), standardize(p[cut:])]
    # Neither sum nor skew decomposable: the maximal proper intervals are
    # disjoint and cover every index.
    proper = [(a, b) for a, b in intervals(p) if b - a < n - 1]
    maximal = [
        (a, b)
        for a, b in proper
        if not any(c <= a and b <= d and (c, d) != (a, b) for c, d in proper)
    ]
    maximal.sort()
    skeleton = standardize([p[a - 1] for a, _ in maximal])
    blocks = [standardize(p[a - 1 : b]) for a, b in maximal]
    return skeleton, blocks


# ---------------------------------------------------------------- symmetries


def reverse(p: Perm) -> Perm:
    return tuple(reversed(p))


def complement(p: Perm) -> Perm:
    n = len(p)
    return tuple(n + 1 - v for v in p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p, 1):
        out[v - 1] = i
    return tuple(out)


SYMMETRIES = {
    "identity": lambda p: p,
    "reverse": reverse,
    "complement": complement,
    "inverse": inverse,
    "reverse-complement": lambda p: reverse(complement(p)),
    "reverse-inverse": lambda p: reverse(inverse(p)),
    "complement-inverse": lambda p: complement(inverse(p)),
    "reverse-complement-inverse": lambda p: reverse(complement(inverse(p))),
}
