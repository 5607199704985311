import random

import pytest
from hypothesis import strategies as st

from gridkit.classes import AV12, AV21, EMPTY, SKEW12, SUM21, generate_members
from gridkit.gridding import Gridding, GriddedPermutation, from_cells

NAMED = [AV21, AV12, SUM21, SKEW12, EMPTY]

_ACCEPTANCE_LINES: list[str] = []


@st.composite
def perms(draw, min_size=0, max_size=8):
    n = draw(st.integers(min_size, max_size))
    return tuple(draw(st.permutations(range(1, n + 1))))


@st.composite
def matrices(draw, max_cols=2, max_rows=2, classes=tuple(NAMED)):
    m = draw(st.integers(1, max_cols))
    n = draw(st.integers(1, max_rows))
    cells = {(s, t): draw(st.sampled_from(classes)) for s in range(1, m + 1) for t in range(1, n + 1)}
    return from_cells(m, n, cells)


def random_matrix(rng: random.Random, m: int, n: int, classes=NAMED):
    return from_cells(m, n, {(s, t): rng.choice(classes) for s in range(1, m + 1) for t in range(1, n + 1)})


def random_gridded_member(rng: random.Random, M, n: int) -> GriddedPermutation:
    """A random M-gridded permutation of length n, built cell by cell.

    Each cell gets a random member of its class; the points sharing a column
    (row) are then shuffled together keeping each cell's own order.
    """
    filled = M.nonempty()
    counts = dict.fromkeys(filled, 0)
    for _ in range(n):
        counts[rng.choice(filled)] += 1
    content = {c: rng.choice(generate_members(M[c], counts[c])) for c in filled}
    xs, ys = {}, {}
    offset = 0
    for s in range(1, M.cols + 1):
        seq = [c for c in filled if c[0] == s for _ in range(counts[c])]
        rng.shuffle(seq)
        seen = dict.fromkeys(seq, 0)
        for at, c in enumerate(seq, offset + 1):
            seen[c] += 1
            xs[c, seen[c]] = at
        offset += len(seq)
    xcuts = [sum(counts[c] for c in filled if c[0] <= s) for s in range(1, M.cols)]
    offset = 0
    for t in range(1, M.rows + 1):
        seq = [c for c in filled if c[1] == t for _ in range(counts[c])]
        rng.shuffle(seq)
        seen = dict.fromkeys(seq, 0)
        for at, c in enumerate(seq, offset + 1):
            seen[c] += 1
            ys[c, seen[c]] = at  # the seen[c]-th smallest value of the cell
        offset += len(seq)
    ycuts = [sum(counts[c] for c in filled if c[1] <= t) for t in range(1, M.rows)]
    p = [0] * n
    for c in filled:
        for a, v in enumerate(content[c], 1):
            p[xs[c, a] - 1] = ys[c, v]
    return GriddedPermutation(tuple(p), Gridding(tuple(xcuts), tuple(ycuts)), M.dims)


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def emit(label: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
