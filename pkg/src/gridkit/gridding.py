"""Gridding matrices, griddings of permutations and gridded containment.

Matrices and grids are indexed from the bottom-left with the column first:
cell (s, t) is column s, row t, both 1-based.  A gridding of a permutation
of length l is stored as cut positions: column s holds positions
x[s-1] < i <= x[s] (with x[0] = 0 and x[m] = l), row t holds values
y[t-1] < v <= y[t].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator, Optional, Sequence

import networkx as nx

from .classes import (
    EMPTY,
    CapExceeded,
    CellClass,
    class_from_json,
    class_to_json,
    member,
)
from .perm import Perm, _embed, perm, standardize

Cell = tuple[int, int]

MAX_LENGTH = 60
MAX_CUTS = 6


@dataclass(frozen=True)
class GriddingMatrix:
    cols: int
    rows: int
    # cells[s-1][t-1] is the class of cell (s, t)
    cells: tuple[tuple[CellClass, ...], ...]

    def __post_init__(self):
        if self.cols < 1 or self.rows < 1:
            raise ValueError("a gridding matrix needs at least one row and one column")
        if len(self.cells) != self.cols or any(len(c) != self.rows for c in self.cells):
            raise ValueError("cell array does not match the stated dimensions")

    def __getitem__(self, cell: Cell) -> CellClass:
        s, t = cell
        if not (1 <= s <= self.cols and 1 <= t <= self.rows):
            raise IndexError(f"cell {cell} outside a {self.cols}x{self.rows} matrix")
        return self.cells[s - 1][t - 1]

    @property
    def dims(self) -> tuple[int, int]:
        return self.cols, self.rows

    def all_cells(self) -> Iterator[Cell]:
        for s in range(1, self.cols + 1):
            for t in range(1, self.rows + 1):
                yield s, t

    def nonempty(self) -> list[Cell]:
        return [c for c in self.all_cells() if not self[c].is_empty]

    def replace(self, updates: dict[Cell, CellClass]) -> "GriddingMatrix":
        return from_cells(self.cols, self.rows, {**self.as_dict(), **updates})

    def as_dict(self) -> dict[Cell, CellClass]:
        return {c: self[c] for c in self.nonempty()}

    def __str__(self) -> str:
        # drawn top row first
        width = max(len(str(self[c])) for c in self.all_cells())
        lines = []
        for t in range(self.rows, 0, -1):
            row = [
                ("" if self[s, t].is_empty else str(self[s, t])).ljust(width)
                for s in range(1, self.cols + 1)
            ]
            lines.append("( " + "  ".join(row) + " )")
        return "\n".join(lines)


def from_cells(cols: int, rows: int, cells: dict[Cell, CellClass]) -> GriddingMatrix:
    """Matrix with the given nonempty cells; everything else is empty."""
    grid = [[EMPTY] * rows for _ in range(cols)]
    for (s, t), cls in cells.items():
        if not (1 <= s <= cols and 1 <= t <= rows):
            raise IndexError(f"cell {(s, t)} outside a {cols}x{rows} matrix")
        grid[s - 1][t - 1] = cls
    return GriddingMatrix(cols, rows, tuple(tuple(c) for c in grid))


def row_matrix(*classes: CellClass) -> GriddingMatrix:
    """A 1-row matrix, e.g. ``row_matrix(AV21, AV21)`` for (Av(21) Av(21))."""
    return from_cells(len(classes), 1, {(s, 1): c for s, c in enumerate(classes, 1)})


@dataclass(frozen=True)
class Gridding:
    x: tuple[int, ...]
    y: tuple[int, ...]

    def check(self, length: int, dims: tuple[int, int]) -> None:
        m, n = dims
        if len(self.x) != m - 1 or len(self.y) != n - 1:
            raise ValueError(f"gridding {self} does not fit a {m}x{n} grid")
        for cuts in (self.x, self.y):
            if any(not 0 <= c <= length for c in cuts) or list(cuts) != sorted(cuts):
                raise ValueError(f"cuts {cuts} must be nondecreasing within 0..{length}")

    def col_of(self, i: int) -> int:
        """Column holding position i (1-based)."""
        return 1 + sum(1 for c in self.x if c < i)

    def row_of(self, v: int) -> int:
        return 1 + sum(1 for c in self.y if c < v)


@dataclass(frozen=True)
class GriddedPermutation:
    perm: Perm
    gridding: Gridding
    dims: tuple[int, int]

    def __post_init__(self):
        self.gridding.check(len(self.perm), self.dims)

    def __len__(self) -> int:
        return len(self.perm)

    def cell_of(self, i: int) -> Cell:
        """Cell of the point at position i (1-based)."""
        return self.gridding.col_of(i), self.gridding.row_of(self.perm[i - 1])

    def cells(self) -> list[Cell]:
        return [self.cell_of(i) for i in range(1, len(self.perm) + 1)]

    def col_bounds(self, s: int) -> tuple[int, int]:
        """Positions (a, b] held by column s."""
        x = (0, *self.gridding.x, len(self.perm))
        return x[s - 1], x[s]

    def row_bounds(self, t: int) -> tuple[int, int]:
        y = (0, *self.gridding.y, len(self.perm))
        return y[t - 1], y[t]


def gridded(p: Perm, x: Sequence[int], y: Sequence[int]) -> GriddedPermutation:
    return GriddedPermutation(tuple(p), Gridding(tuple(x), tuple(y)), (len(x) + 1, len(y) + 1))


def cell_contents(gp: GriddedPermutation, s: int, t: int) -> Perm:
    """The permutation order isomorphic to the points in cell (s, t)."""
    m, n = gp.dims
    if not (1 <= s <= m and 1 <= t <= n):
        raise IndexError(f"cell {(s, t)} outside a {m}x{n} grid")
    a, b = gp.col_bounds(s)
    lo, hi = gp.row_bounds(t)
    return standardize([v for v in gp.perm[a:b] if lo < v <= hi])


def is_gridded_by(gp: GriddedPermutation, M: GriddingMatrix) -> bool:
    if gp.dims != M.dims:
        return False
    return all(member(M[c], cell_contents(gp, *c)) for c in M.all_cells())


# ---------------------------------------------------------------- enumeration


def _check_caps(p: Perm, M: GriddingMatrix, max_length: int, max_cuts: int) -> None:
    if len(p) > max_length:
        raise CapExceeded(f"gridding enumeration capped at length {max_length}, got {len(p)}")
    cuts = (M.cols - 1) + (M.rows - 1)
    if cuts > max_cuts:
        raise CapExceeded(f"gridding enumeration capped at {max_cuts} cut lines, got {cuts}")


def enumerate_griddings(
    p: Perm,
    M: GriddingMatrix,
    max_length: int = MAX_LENGTH,
    max_cuts: int = MAX_CUTS,
) -> list[Gridding]:
    """Every M-gridding of ``p``, in lexicographic order of (x, y).

    Row cuts are fixed first; column cuts are then grown left to right and a
    column stops growing as soon as one of its cells leaves its class, which
    is safe because classes are closed downwards.
    """
    _check_caps(p, M, max_length, max_cuts)
    n, length = M.rows, len(p)
    found = []
    for y in itertools.combinations_with_replacement(range(length + 1), n - 1):
        row_of = [0] * (length + 1)
        for v in range(1, length + 1):
            row_of[v] = 1 + sum(1 for c in y if c < v)
        for x in _column_cuts(p, M, row_of, 1, 0):
            found.append(Gridding(x, y))
    found.sort(key=lambda g: (g.x, g.y))
    return found


def _column_cuts(p: Perm, M: GriddingMatrix, row_of, s: int, start: int):
    """Yield the remaining column cuts given that column s starts after ``start``."""
    length = len(p)
    classes = M.cells[s - 1]
    contents: list[list[int]] = [[] for _ in classes]
    if s == M.cols:
        for i in range(start, length):
            contents[row_of[p[i]] - 1].append(p[i])
        if all(member(c, standardize(pts)) for c, pts in zip(classes, contents)):
            yield ()
        return
    # column s holds positions start+1..end
    end = start
    while True:
        for rest in _column_cuts(p, M, row_of, s + 1, end):
            yield (end, *rest)
        if end == length:
            return
        v = p[end]
        t = row_of[v] - 1
        contents[t].append(v)
        if not member(classes[t], standardize(contents[t])):
            return
        end += 1


def enumerate_griddings_bruteforce(p: Perm, M: GriddingMatrix) -> list[Gridding]:
    """Unpruned scan over every cut vector; the oracle for the pruned search."""
    length = len(p)
    out = []
    for x in itertools.combinations_with_replacement(range(length + 1), M.cols - 1):
        for y in itertools.combinations_with_replacement(range(length + 1), M.rows - 1):
            gp = gridded(p, x, y)
            if is_gridded_by(gp, M):
                out.append(gp.gridding)
    out.sort(key=lambda g: (g.x, g.y))
    return out


def is_griddable(p: Perm, M: GriddingMatrix, **caps) -> bool:
    return bool(enumerate_griddings(p, M, **caps))


def gridding_count(p: Perm, M: GriddingMatrix, **caps) -> int:
    return len(enumerate_griddings(p, M, **caps))


def unique_gridding(p: Perm, M: GriddingMatrix, **caps) -> Optional[Gridding]:
    found = enumerate_griddings(p, M, **caps)
    return found[0] if len(found) == 1 else None


def all_gridded(p: Perm, M: GriddingMatrix, **caps) -> list[GriddedPermutation]:
    return [GriddedPermutation(p, g, M.dims) for g in enumerate_griddings(p, M, **caps)]


# ---------------------------------------------------------------- containment


def gridded_embedding(
    alpha: GriddedPermutation, pi: GriddedPermutation
) -> Optional[tuple[int, ...]]:
    """A cell-respecting embedding of alpha into pi (1-based indices), if any."""
    if alpha.dims != pi.dims:
        raise ValueError(f"dimension mismatch: {alpha.dims} vs {pi.dims}")
    text_cells = pi.cells()
    allowed = [[tc == ac for tc in text_cells] for ac in alpha.cells()]
    found = _embed(alpha.perm, pi.perm, allowed)
    return None if found is None else tuple(i + 1 for i in found)


def gridded_contains(alpha: GriddedPermutation, pi: GriddedPermutation) -> bool:
    """alpha <= pi in the gridded order: an embedding sending every point to its own cell."""
    return gridded_embedding(alpha, pi) is not None


def gridded_contains_bruteforce(alpha: GriddedPermutation, pi: GriddedPermutation) -> bool:
    if alpha.dims != pi.dims:
        raise ValueError(f"dimension mismatch: {alpha.dims} vs {pi.dims}")
    want = alpha.cells()
    cells = pi.cells()
    for idx in itertools.combinations(range(len(pi.perm)), len(alpha.perm)):
        if [cells[i] for i in idx] == want and standardize([pi.perm[i] for i in idx]) == alpha.perm:
            return True
    return False


def restrict(gp: GriddedPermutation, positions: Sequence[int]) -> GriddedPermutation:
    """The gridded subpermutation on the given 1-based positions."""
    positions = sorted(positions)
    cells = [gp.cell_of(i) for i in positions]
    values = [gp.perm[i - 1] for i in positions]
    sub = standardize(values)
    m, n = gp.dims
    x = tuple(sum(1 for c in cells if c[0] <= s) for s in range(1, m))
    by_value = sorted(zip(sub, cells))
    y = tuple(sum(1 for _, c in by_value if c[1] <= t) for t in range(1, n))
    return GriddedPermutation(sub, Gridding(x, y), gp.dims)


# ---------------------------------------------------------------- matrix graph


def matrix_graph(M: GriddingMatrix) -> nx.Graph:
    """Nonempty cells, joined when they share a row or column with only empty cells between.

    Edges carry ``kind`` = "row" or "col".
    """
    G = nx.Graph()
    G.add_nodes_from(M.nonempty())
    for s in range(1, M.cols + 1):
        column = [(s, t) for t in range(1, M.rows + 1) if not M[s, t].is_empty]
        G.add_edges_from(zip(column, column[1:]), kind="col")
    for t in range(1, M.rows + 1):
        row = [(s, t) for s in range(1, M.cols + 1) if not M[s, t].is_empty]
        G.add_edges_from(zip(row, row[1:]), kind="row")
    return G


def components(M: GriddingMatrix) -> list[GriddingMatrix]:
    """One matrix per connected component of the graph, keeping M's dimensions."""
    G = matrix_graph(M)
    parts = sorted(sorted(c) for c in nx.connected_components(G))
    return [from_cells(M.cols, M.rows, {c: M[c] for c in part}) for part in parts]


def is_forest(M: GriddingMatrix) -> bool:
    return nx.is_forest(matrix_graph(M)) if M.nonempty() else True


def is_path(M: GriddingMatrix) -> bool:
    G = matrix_graph(M)
    if G.number_of_nodes() == 0 or not nx.is_connected(G) or not nx.is_tree(G):
        return False
    return max(d for _, d in G.degree()) <= 2


def path_order(M: GriddingMatrix) -> list[Cell]:
    """Cells of a path-shaped graph from one end to the other (least end first)."""
    G = matrix_graph(M)
    if not is_path(M):
        raise ValueError("the matrix graph is not a path")
    if G.number_of_nodes() == 1:
        return list(G.nodes)
    start = min(c for c, d in G.degree() if d == 1)
    order = [start]
    prev = None
    while True:
        nxt = [c for c in G[order[-1]] if c != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


# ---------------------------------------------------------------- JSON


def matrix_to_json(M: GriddingMatrix) -> dict[str, Any]:
    return {
        "cols": M.cols,
        "rows": M.rows,
        "cells": [
            {"col": s, "row": t, "class": class_to_json(M[s, t])} for s, t in M.nonempty()
        ],
    }


def matrix_from_json(obj: dict[str, Any]) -> GriddingMatrix:
    try:
        cols, rows = int(obj["cols"]), int(obj["rows"])
        cells = {}
        for entry in obj.get("cells", []):
            cell = (int(entry["col"]), int(entry["row"]))
            if cell in cells:
                raise ValueError(f"cell {cell} given twice")
            cells[cell] = class_from_json(entry["class"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from None
    return from_cells(cols, rows, cells)


def gridding_to_json(g: Gridding) -> dict[str, list[int]]:
    return {"x": list(g.x), "y": list(g.y)}


def gridding_from_json(obj: dict[str, Any]) -> Gridding:
    return Gridding(tuple(int(v) for v in obj["x"]), tuple(int(v) for v in obj["y"]))


def gridded_to_json(gp: GriddedPermutation) -> dict[str, Any]:
    return {"perm": list(gp.perm), "dims": list(gp.dims), **gridding_to_json(gp.gridding)}


def gridded_from_json(obj: dict[str, Any]) -> GriddedPermutation:
    try:
        g = gridding_from_json(obj)
        p = perm(obj["perm"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed gridded permutation JSON: {exc}") from None
    return GriddedPermutation(p, g, (len(g.x) + 1, len(g.y) + 1))
