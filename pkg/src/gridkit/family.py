"""The path-shaped matrices M^k with a ⊕21 leaf at one end."""

from __future__ import annotations

from functools import lru_cache

from .classes import AV12, AV21, SKEW12, SUM21
from .gridding import Cell, GriddingMatrix, from_cells

C_CLASS = SUM21  # the leaf labelled C
D_PLUS = SUM21
D_MINUS = SKEW12


@lru_cache(maxsize=None)
def mk_matrix(k: int) -> tuple[GriddingMatrix, Cell, Cell]:
    """M^k together with the cells of its C leaf and its D^+/D^- leaf.

    Built by the four recursive cases on k mod 4.  Each step turns the old
    D leaf into a monotone cell and hangs a new D leaf off it, so the graph
    stays a path with k edges.
    """
    if k < 1:
        raise ValueError("M^k is defined for k >= 1")
    if k == 1:
        return from_cells(2, 1, {(1, 1): C_CLASS, (2, 1): D_MINUS}), (1, 1), (2, 1)
    prev, c_cell, _ = mk_matrix(k - 1)
    old = prev.as_dict()
    ell, r = divmod(k - 1, 4)
    if r == 0:  # k = 4l+1: replace row 1, D^- at the far right of it
        m, n = 2 * ell + 2, 2 * ell + 1
        cells = {(i, j): c for (i, j), c in old.items() if i <= 2 * ell + 1 and 2 <= j <= 2 * ell + 1}
        d_cell = (2 * ell + 2, 1)
        cells[d_cell] = D_MINUS
        cells[1, 1] = AV21
    elif r == 1:  # k = 4l+2: new top row, D^+ at the top right
        m, n = 2 * ell + 2, 2 * ell + 2
        cells = {(i, j): c for (i, j), c in old.items() if i <= 2 * ell + 1 and j <= 2 * ell + 1}
        d_cell = (2 * ell + 2, 2 * ell + 2)
        cells[d_cell] = D_PLUS
        cells[2 * ell + 2, 1] = AV12
    elif r == 2:  # k = 4l+3: shift right one column, D^- at the top left
        m, n = 2 * ell + 3, 2 * ell + 2
        cells = {(i + 1, j): c for (i, j), c in old.items() if j <= 2 * ell + 1}
        c_cell = (c_cell[0] + 1, c_cell[1])
        d_cell = (1, 2 * ell + 2)
        cells[d_cell] = D_MINUS
        cells[2 * ell + 3, 2 * ell + 2] = AV21
    else:  # k = 4l+4: shift up one row, D^+ at the bottom left
        m, n = 2 * ell + 3, 2 * ell + 3
        # every column is carried over; the old D^- leaf at (1, 2l+3) is relabelled below
        cells = {(i, j + 1): c for (i, j), c in old.items()}
        c_cell = (c_cell[0], c_cell[1] + 1)
        d_cell = (1, 1)
        cells[d_cell] = D_PLUS
        cells[1, 2 * ell + 3] = AV12
    return from_cells(m, n, cells), c_cell, d_cell
