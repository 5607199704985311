"""Grid mappings: symmetries acting on gridding matrices and gridded permutations.

The five generators are the grid inverse, a column reverse, a row
complement, a permutation of the columns and a permutation of the rows.
Every composite is stored in a normal form that applies, to the source
grid, first the row complements, then the column reverses, then the row
permutation, then the column permutation and finally (optionally) the grid
inverse.  Column and row indices inside a mapping always refer to the
source grid.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Iterator, TypeVar

from .classes import (
    CapExceeded,
    Kind,
    class_complement,
    class_inverse,
    class_reverse,
    is_monotone,
)
from .family import mk_matrix
from .gridding import (
    Cell,
    Gridding,
    GriddedPermutation,
    GriddingMatrix,
    from_cells,
    is_path,
    path_order,
)
from .perm import Perm, inverse, perm

MAX_MAPPINGS = 10**7

Grid = TypeVar("Grid", GriddingMatrix, GriddedPermutation)


# ---------------------------------------------------------------- generators


def grid_inverse(X: Grid) -> Grid:
    """phi: transpose the grid, inverting every cell."""
    if isinstance(X, GriddingMatrix):
        return from_cells(
            X.rows, X.cols, {(t, s): class_inverse(c) for (s, t), c in X.as_dict().items()}
        )
    g = X.gridding
    return GriddedPermutation(inverse(X.perm), Gridding(g.y, g.x), (X.dims[1], X.dims[0]))


def column_reverse(X: Grid, i: int) -> Grid:
    """Reverse everything in column i."""
    _check_index(i, X.dims[0], "column")
    if isinstance(X, GriddingMatrix):
        return X.replace({(s, t): class_reverse(c) for (s, t), c in X.as_dict().items() if s == i})
    a, b = X.col_bounds(i)
    p = X.perm
    return GriddedPermutation(p[:a] + p[a:b][::-1] + p[b:], X.gridding, X.dims)


def row_complement(X: Grid, j: int) -> Grid:
    """Complement everything in row j; values lo+1..hi map to hi..lo+1."""
    _check_index(j, X.dims[1], "row")
    if isinstance(X, GriddingMatrix):
        return X.replace(
            {(s, t): class_complement(c) for (s, t), c in X.as_dict().items() if t == j}
        )
    lo, hi = X.row_bounds(j)
    p = tuple(lo + hi + 1 - v if lo < v <= hi else v for v in X.perm)
    return GriddedPermutation(p, X.gridding, X.dims)


def permute_columns(X: Grid, mu: Perm) -> Grid:
    """New column i is old column mu(i)."""
    m = X.dims[0]
    if sorted(mu) != list(range(1, m + 1)):
        raise ValueError(f"{mu} is not a permutation of the {m} columns")
    if isinstance(X, GriddingMatrix):
        return from_cells(
            X.cols, X.rows, {(i, t): X[mu[i - 1], t] for i in range(1, m + 1) for t in range(1, X.rows + 1)}
        )
    segments = [X.perm[slice(*X.col_bounds(c))] for c in mu]
    p = tuple(v for seg in segments for v in seg)
    x = tuple(itertools.accumulate(len(seg) for seg in segments[:-1]))
    return GriddedPermutation(p, Gridding(x, X.gridding.y), X.dims)


def permute_rows(X: Grid, nu: Perm) -> Grid:
    """New row j is old row nu(j)."""
    n = X.dims[1]
    if sorted(nu) != list(range(1, n + 1)):
        raise ValueError(f"{nu} is not a permutation of the {n} rows")
    if isinstance(X, GriddingMatrix):
        return from_cells(
            X.cols, X.rows, {(s, j): X[s, nu[j - 1]] for s in range(1, X.cols + 1) for j in range(1, n + 1)}
        )
    bounds = [X.row_bounds(r) for r in nu]
    sizes = [hi - lo for lo, hi in bounds]
    starts = [0, *itertools.accumulate(sizes)]
    shift = {}
    for j, (lo, hi) in enumerate(bounds):
        for v in range(lo + 1, hi + 1):
            shift[v] = starts[j] + v - lo
    p = tuple(shift[v] for v in X.perm)
    return GriddedPermutation(p, Gridding(X.gridding.x, tuple(starts[1:-1])), X.dims)


def _check_index(i: int, size: int, what: str) -> None:
    if not 1 <= i <= size:
        raise IndexError(f"{what} {i} outside 1..{size}")


# ---------------------------------------------------------------- normal form


@dataclass(frozen=True)
class GridMapping:
    inverse: bool
    col_perm: Perm
    row_perm: Perm
    rev_cols: frozenset[int] = frozenset()
    comp_rows: frozenset[int] = frozenset()

    def __post_init__(self):
        m, n = self.source_dims
        if sorted(self.col_perm) != list(range(1, m + 1)) or sorted(self.row_perm) != list(
            range(1, n + 1)
        ):
            raise ValueError("col_perm and row_perm must be permutations")
        if not self.rev_cols <= set(range(1, m + 1)) or not self.comp_rows <= set(range(1, n + 1)):
            raise ValueError("reversed columns / complemented rows out of range")

    @property
    def source_dims(self) -> tuple[int, int]:
        return len(self.col_perm), len(self.row_perm)

    @property
    def target_dims(self) -> tuple[int, int]:
        m, n = self.source_dims
        return (n, m) if self.inverse else (m, n)

    def __call__(self, X: Grid) -> Grid:
        return apply(self, X)


def identity(m: int, n: int) -> GridMapping:
    return GridMapping(False, tuple(range(1, m + 1)), tuple(range(1, n + 1)))


def apply(f: GridMapping, X: Grid) -> Grid:
    """Apply the generators of ``f`` in normal-form order."""
    if X.dims != f.source_dims:
        raise ValueError(f"mapping for {f.source_dims} grids applied to a {X.dims} grid")
    for j in sorted(f.comp_rows):
        X = row_complement(X, j)
    for i in sorted(f.rev_cols):
        X = column_reverse(X, i)
    X = permute_rows(X, f.row_perm)
    X = permute_columns(X, f.col_perm)
    if f.inverse:
        X = grid_inverse(X)
    return X


apply_to_matrix = apply
apply_to_gridded = apply


# A mapping moves every source band (a column or a row) onto a target band,
# possibly flipping it.  Composition and inversion are computed on that
# description and converted back to the normal form.

Band = tuple[str, int]


def _landing(f: GridMapping) -> dict[Band, tuple[Band, bool]]:
    col_dest = inverse(f.col_perm)
    row_dest = inverse(f.row_perm)
    col_axis, row_axis = ("row", "col") if f.inverse else ("col", "row")
    out: dict[Band, tuple[Band, bool]] = {}
    for c, d in enumerate(col_dest, 1):
        out["col", c] = ((col_axis, d), c in f.rev_cols)
    for r, d in enumerate(row_dest, 1):
        out["row", r] = ((row_axis, d), r in f.comp_rows)
    return out


def _from_landing(inv: bool, dims: tuple[int, int], land: dict[Band, tuple[Band, bool]]) -> GridMapping:
    m, n = dims
    col_dest = [0] * m
    row_dest = [0] * n
    for (axis, i), ((_, d), _) in land.items():
        (col_dest if axis == "col" else row_dest)[i - 1] = d
    return GridMapping(
        inv,
        inverse(tuple(col_dest)),
        inverse(tuple(row_dest)),
        frozenset(i for (axis, i), (_, fl) in land.items() if axis == "col" and fl),
        frozenset(i for (axis, i), (_, fl) in land.items() if axis == "row" and fl),
    )


def compose(f: GridMapping, g: GridMapping) -> GridMapping:
    """The mapping that applies g first and then f."""
    if g.target_dims != f.source_dims:
        raise ValueError(f"cannot compose: g lands on {g.target_dims}, f expects {f.source_dims}")
    lf, lg = _landing(f), _landing(g)
    land = {}
    for band, (mid, flip_g) in lg.items():
        dest, flip_f = lf[mid]
        land[band] = (dest, flip_g != flip_f)
    return _from_landing(f.inverse != g.inverse, g.source_dims, land)


def invert_mapping(f: GridMapping) -> GridMapping:
    land = {dest: (band, flip) for band, (dest, flip) in _landing(f).items()}
    return _from_landing(f.inverse, f.target_dims, land)


def mapping_count(m: int, n: int) -> int:
    return 2 * math.factorial(m) * math.factorial(n) * 2**m * 2**n


def enumerate_mappings(m: int, n: int, cap: int = MAX_MAPPINGS) -> Iterator[GridMapping]:
    """Every normal-form mapping of m x n grids, each exactly once."""
    total = mapping_count(m, n)
    if total > cap:
        raise CapExceeded(f"{total} grid mappings of {m}x{n} grids exceeds the cap of {cap}")
    col_sets = [frozenset(s) for r in range(m + 1) for s in itertools.combinations(range(1, m + 1), r)]
    row_sets = [frozenset(s) for r in range(n + 1) for s in itertools.combinations(range(1, n + 1), r)]
    for inv, mu, nu, rev, comp in itertools.product(
        (False, True),
        itertools.permutations(range(1, m + 1)),
        itertools.permutations(range(1, n + 1)),
        col_sets,
        row_sets,
    ):
        yield GridMapping(inv, mu, nu, rev, comp)


# ---------------------------------------------------------------- JSON


def mapping_to_json(f: GridMapping) -> dict[str, Any]:
    return {
        "inverse": f.inverse,
        "col_perm": list(f.col_perm),
        "row_perm": list(f.row_perm),
        "rev_cols": sorted(f.rev_cols),
        "comp_rows": sorted(f.comp_rows),
    }


def mapping_from_json(obj: dict[str, Any]) -> GridMapping:
    try:
        return GridMapping(
            bool(obj["inverse"]),
            perm(obj["col_perm"]),
            perm(obj["row_perm"]),
            frozenset(int(i) for i in obj.get("rev_cols", [])),
            frozenset(int(j) for j in obj.get("comp_rows", [])),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed mapping JSON: {exc}") from None


# ---------------------------------------------------------------- canonical paths


@dataclass(frozen=True)
class PathConditions:
    no_empty_lines: bool
    at_most_two_per_line: bool
    graph_is_path: bool
    leaves_labelled: bool
    internal_monotone: bool
    length: int  # edges in the graph; -1 when it is not a path

    @property
    def ok(self) -> bool:
        return not self.failed

    @property
    def failed(self) -> list[str]:
        names = {
            "no_empty_lines": "(1) a row or column is completely empty",
            "at_most_two_per_line": "(2) a row or column has more than two nonempty cells",
            "graph_is_path": "(3) the graph is not a path of length >= 1",
            "leaves_labelled": "(3) a leaf is not labelled ⊕21 or ⊖12",
            "internal_monotone": "(3) an internal cell is not monotone",
        }
        return [msg for name, msg in names.items() if not getattr(self, name)]


def check_path_conditions(M: GriddingMatrix) -> PathConditions:
    filled = M.nonempty()
    col_counts = [sum(1 for s, _ in filled if s == i) for i in range(1, M.cols + 1)]
    row_counts = [sum(1 for _, t in filled if t == j) for j in range(1, M.rows + 1)]
    path = len(filled) >= 2 and is_path(M)
    leaves_ok = internal_ok = False
    length = -1
    if path:
        order = path_order(M)
        length = len(order) - 1
        leaves_ok = all(M[c].kind in (Kind.SUM21, Kind.SKEW12) for c in (order[0], order[-1]))
        internal_ok = all(is_monotone(M[c]) for c in order[1:-1])
    return PathConditions(
        no_empty_lines=min(col_counts + row_counts) >= 1,
        at_most_two_per_line=max(col_counts + row_counts) <= 2,
        graph_is_path=path,
        leaves_labelled=leaves_ok,
        internal_monotone=internal_ok,
        length=length,
    )


_PAIR = {Kind.SUM21: "leaf", Kind.SKEW12: "leaf", Kind.INCREASING: "mono", Kind.DECREASING: "mono"}


def canonicalize(M: GriddingMatrix) -> tuple[int, GridMapping]:
    """Find k and a grid mapping f with f(M^k) == M.

    Stage one decides on the grid inverse, stage two lines the path of M^k
    up with the path of M using row and column permutations, and stage three
    walks the path from the C leaf fixing labels with row complements and
    column reverses.  Of the (at most four) candidates the simplest is
    returned, so M^k itself gets the identity.
    """
    cond = check_path_conditions(M)
    if not cond.ok:
        raise ValueError("matrix fails the path conditions: " + "; ".join(cond.failed))
    k = cond.length
    Mk, c_cell, _ = mk_matrix(k)
    u = _path_from(Mk, c_cell)
    ends = path_order(M)
    found = []
    for inv in (False, True):
        if (M.dims[::-1] if inv else M.dims) != Mk.dims:
            continue
        for v in (ends, ends[::-1]):
            f = _match(Mk, u, M, v, inv)
            if f is not None:
                found.append(f)
    if not found:
        raise ValueError("no grid mapping carries M^k onto the matrix")  # pragma: no cover
    return k, min(found, key=_complexity)


def _complexity(f: GridMapping):
    moved = sum(i != c for i, c in enumerate(f.col_perm, 1)) + sum(
        j != r for j, r in enumerate(f.row_perm, 1)
    )
    return (f.inverse, moved + len(f.rev_cols) + len(f.comp_rows), repr(mapping_to_json(f)))


def _path_from(M: GriddingMatrix, start: Cell) -> list[Cell]:
    order = path_order(M)
    return order if order[0] == start else order[::-1]


def _match(Mk, u: list[Cell], M, v: list[Cell], inv: bool):
    col_dest: dict[int, int] = {}
    row_dest: dict[int, int] = {}
    for (a, b), (c, d) in zip(u, v):
        ca, rb = (d, c) if inv else (c, d)
        if col_dest.setdefault(a, ca) != ca or row_dest.setdefault(b, rb) != rb:
            return None
    m, n = Mk.dims
    if sorted(col_dest.values()) != list(range(1, m + 1)) or sorted(row_dest.values()) != list(
        range(1, n + 1)
    ):
        return None
    # stage three: the C leaf's column stays put, every later band is forced
    col_flip: dict[int, bool] = {u[0][0]: False}
    row_flip: dict[int, bool] = {}
    for (a, b), target in zip(u, v):
        src, dst = Mk[a, b], M[target]
        if _PAIR.get(src.kind) != _PAIR.get(dst.kind):
            return None
        need = src.kind != dst.kind
        if a in col_flip and b not in row_flip:
            row_flip[b] = col_flip[a] != need
        elif b in row_flip and a not in col_flip:
            col_flip[a] = row_flip[b] != need
        elif (col_flip[a] != row_flip[b]) != need:
            return None
    f = GridMapping(
        inv,
        inverse(tuple(col_dest[a] for a in range(1, m + 1))),
        inverse(tuple(row_dest[b] for b in range(1, n + 1))),
        frozenset(a for a, fl in col_flip.items() if fl),
        frozenset(b for b, fl in row_flip.items() if fl),
    )
    return f if apply(f, Mk) == M else None
