"""Grid pin sequences and the antichains A^k built from them.

Points live in a gridded plane whose vertical lines sit at x = 1..m-1 and
horizontal lines at y = 1..n-1, so column s is the open strip s-1 < x < s.
All coordinates are exact fractions.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .classes import CapExceeded
from .family import mk_matrix
from .gridding import (
    Cell,
    Gridding,
    GriddedPermutation,
    GriddingMatrix,
    gridding_count,
    path_order,
)
from .gridmaps import MAX_MAPPINGS, GridMapping, apply, enumerate_mappings, mapping_count
from .perm import Perm, contains, standardize

__all__ = [
    "PinPoint",
    "PinSequence",
    "PinVerdict",
    "mk_matrix",
    "walk_schedule",
    "generate_pin_sequence",
    "validate_pin_sequence",
    "pins_to_gridded",
    "antichain_element",
    "antichain_pin_count",
    "inflated_pin_permutation",
    "min_antichain_length",
    "verify_strongly_unique",
    "verify_antichain",
]

LEFT, RIGHT, UP, DOWN = "left", "right", "up", "down"
HORIZONTAL = frozenset({LEFT, RIGHT})
VERTICAL = frozenset({UP, DOWN})

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PinPoint:
    x: Fraction
    y: Fraction
    cell: Cell
    direction: frozenset[str]

    @property
    def xy(self) -> Point:
        return self.x, self.y


@dataclass(frozen=True)
class PinSequence:
    dims: tuple[int, int]
    origin: Point
    pins: tuple[PinPoint, ...]

    def __len__(self) -> int:
        return len(self.pins)

    def __post_init__(self):
        m, n = self.dims
        xs = [p.x for p in self.pins]
        ys = [p.y for p in self.pins]
        if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
            raise ValueError("two pins share a coordinate")
        for p in self.pins:
            if p.x.denominator == 1 or p.y.denominator == 1:
                raise ValueError(f"pin {p.xy} lies on a grid line")
            if not (0 < p.x < m and 0 < p.y < n):
                raise ValueError(f"pin {p.xy} lies outside the {m}x{n} grid")
            if cell_at(p.x, p.y) != p.cell:
                raise ValueError(f"pin {p.xy} is not in its recorded cell {p.cell}")

    def points(self) -> list[Point]:
        return [p.xy for p in self.pins]

    def permutation(self) -> Perm:
        return pins_to_gridded(self).perm


def cell_at(x: Fraction, y: Fraction) -> Cell:
    return int(x) + 1, int(y) + 1


# ---------------------------------------------------------------- validation
#
# Written straight from the four conditions; it knows nothing about walks.


@dataclass(frozen=True)
class PinVerdict:
    ok: bool
    index: Optional[int] = None  # 1-based index of the first offending pin
    condition: Optional[str] = None
    detail: str = ""


def _between(a, lo, hi) -> bool:
    return min(lo, hi) < a < max(lo, hi)


def _in_rect(p: Point, a: Point, b: Point) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(
        a[1], b[1]
    )


def _direction(p: Point, a: Point, b: Point) -> str:
    """Side of rect(a, b) on which p lies; p must separate a from b."""
    if _between(p[0], a[0], b[0]):
        return UP if p[1] > max(a[1], b[1]) else DOWN
    return RIGHT if p[0] > max(a[0], b[0]) else LEFT


def _conditions(pts: Sequence[Point], j: int, q: Point) -> dict[str, bool]:
    """Whether q could follow pts[0..j] as a pin (pts[0] is the origin)."""
    a, b = pts[j - 1], pts[j]
    sep = _between(q[0], a[0], b[0]) or _between(q[1], a[1], b[1])
    ext = not any(_in_rect(q, pts[t - 1], pts[t]) for t in range(1, j + 1))
    agree = False
    if sep and ext:
        col_q, row_q = cell_at(*q)
        col_b, row_b = cell_at(*b)
        d = _direction(q, a, b)
        agree = col_q == col_b if d in VERTICAL else row_q == row_b
    return {"local separation": sep, "local externality": ext, "row-column agreement": agree}


def validate_pin_sequence(ps: PinSequence, include_first_pair: bool = True) -> PinVerdict:
    """Check every pin after the first against the four pin conditions.

    Non-interaction ranges over the earlier pairs (p_{j-1}, p_j).  By default
    the pair (p_0, p_1) is among them; without it a pin may continue straight
    on from rect(p_0, p_1), e.g. two consecutive right pins.
    """
    pts: list[Point] = [ps.origin, *ps.points()]
    if len(pts) >= 2:
        p1 = pts[1]
        ox, oy = ps.origin
        m, n = ps.dims
        if ox.denominator != 1 or oy.denominator != 1 or not (0 <= ox <= m and 0 <= oy <= n):
            return PinVerdict(False, 0, "origin", "origin is not a grid line intersection")
        if abs(p1[0] - ox) >= 1 or abs(p1[1] - oy) >= 1:
            return PinVerdict(False, 1, "origin", "p1 is not in a cell adjacent to the origin")
    lo = 1 if include_first_pair else 2
    for i in range(1, len(pts) - 1):
        q = pts[i + 1]
        for name, held in _conditions(pts, i, q).items():
            if not held:
                return PinVerdict(False, i + 1, name, f"p{i + 1} fails {name} against p{i - 1}, p{i}")
        for j in range(lo, i):
            if all(_conditions(pts, j, q).values()):
                return PinVerdict(
                    False,
                    i + 1,
                    "non-interaction",
                    f"p{i + 1} would already have been a pin after p{j}",
                )
    return PinVerdict(True)


# ---------------------------------------------------------------- generation


def walk_schedule(k: int, num_pins: int) -> list[Cell]:
    """Cells of p_1..p_num_pins for the canonical walk on M^k.

    Out along the path from C to D, a second pin in D, back to C, a second
    pin in C, and round again: period 2k + 2.
    """
    M, c_cell, _ = mk_matrix(k)
    u = path_order(M)
    if u[0] != c_cell:
        u = u[::-1]
    period = u + u[::-1]
    return [period[t % len(period)] for t in range(num_pins)]


def antichain_pin_count(k: int, i: int) -> int:
    """Pins in alpha_i: a full walk out to D and back takes 2(k+1) pins."""
    return (2 * i - 1) * (k + 1)


Placement = Callable[[int, tuple[Fraction, Fraction], tuple[Fraction, Fraction]], Point]


def _midpoint(index, xr, yr) -> Point:
    return (xr[0] + xr[1]) / 2, (yr[0] + yr[1]) / 2


def generate_pin_sequence(
    k: int,
    num_pins: int,
    placement: Optional[Placement] = None,
) -> PinSequence:
    """The canonical grid pin sequence on M^k, truncated to ``num_pins``.

    Each pin goes into the scheduled cell.  Inside that cell the existing
    coordinates cut the plane into elementary boxes; exactly one box admits
    a valid pin and the pin is put at its centre.  ``placement`` can pick a
    different point of the box (used to test that the choice is immaterial).

    The pin conditions only compare coordinates, so the box search runs on
    ranks: existing coordinates and grid lines get even ranks and the gaps
    between them odd ones.
    """
    if k < 1 or num_pins < 1:
        raise ValueError("need k >= 1 and at least one pin")
    place = placement or _midpoint
    M, c_cell, _ = mk_matrix(k)
    m, n = M.dims
    cells = walk_schedule(k, num_pins)
    s, t = c_cell
    origin: Point = (Fraction(s), Fraction(t))
    first = _placed(place, 1, (Fraction(s - 1), Fraction(s)), (Fraction(t - 1), Fraction(t)))
    pts: list[Point] = [origin, first]
    dirs: list[frozenset[str]] = [frozenset({LEFT, DOWN})]
    for idx in range(2, num_pins + 1):
        col, row = cells[idx - 1]
        xs = sorted({*map(Fraction, range(m + 1)), *(p[0] for p in pts)})
        ys = sorted({*map(Fraction, range(n + 1)), *(p[1] for p in pts)})
        xrank = {v: 2 * r for r, v in enumerate(xs)}
        yrank = {v: 2 * r for r, v in enumerate(ys)}
        ranked = [(xrank[x], yrank[y]) for x, y in pts]
        homes = [None, *(cell_at(*p) for p in pts[1:])]
        rects = [_bounds(u, v) for u, v in zip(ranked, ranked[1:])]
        x0, x1, y0, y1 = rects[-1]
        xgaps = range(xrank[Fraction(col - 1)] + 1, xrank[Fraction(col)], 2)
        ygaps = range(yrank[Fraction(row - 1)] + 1, yrank[Fraction(row)], 2)
        # a new pin separates the last two, so only two strips are candidates
        candidates = sorted(
            {(gx, gy) for gx in xgaps for gy in ygaps if x0 < gx < x1 or y0 < gy < y1}
        )
        boxes = [q for q in candidates if _admissible(rects, homes, (col, row), q)]
        if len(boxes) != 1:
            raise RuntimeError(f"pin {idx}: {len(boxes)} admissible boxes in cell {(col, row)}")
        gx, gy = boxes[0]
        q = _placed(place, idx, (xs[gx // 2], xs[gx // 2 + 1]), (ys[gy // 2], ys[gy // 2 + 1]))
        if x0 < gx < x1:
            d = UP if gy > y1 else DOWN
        else:
            d = RIGHT if gx > x1 else LEFT
        pts.append(q)
        dirs.append(frozenset({d}))
    pins = tuple(PinPoint(x, y, cell_at(x, y), d) for (x, y), d in zip(pts[1:], dirs))
    return PinSequence(M.dims, origin, pins)


def _placed(place: Placement, idx: int, xr, yr) -> Point:
    q = place(idx, xr, yr)
    if not (xr[0] < q[0] < xr[1] and yr[0] < q[1] < yr[1]):
        raise ValueError(f"placement of pin {idx} left its box")
    return Fraction(q[0]), Fraction(q[1])


def _bounds(a, b) -> tuple[int, int, int, int]:
    return min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1])


def _admissible(rects, homes, cell: Cell, q: tuple[int, int]) -> bool:
    """Generator-side test of the pin conditions for a candidate q.

    ``rects[j-1]`` bounds the pair (p_{j-1}, p_j) and ``homes[j]`` is the
    cell of p_j, all in rank coordinates.
    """
    x, y = q

    def separates_and_agrees(j: int) -> bool:
        x0, x1, y0, y1 = rects[j - 1]
        if x0 < x < x1:
            return cell[0] == homes[j][0]
        if y0 < y < y1:
            return cell[1] == homes[j][1]
        return False

    i = len(rects)
    if not separates_and_agrees(i):
        return False
    if any(r[0] < x < r[1] and r[2] < y < r[3] for r in rects):
        return False
    # q is outside every rectangle, so an earlier pair fails to exclude it
    # exactly when q separates that pair within the right row or column
    return not any(separates_and_agrees(j) for j in range(1, i))


# ---------------------------------------------------------------- inflation


def pins_to_gridded(
    ps: PinSequence, inflations: Optional[dict[int, Perm]] = None
) -> GriddedPermutation:
    """Read off the (inflated) permutation together with its gridding.

    ``inflations`` maps a 1-based pin index to the permutation replacing it.
    Replacement points sit in a vanishing box around the pin, which is what
    sorting on (coordinate, rank inside the block) expresses.
    """
    inflations = inflations or {}
    xkeys, ykeys = [], []
    for idx, p in enumerate(ps.pins, 1):
        block = inflations.get(idx, (1,))
        if not block:
            raise ValueError(f"empty inflation for pin {idx}")
        for pos, val in enumerate(block):
            xkeys.append((p.x, pos))
            ykeys.append((p.y, val))
    order = sorted(range(len(xkeys)), key=xkeys.__getitem__)
    values = standardize(ykeys)
    perm_ = tuple(values[j] for j in order)
    m, n = ps.dims
    x = tuple(sum(1 for kx in xkeys if kx[0] < c) for c in range(1, m))
    y = tuple(sum(1 for ky in ykeys if ky[0] < c) for c in range(1, n))
    return GriddedPermutation(perm_, Gridding(x, y), ps.dims)


def inflated_pin_permutation(k: int, count: int) -> GriddedPermutation:
    """The first ``count`` pins of the walk on M^k with p_1 inflated by 21 and
    the last pin by 12 (k odd) or 21 (k even)."""
    if count < 2:
        raise ValueError("need at least two pins")
    beta = (2, 1) if k % 2 == 0 else (1, 2)
    ps = generate_pin_sequence(k, count)
    return pins_to_gridded(ps, {1: (2, 1), count: beta})


def antichain_element(k: int, i: int) -> GriddedPermutation:
    """alpha_i of A^k, of length (2i-1)(k+1) + 2.

    The last pin is the (2i-1)-th arrival in the D leaf, so both inflations
    sit in the two leaf cells and the result is M^k-gridded.
    """
    if k < 1 or i < 1:
        raise ValueError("need k >= 1 and i >= 1")
    return inflated_pin_permutation(k, antichain_pin_count(k, i))


def min_antichain_length(k: int) -> int:
    """Length from which every member of A^k is strongly uniquely griddable."""
    if k < 1:
        raise ValueError("k >= 1")
    return 2 * (k + 1) ** 2 + 3


# ---------------------------------------------------------------- verification


def _max_workers() -> int:
    try:
        return max(1, int(os.environ.get("GRIDKIT_MAX_WORKERS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class UniquenessVerdict:
    ok: bool
    mappings: int
    distinct_images: int
    counterexample: Optional[GridMapping] = None
    griddings: int = 1


def _count_image(args) -> int:
    p, N = args
    return gridding_count(p, N)


def verify_strongly_unique(
    gp: GriddedPermutation,
    M: GriddingMatrix,
    max_mappings: int = MAX_MAPPINGS,
    workers: Optional[int] = None,
) -> UniquenessVerdict:
    """Check that every grid-mapping image of gp is uniquely griddable by the image of M."""
    if mapping_count(*M.dims) > max_mappings:
        raise CapExceeded(f"{mapping_count(*M.dims)} mappings exceeds the cap of {max_mappings}")
    images: dict[tuple[GriddingMatrix, Perm], GridMapping] = {}
    total = 0
    for f in enumerate_mappings(*M.dims, cap=max_mappings):
        total += 1
        images.setdefault((apply(f, M), apply(f, gp).perm), f)
    jobs = [(p, N) for N, p in images]
    workers = workers or _max_workers()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            counts = list(pool.map(_count_image, jobs))
    else:
        counts = [_count_image(j) for j in jobs]
    for (key, f), c in zip(images.items(), counts):
        if c != 1:
            return UniquenessVerdict(False, total, len(images), f, c)
    return UniquenessVerdict(True, total, len(images))


@dataclass(frozen=True)
class AntichainVerdict:
    ok: bool
    comparable: Optional[tuple[Perm, Perm]] = None  # (smaller, larger)


def verify_antichain(elements: Sequence[Perm]) -> AntichainVerdict:
    """True iff no element is contained in a different one."""
    elems = list(dict.fromkeys(tuple(e) for e in elements))
    for a, b in itertools.permutations(elems, 2):
        if len(a) <= len(b) and contains(a, b):
            return AntichainVerdict(False, (a, b))
    return AntichainVerdict(True)


# ---------------------------------------------------------------- JSON


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _unfrac(s: Any) -> Fraction:
    return Fraction(str(s))


def pins_to_json(ps: PinSequence) -> dict[str, Any]:
    return {
        "dims": list(ps.dims),
        "origin": [_frac(ps.origin[0]), _frac(ps.origin[1])],
        "pins": [
            {"x": _frac(p.x), "y": _frac(p.y), "cell": list(p.cell), "dir": sorted(p.direction)}
            for p in ps.pins
        ],
    }


def pins_from_json(obj: dict[str, Any]) -> PinSequence:
    try:
        pins = []
        for p in obj["pins"]:
            x, y = _unfrac(p["x"]), _unfrac(p["y"])
            pins.append(PinPoint(x, y, cell_at(x, y), frozenset(p.get("dir", []))))
        return PinSequence(
            (int(obj["dims"][0]), int(obj["dims"][1])),
            (_unfrac(obj["origin"][0]), _unfrac(obj["origin"][1])),
            tuple(pins),
        )
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed pin sequence JSON: {exc}") from None
