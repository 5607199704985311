"""Partial well-order verdicts for gridding matrices.

Each connected component of the matrix graph is judged on its own and the
verdicts are combined: one bad component sinks the class, one undecided
component leaves it undecided.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Optional

import networkx as nx

from .classes import (
    AV12,
    AV21,
    CellClass,
    Kind,
    finite_basis,
    is_monotone,
    is_monotone_griddable,
)
from .gridding import Cell, GriddingMatrix, from_cells, matrix_graph


class Status(enum.Enum):
    PWO = "PWO"
    NOT_PWO = "NOT_PWO"
    UNKNOWN = "UNKNOWN"


# Rules, in the order they are tried on a component.
CYCLE = "cycle"  # a cycle in the graph gives an infinite antichain
TWO_NON_MG = "two-not-monotone-griddable"  # as does a pair of cells outside monotone griddability
MONOTONE_FOREST = "monotone-forest"  # monotone cells on a forest are pwo
FINITE_SIMPLES = "finite-simples-forest"  # the iff for monotone + finitely-many-simples entries
UNCOVERED = "uncovered"

READING = (
    "'non-monotone griddable' is read as 'not monotone griddable': a cell counts "
    "against the forest criterion only when it contains all of ⊕21 or all of ⊖12"
)

EXIT_CODES = {Status.PWO: 0, Status.NOT_PWO: 1, Status.UNKNOWN: 2}

# Av(21) and Av(12) given by basis are treated as the monotone kinds.
_MONOTONE_BASES = {frozenset({(2, 1)}): AV21, frozenset({(1, 2)}): AV12}


def normalise(cls: CellClass) -> CellClass:
    if cls.kind is Kind.FINITE_BASIS:
        return _MONOTONE_BASES.get(cls.basis, cls)
    return cls


def _finitely_many_simples(cls: CellClass) -> Optional[bool]:
    if cls.kind in (Kind.SUM21, Kind.SKEW12):
        return True  # their simples are 1, 12 and 21
    if cls.kind is Kind.FINITE_BASIS:
        return cls.finitely_many_simples
    return None


@dataclass(frozen=True)
class ComponentFinding:
    component: int
    cells: tuple[Cell, ...]
    has_cycle: bool
    non_monotone: int
    non_monotone_griddable: int  # cells that are NOT monotone griddable
    status: Status
    rule: str
    blocking: Optional[Cell] = None
    note: str = ""


@dataclass(frozen=True)
class PwoVerdict:
    status: Status
    components: tuple[ComponentFinding, ...] = field(default_factory=tuple)
    reading: str = READING

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def decide_pwo(M: GriddingMatrix) -> PwoVerdict:
    G = matrix_graph(M)
    parts = sorted(sorted(c) for c in nx.connected_components(G))
    findings = tuple(_judge(i, part, M, G.subgraph(part)) for i, part in enumerate(parts, 1))
    statuses = {f.status for f in findings}
    if Status.NOT_PWO in statuses:
        status = Status.NOT_PWO
    elif Status.UNKNOWN in statuses:
        status = Status.UNKNOWN
    else:
        status = Status.PWO  # includes the empty matrix, whose class is finite
    return PwoVerdict(status, findings)


def _judge(idx: int, part: list[Cell], M: GriddingMatrix, H) -> ComponentFinding:
    classes = {c: normalise(M[c]) for c in part}
    cycle = not nx.is_forest(H)
    non_mono = [c for c in part if not is_monotone(classes[c])]
    non_mg = [c for c in part if not is_monotone_griddable(classes[c])]
    base = dict(
        component=idx,
        cells=tuple(part),
        has_cycle=cycle,
        non_monotone=len(non_mono),
        non_monotone_griddable=len(non_mg),
    )
    if cycle:
        return ComponentFinding(**base, status=Status.NOT_PWO, rule=CYCLE)
    if len(non_mg) >= 2:
        return ComponentFinding(
            **base,
            status=Status.NOT_PWO,
            rule=TWO_NON_MG,
            note=f"cells {non_mg[0]} and {non_mg[1]}",
        )
    if not non_mono:
        return ComponentFinding(**base, status=Status.PWO, rule=MONOTONE_FOREST)
    for c in non_mono:
        if is_monotone_griddable(classes[c]):
            return ComponentFinding(
                **base,
                status=Status.UNKNOWN,
                rule=UNCOVERED,
                blocking=c,
                note=f"{classes[c]} at {c} is monotone griddable but not monotone",
            )
        if _finitely_many_simples(classes[c]) is not True:
            return ComponentFinding(
                **base,
                status=Status.UNKNOWN,
                rule=UNCOVERED,
                blocking=c,
                note=f"{classes[c]} at {c} is not known to have finitely many simples",
            )
    # a forest whose only non-monotone cell has finitely many simples
    ok = len(non_mono) <= 1
    return ComponentFinding(
        **base, status=Status.PWO if ok else Status.NOT_PWO, rule=FINITE_SIMPLES
    )


# ---------------------------------------------------------------- examples

# Av(12) stacked on Av(21), and Av(21) stacked on Av(12), as finitely based
# classes (bases found by a minimal non-member search).
STACK_DOWN_UP = finite_basis("213", "231", finitely_many_simples=True)
STACK_UP_DOWN = finite_basis("132", "312", finitely_many_simples=True)


def stacked_example() -> GriddingMatrix:
    """Two monotone griddable cells side by side, outside every criterion."""
    return from_cells(2, 1, {(1, 1): STACK_DOWN_UP, (2, 1): STACK_UP_DOWN})


def verdict_to_json(v: PwoVerdict) -> dict[str, Any]:
    return {
        "status": v.status.value,
        "reading": v.reading,
        "components": [
            {
                "component": f.component,
                "cells": [list(c) for c in f.cells],
                "cycle": f.has_cycle,
                "non_monotone": f.non_monotone,
                "not_monotone_griddable": f.non_monotone_griddable,
                "status": f.status.value,
                "rule": f.rule,
                "blocking": list(f.blocking) if f.blocking else None,
                "note": f.note,
            }
            for f in v.components
        ],
    }
