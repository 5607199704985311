"""Cell classes: the permutation classes that label entries of a gridding matrix."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Optional

from .perm import (
    Perm,
    avoids,
    complement,
    contains,
    fmt,
    inverse,
    perm,
    reverse,
)

MEMBER_CAP = 10


class CapExceeded(ValueError):
    """A desk-scale enumeration limit was hit."""


class Kind(enum.Enum):
    EMPTY = "empty"
    INCREASING = "av21"
    DECREASING = "av12"
    SUM21 = "sum21"
    SKEW12 = "skew12"
    FINITE_BASIS = "basis"


@dataclass(frozen=True)
class CellClass:
    kind: Kind
    basis: frozenset[Perm] = frozenset()
    # user-declared; only meaningful for FINITE_BASIS
    finitely_many_simples: Optional[bool] = None

    def __post_init__(self):
        if self.kind is Kind.FINITE_BASIS:
            if not self.basis:
                raise ValueError("a finite-basis class needs a nonempty basis")
            for b in self.basis:
                if len(b) <= 1:
                    raise ValueError(f"basis element {fmt(b)} would make the class finite")
            for a in self.basis:
                for b in self.basis:
                    if a != b and contains(a, b):
                        raise ValueError(f"basis is not an antichain: {fmt(a)} <= {fmt(b)}")
        elif self.basis or self.finitely_many_simples is not None:
            raise ValueError(f"{self.kind.value} takes no basis or metadata")

    def __str__(self) -> str:
        if self.kind is Kind.FINITE_BASIS:
            return "Av(" + ",".join(fmt(b) for b in sorted(self.basis)) + ")"
        return _NAMES[self.kind]

    @property
    def is_empty(self) -> bool:
        return self.kind is Kind.EMPTY


_NAMES = {
    Kind.EMPTY: "∅",
    Kind.INCREASING: "Av(21)",
    Kind.DECREASING: "Av(12)",
    Kind.SUM21: "⊕21",
    Kind.SKEW12: "⊖12",
}

EMPTY = CellClass(Kind.EMPTY)
AV21 = CellClass(Kind.INCREASING)
AV12 = CellClass(Kind.DECREASING)
SUM21 = CellClass(Kind.SUM21)
SKEW12 = CellClass(Kind.SKEW12)


def finite_basis(*basis: Perm | str, finitely_many_simples: Optional[bool] = None) -> CellClass:
    return CellClass(
        Kind.FINITE_BASIS,
        frozenset(perm(b) if isinstance(b, str) else tuple(b) for b in basis),
        finitely_many_simples,
    )


# ---------------------------------------------------------------- membership


def in_sum21(p: Perm) -> bool:
    """Direct sum of copies of 1 and 21."""
    i, n = 0, len(p)
    while i < n:
        if p[i] == i + 1:
            i += 1
        elif i + 1 < n and p[i] == i + 2 and p[i + 1] == i + 1:
            i += 2
        else:
            return False
    return True


def in_skew12(p: Perm) -> bool:
    """Skew sum of copies of 1 and 12."""
    return in_sum21(complement(p))


def is_increasing(p: Perm) -> bool:
    return all(a < b for a, b in zip(p, p[1:]))


def is_decreasing(p: Perm) -> bool:
    return all(a > b for a, b in zip(p, p[1:]))


def member(cls: CellClass, p: Perm) -> bool:
    """Whether ``p`` lies in ``cls``.  The empty permutation lies in every class."""
    if not p:
        return True
    kind = cls.kind
    if kind is Kind.EMPTY:
        return False
    if kind is Kind.INCREASING:
        return is_increasing(p)
    if kind is Kind.DECREASING:
        return is_decreasing(p)
    if kind is Kind.SUM21:
        return in_sum21(p)
    if kind is Kind.SKEW12:
        return in_skew12(p)
    return all(avoids(p, b) for b in cls.basis)


# ---------------------------------------------------------------- symmetries

_REVERSE = {
    Kind.EMPTY: Kind.EMPTY,
    Kind.INCREASING: Kind.DECREASING,
    Kind.DECREASING: Kind.INCREASING,
    Kind.SUM21: Kind.SKEW12,
    Kind.SKEW12: Kind.SUM21,
}
# inverse fixes every named kind: 21 and 12 are involutions
_INVERSE = {k: k for k in _REVERSE}


def _map_class(cls: CellClass, table, op) -> CellClass:
    if cls.kind is Kind.FINITE_BASIS:
        return CellClass(
            Kind.FINITE_BASIS, frozenset(op(b) for b in cls.basis), cls.finitely_many_simples
        )
    return CellClass(table[cls.kind])


def class_reverse(cls: CellClass) -> CellClass:
    return _map_class(cls, _REVERSE, reverse)


def class_complement(cls: CellClass) -> CellClass:
    # on the named kinds complement acts exactly like reverse
    return _map_class(cls, _REVERSE, complement)


def class_inverse(cls: CellClass) -> CellClass:
    return _map_class(cls, _INVERSE, inverse)


# ---------------------------------------------------------------- griddability


def is_monotone(cls: CellClass) -> bool:
    """True only for the two named monotone kinds, Av(21) and Av(12)."""
    return cls.kind in (Kind.INCREASING, Kind.DECREASING)


def is_monotone_griddable(cls: CellClass) -> bool:
    """Whether the class contains neither ⊕21 nor ⊖12.

    Av(B) contains the whole class ⊕21 exactly when no basis element lies in
    ⊕21, so a finite basis needs one element in each of ⊕21 and ⊖12.
    """
    kind = cls.kind
    if kind in (Kind.EMPTY, Kind.INCREASING, Kind.DECREASING):
        return True
    if kind in (Kind.SUM21, Kind.SKEW12):
        return False
    return any(in_sum21(b) for b in cls.basis) and any(in_skew12(b) for b in cls.basis)


def generate_members(cls: CellClass, n: int, cap: int = MEMBER_CAP) -> list[Perm]:
    """All members of length exactly ``n`` in lexicographic order."""
    if n > cap:
        raise CapExceeded(f"member generation capped at length {cap}, asked for {n}")
    return list(_members(cls, n))


@lru_cache(maxsize=None)
def _members(cls: CellClass, n: int) -> tuple[Perm, ...]:
    # Classes are closed downwards: deleting the maximum of a member leaves a
    # member, so every member arises by inserting n into a shorter one.
    if n == 0:
        return ((),)
    found = set()
    for q in _members(cls, n - 1):
        for i in range(n):
            p = q[:i] + (n,) + q[i:]
            if member(cls, p):
                found.add(p)
    return tuple(sorted(found))


# ---------------------------------------------------------------- JSON


def class_to_json(cls: CellClass) -> Any:
    if cls.kind is Kind.FINITE_BASIS:
        out: dict[str, Any] = {"basis": [list(b) for b in sorted(cls.basis)]}
        if cls.finitely_many_simples is not None:
            out["finitely_many_simples"] = cls.finitely_many_simples
        return out
    return cls.kind.value


def class_from_json(obj: Any) -> CellClass:
    if isinstance(obj, str):
        try:
            kind = Kind(obj)
        except ValueError:
            raise ValueError(f"unknown cell class {obj!r}") from None
        if kind is Kind.FINITE_BASIS:
            raise ValueError('finite-basis classes are written as {"basis": [...]}')
        return CellClass(kind)
    if isinstance(obj, dict) and "basis" in obj:
        fms = obj.get("finitely_many_simples")
        if fms is not None and not isinstance(fms, bool):
            raise ValueError("finitely_many_simples must be a boolean")
        return CellClass(
            Kind.FINITE_BASIS, frozenset(perm(b) for b in obj["basis"]), fms
        )
    raise ValueError(f"cannot parse cell class from {obj!r}")
