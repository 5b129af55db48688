"""Three- and four-valued truth values, their connectives, and compression.

Weak Kleene connectives are stored as explicit lookup tables.  The
four-valued reading assigns every formula two independent bits: the first
behaves classically, the second is False-infectious.  ``compress`` maps a
pair of bits down to a single three-valued truth value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

__all__ = [
    "TruthValue3",
    "TruthValue4",
    "Connective",
    "T",
    "U",
    "F",
    "T1T2",
    "T1F2",
    "F1T2",
    "F1F2",
    "ALL3",
    "ALL4",
    "NEG_TABLE",
    "CONJ_TABLE",
    "DISJ_TABLE",
    "wk_apply",
    "fv_apply",
    "compress",
    "lifts",
]


class TruthValue3(enum.Enum):
    T = "T"
    U = "U"
    F = "F"

    def __str__(self) -> str:
        return self.value


T, U, F = TruthValue3.T, TruthValue3.U, TruthValue3.F
ALL3 = (T, U, F)


@dataclass(frozen=True, slots=True)
class TruthValue4:
    """A pair of independent bits: ``first`` is T1/F1, ``second`` is T2/F2."""

    first: bool
    second: bool

    @property
    def name(self) -> str:
        return ("T1" if self.first else "F1") + ("T2" if self.second else "F2")

    @classmethod
    def from_name(cls, name: str) -> "TruthValue4":
        try:
            return _BY_NAME[name]
        except KeyError:
            raise ValueError(f"unknown four-valued truth value {name!r}") from None

    def __str__(self) -> str:
        return f"({self.name[:2]},{self.name[2:]})"

    def __repr__(self) -> str:
        return f"TruthValue4.{self.name}"


T1T2 = TruthValue4(True, True)
T1F2 = TruthValue4(True, False)
F1T2 = TruthValue4(False, True)
F1F2 = TruthValue4(False, False)
ALL4 = (T1T2, T1F2, F1T2, F1F2)
_BY_NAME = {v.name: v for v in ALL4}


class Connective(enum.Enum):
    NEG = "neg"
    CONJ = "conj"
    DISJ = "disj"

    @property
    def arity(self) -> int:
        return 1 if self is Connective.NEG else 2


NEG_TABLE = {T: F, U: U, F: T}

# rows: left operand, columns: right operand
CONJ_TABLE = {
    (T, T): T, (T, U): U, (T, F): F,
    (U, T): U, (U, U): U, (U, F): U,
    (F, T): F, (F, U): U, (F, F): F,
}  # fmt: skip

DISJ_TABLE = {
    (T, T): T, (T, U): U, (T, F): T,
    (U, T): U, (U, U): U, (U, F): U,
    (F, T): T, (F, U): U, (F, F): F,
}  # fmt: skip


def _check_arity(c: Connective, b) -> None:
    if (b is None) != (c.arity == 1):
        raise TypeError(f"{c.name} takes {c.arity} operand(s)")


def wk_apply(c: Connective, a: TruthValue3, b: Optional[TruthValue3] = None) -> TruthValue3:
    _check_arity(c, b)
    if c is Connective.NEG:
        return NEG_TABLE[a]
    table = CONJ_TABLE if c is Connective.CONJ else DISJ_TABLE
    return table[a, b]


def fv_apply(c: Connective, a: TruthValue4, b: Optional[TruthValue4] = None) -> TruthValue4:
    _check_arity(c, b)
    if c is Connective.NEG:
        return TruthValue4(not a.first, a.second)
    if c is Connective.CONJ:
        first = a.first and b.first
    else:
        first = a.first or b.first
    return TruthValue4(first, a.second and b.second)


_COMPRESS = {T1T2: T, F1T2: F, T1F2: U, F1F2: U}
_LIFTS = {
    T: frozenset({T1T2}),
    F: frozenset({F1T2}),
    U: frozenset({T1F2, F1F2}),
}


def compress(v: TruthValue4) -> TruthValue3:
    return _COMPRESS[v]


def lifts(v: TruthValue3) -> frozenset[TruthValue4]:
    """All four-valued pairs that compress to ``v``."""
    return _LIFTS[v]
