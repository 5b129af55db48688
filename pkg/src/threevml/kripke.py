"""Finite Kripke models with three- or four-valued valuations.

Model files are JSON documents::

    {"worlds": ["s", "t"],
     "relation": [["s", "t"]],
     "atoms": ["p", "q"],
     "valuation": {"s": {"p": "T", "q": "U"}, "t": {"p": "F", "q": "T"}}}

Three-valued entries are ``"T"``/``"U"``/``"F"``; four-valued entries are
``"T1T2"``/``"T1F2"``/``"F1T2"``/``"F1F2"``.  The valuation must be total.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import ClassVar, Generic, Iterable, Mapping, TypeVar, Union

from .syntax import ATOM_RE
from .truthval import U, TruthValue3, TruthValue4, compress, lifts

__all__ = [
    "KripkeModel3",
    "KripkeModel4",
    "ModelClass",
    "ModelError",
    "ClassIIViolation",
    "ReflexivityViolation",
    "TransitivityViolation",
    "validate_class_II",
    "validate_s4",
    "violations",
    "in_class",
    "lift_model",
    "compress_model",
    "lift_choices",
    "load_model",
    "save_model",
    "model_to_dict",
    "model_from_dict",
]

V = TypeVar("V", TruthValue3, TruthValue4)


class ModelError(ValueError):
    """A malformed model or model document."""


class ModelClass(enum.Enum):
    ALL = "all"
    CLASS_II = "II"
    S4 = "s4"
    S4_CLASS_II = "s4-II"

    @property
    def needs_class_II(self) -> bool:
        return self in (ModelClass.CLASS_II, ModelClass.S4_CLASS_II)

    @property
    def needs_s4(self) -> bool:
        return self in (ModelClass.S4, ModelClass.S4_CLASS_II)


@dataclass(frozen=True, eq=False)
class _KripkeModel(Generic[V]):
    worlds: tuple[str, ...]
    relation: frozenset[tuple[str, str]]
    atoms: tuple[str, ...]
    valuation: Mapping[str, Mapping[str, V]]
    _succ: dict = field(init=False, repr=False)
    _pred: dict = field(init=False, repr=False)

    _value_type: ClassVar[type] = TruthValue3

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if not worlds:
            raise ModelError("a model needs at least one world")
        seen = set()
        for w in worlds:
            if not isinstance(w, str):
                raise ModelError(f"world id {w!r} is not a string")
            if w in seen:
                raise ModelError(f"duplicate world id {w!r}")
            seen.add(w)
        atoms = tuple(self.atoms)
        if len(set(atoms)) != len(atoms):
            raise ModelError("duplicate atom name")
        for a in atoms:
            if not isinstance(a, str) or not ATOM_RE.fullmatch(a):
                raise ModelError(f"invalid atom name {a!r}")
        relation = frozenset((s, t) for s, t in self.relation)
        for s, t in relation:
            for w in (s, t):
                if w not in seen:
                    raise ModelError(f"relation pair ({s!r}, {t!r}) references unknown world {w!r}")
        valuation = {}
        for w in worlds:
            row = self.valuation.get(w, {})
            frozen_row = {}
            for a in atoms:
                if a not in row:
                    raise ModelError(f"valuation missing entry ({w!r}, {a!r})")
                v = row[a]
                if not isinstance(v, self._value_type):
                    raise ModelError(f"entry ({w!r}, {a!r}) = {v!r} is not a {self._value_type.__name__}")
                frozen_row[a] = v
            valuation[w] = frozen_row
        extra_worlds = set(self.valuation) - seen
        if extra_worlds:
            raise ModelError(f"valuation mentions unknown world {sorted(extra_worlds)[0]!r}")
        set_ = object.__setattr__
        set_(self, "worlds", worlds)
        set_(self, "atoms", atoms)
        set_(self, "relation", relation)
        set_(self, "valuation", valuation)
        succ = {w: [] for w in worlds}
        pred = {w: [] for w in worlds}
        # successor lists follow world declaration order, keeping output deterministic
        for s in worlds:
            for t in worlds:
                if (s, t) in relation:
                    succ[s].append(t)
                    pred[t].append(s)
        set_(self, "_succ", {w: tuple(ts) for w, ts in succ.items()})
        set_(self, "_pred", {w: tuple(ss) for w, ss in pred.items()})

    def successors(self, s: str) -> tuple[str, ...]:
        return self._succ[s]

    def predecessors(self, s: str) -> tuple[str, ...]:
        return self._pred[s]

    def value(self, s: str, atom: str) -> V:
        return self.valuation[s][atom]

    def sorted_relation(self) -> list[tuple[str, str]]:
        return [(s, t) for s in self.worlds for t in self._succ[s]]

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return (
            self.worlds == other.worlds
            and self.relation == other.relation
            and self.atoms == other.atoms
            and self.valuation == other.valuation
        )

    def __hash__(self):
        return hash((self.worlds, self.relation, self.atoms))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({save_model(self, indent=None)})"


class KripkeModel3(_KripkeModel[TruthValue3]):
    _value_type = TruthValue3


class KripkeModel4(_KripkeModel[TruthValue4]):
    _value_type = TruthValue4


AnyModel = Union[KripkeModel3, KripkeModel4]


# --------------------------------------------------------------------------
# frame and class conditions


@dataclass(frozen=True)
class ClassIIViolation:
    """``world`` has ``atom`` = U but its predecessor does not."""

    world: str
    atom: str
    predecessor: str

    def __str__(self) -> str:
        return (
            f"class II: V({self.world},{self.atom})=U but predecessor "
            f"{self.predecessor} has V({self.predecessor},{self.atom})!=U"
        )


@dataclass(frozen=True)
class ReflexivityViolation:
    world: str

    def __str__(self) -> str:
        return f"S4: missing reflexive pair ({self.world},{self.world})"


@dataclass(frozen=True)
class TransitivityViolation:
    first: str
    middle: str
    last: str

    def __str__(self) -> str:
        return (
            f"S4: ({self.first},{self.middle}) and ({self.middle},{self.last}) "
            f"present but ({self.first},{self.last}) missing"
        )


def _is_u(v) -> bool:
    if isinstance(v, TruthValue4):
        return not v.second
    return v is U


def validate_class_II(m: AnyModel) -> list[ClassIIViolation]:
    """Violations of: V(s,p)=U implies V(t,p)=U for every t with t R s.

    Four-valued models are judged through their compression.
    """
    out = []
    for s in m.worlds:
        for p in m.atoms:
            if not _is_u(m.value(s, p)):
                continue
            for t in m.predecessors(s):
                if not _is_u(m.value(t, p)):
                    out.append(ClassIIViolation(s, p, t))
    return out


def validate_s4(m: AnyModel) -> list[Union[ReflexivityViolation, TransitivityViolation]]:
    out: list = [ReflexivityViolation(w) for w in m.worlds if (w, w) not in m.relation]
    for a in m.worlds:
        for b in m.successors(a):
            for c in m.successors(b):
                if (a, c) not in m.relation:
                    out.append(TransitivityViolation(a, b, c))
    return out


def violations(m: AnyModel, cls: ModelClass) -> list:
    """All violations of the conditions ``cls`` imposes (checked independently)."""
    out: list = []
    if cls.needs_s4:
        out.extend(validate_s4(m))
    if cls.needs_class_II:
        out.extend(validate_class_II(m))
    return out


def in_class(m: AnyModel, cls: ModelClass) -> bool:
    if cls.needs_s4 and validate_s4(m):
        return False
    if cls.needs_class_II and validate_class_II(m):
        return False
    return True


# --------------------------------------------------------------------------
# lifting


def lift_model(m: KripkeModel3, choice: Mapping[tuple[str, str], TruthValue4]) -> KripkeModel4:
    """Replace each entry of ``m`` by the four-valued value ``choice`` picks for it."""
    valuation = {}
    for w in m.worlds:
        row = {}
        for a in m.atoms:
            try:
                v4 = choice[w, a]
            except KeyError:
                raise ValueError(f"lift choice missing entry ({w}, {a})") from None
            v3 = m.value(w, a)
            if v4 not in lifts(v3):
                raise ValueError(
                    f"lift choice for ({w}, {a}) is {v4.name}, which does not compress to {v3}"
                )
            row[a] = v4
        valuation[w] = row
    return KripkeModel4(m.worlds, m.relation, m.atoms, valuation)


def compress_model(m: KripkeModel4) -> KripkeModel3:
    valuation = {w: {a: compress(m.value(w, a)) for a in m.atoms} for w in m.worlds}
    return KripkeModel3(m.worlds, m.relation, m.atoms, valuation)


def lift_choices(m: KripkeModel3) -> Iterable[dict[tuple[str, str], TruthValue4]]:
    """Every pointwise lift choice for ``m`` (2 ** number-of-U-entries of them)."""
    import itertools

    keys = [(w, a) for w in m.worlds for a in m.atoms]
    options = [sorted(lifts(m.value(w, a)), key=lambda v: v.name) for w, a in keys]
    for combo in itertools.product(*options):
        yield dict(zip(keys, combo))


# --------------------------------------------------------------------------
# serialization


def model_to_dict(m: AnyModel) -> dict:
    def enc(v):
        return v.name if isinstance(v, TruthValue4) else v.value

    return {
        "worlds": list(m.worlds),
        "relation": [[s, t] for s, t in m.sorted_relation()],
        "atoms": list(m.atoms),
        "valuation": {w: {a: enc(m.value(w, a)) for a in m.atoms} for w in m.worlds},
    }


def model_from_dict(doc: Mapping) -> AnyModel:
    if not isinstance(doc, Mapping):
        raise ModelError("model document must be an object")
    for key in ("worlds", "relation", "atoms", "valuation"):
        if key not in doc:
            raise ModelError(f"model document missing key {key!r}")
    worlds = doc["worlds"]
    if not isinstance(worlds, list):
        raise ModelError("'worlds' must be a list")
    relation = []
    for i, pair in enumerate(doc["relation"]):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ModelError(f"relation[{i}] must be a pair of world ids")
        for w in pair:
            if w not in worlds:
                raise ModelError(f"relation[{i}] references unknown world {w!r}")
        relation.append(tuple(pair))
    raw = doc["valuation"]
    if not isinstance(raw, Mapping):
        raise ModelError("'valuation' must be an object")
    four = None
    valuation: dict = {}
    for w, row in raw.items():
        if not isinstance(row, Mapping):
            raise ModelError(f"valuation[{w!r}] must be an object")
        valuation[w] = {}
        for a, text in row.items():
            if text in ("T", "U", "F"):
                v, is_four = TruthValue3(text), False
            else:
                try:
                    v, is_four = TruthValue4.from_name(text), True
                except ValueError:
                    raise ModelError(f"valuation ({w!r}, {a!r}): unknown truth value {text!r}") from None
            if four is None:
                four = is_four
            elif four != is_four:
                raise ModelError(f"valuation ({w!r}, {a!r}): mixes three- and four-valued entries")
            valuation[w][a] = v
    cls = KripkeModel4 if four else KripkeModel3
    return cls(tuple(worlds), frozenset(relation), tuple(doc["atoms"]), valuation)


def load_model(text: str) -> AnyModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelError(f"not valid JSON: {e}") from None
    return model_from_dict(doc)


def save_model(m: AnyModel, indent: int | None = 2) -> str:
    return json.dumps(model_to_dict(m), indent=indent, ensure_ascii=False)
