"""Evaluators for the propositional and modal semantics.

``eval_wk``
    weak Kleene valuation of box-free formulas.
``eval_I``
    box is T when every successor gives T, U when some successor gives U,
    F otherwise.
``eval_II``
    box is U exactly when its argument is U at the current world; it is T
    when additionally every successor gives T.  Only defined on class-II
    models.
``eval_4v``
    the two four-valued readings from which the above are obtained by
    compression.

Each public call memoizes per (world, subformula) internally; the cache
never outlives the call.  :class:`ModelEvaluator` exposes the same cache for
callers that sweep many formulas over one model.
"""

from __future__ import annotations

import enum
from typing import Mapping, Union

from .kripke import KripkeModel3, KripkeModel4, validate_class_II
from .syntax import And, Atom, Formula, Not, Or
from .truthval import (
    CONJ_TABLE,
    DISJ_TABLE,
    NEG_TABLE,
    T,
    T1T2,
    U,
    F,
    TruthValue3,
    TruthValue4,
)

__all__ = [
    "SemanticsId",
    "EvaluationError",
    "ClassIIError",
    "ModelEvaluator",
    "eval_wk",
    "eval_I",
    "eval_II",
    "eval_4v",
    "holds",
]


class SemanticsId(enum.Enum):
    WK = "wk"
    SEM_I = "I"
    SEM_II = "II"
    FOUR_I = "4I"
    FOUR_II = "4II"

    @property
    def four_valued(self) -> bool:
        return self in (SemanticsId.FOUR_I, SemanticsId.FOUR_II)


class EvaluationError(ValueError):
    pass


class ClassIIError(EvaluationError):
    """Semantics II was asked to evaluate on a model outside class II."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(
            "model is not class II: " + "; ".join(str(v) for v in self.violations[:3])
            + (" ..." if len(self.violations) > 3 else "")
        )


def _eval_wk(v: Mapping[str, TruthValue3], f: Formula) -> TruthValue3:
    if isinstance(f, Atom):
        try:
            return v[f.name]
        except KeyError:
            raise EvaluationError(f"no truth value for atom {f.name!r}") from None
    if isinstance(f, Not):
        return NEG_TABLE[_eval_wk(v, f.child)]
    if isinstance(f, And):
        return CONJ_TABLE[_eval_wk(v, f.left), _eval_wk(v, f.right)]
    if isinstance(f, Or):
        return DISJ_TABLE[_eval_wk(v, f.left), _eval_wk(v, f.right)]
    raise EvaluationError("box is not part of the propositional language")


def eval_wk(v: Mapping[str, TruthValue3], f: Formula) -> TruthValue3:
    return _eval_wk(v, f)


class ModelEvaluator:
    """Memoizing evaluator for one model under one semantics.

    ``check_class`` only matters for Semantics II; turning it off lets the
    soundness harness apply the box clause to arbitrary models on purpose.
    """

    def __init__(self, model: Union[KripkeModel3, KripkeModel4], sem: SemanticsId, check_class: bool = True):
        self.model = model
        self.sem = sem
        if sem.four_valued != isinstance(model, KripkeModel4):
            kind = "four" if sem.four_valued else "three"
            raise EvaluationError(f"semantics {sem.value} needs a {kind}-valued model")
        if sem is SemanticsId.WK:
            raise EvaluationError("weak Kleene semantics has no worlds; use eval_wk")
        if check_class and sem in (SemanticsId.SEM_II, SemanticsId.FOUR_II):
            found = validate_class_II(model)
            if found:
                raise ClassIIError(found)
        self._cache: dict = {}
        if sem.four_valued:
            self._value = self._value4
        else:
            self._value = self._value3

    def value(self, s: str, f: Formula):
        if s not in self.model.valuation:
            raise EvaluationError(f"unknown world {s!r}")
        return self._value(s, f)

    def _atom(self, s: str, f: Atom):
        try:
            return self.model.valuation[s][f.name]
        except KeyError:
            raise EvaluationError(f"no truth value for atom {f.name!r} at world {s!r}") from None

    def _value3(self, s: str, f: Formula) -> TruthValue3:
        key = (s, f)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            out = self._atom(s, f)
        elif isinstance(f, Not):
            out = NEG_TABLE[self._value3(s, f.child)]
        elif isinstance(f, And):
            out = CONJ_TABLE[self._value3(s, f.left), self._value3(s, f.right)]
        elif isinstance(f, Or):
            out = DISJ_TABLE[self._value3(s, f.left), self._value3(s, f.right)]
        else:
            succ = [self._value3(t, f.child) for t in self.model.successors(s)]
            if self.sem is SemanticsId.SEM_I:
                if all(v is T for v in succ):
                    out = T
                elif any(v is U for v in succ):
                    out = U
                else:
                    out = F
            else:
                here = self._value3(s, f.child)
                if here is U:
                    out = U
                elif all(v is T for v in succ):
                    out = T
                else:
                    out = F
        self._cache[key] = out
        return out

    def _value4(self, s: str, f: Formula) -> TruthValue4:
        key = (s, f)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            out = self._atom(s, f)
        elif isinstance(f, Not):
            a = self._value4(s, f.child)
            out = TruthValue4(not a.first, a.second)
        elif isinstance(f, (And, Or)):
            a = self._value4(s, f.left)
            b = self._value4(s, f.right)
            first = (a.first and b.first) if isinstance(f, And) else (a.first or b.first)
            out = TruthValue4(first, a.second and b.second)
        else:
            succ = [self._value4(t, f.child) for t in self.model.successors(s)]
            first = all(v.first for v in succ)
            if self.sem is SemanticsId.FOUR_I:
                second = all(v.second for v in succ)
            else:
                second = self._value4(s, f.child).second
            out = TruthValue4(first, second)
        self._cache[key] = out
        return out


def eval_I(m: KripkeModel3, s: str, f: Formula) -> TruthValue3:
    return ModelEvaluator(m, SemanticsId.SEM_I).value(s, f)


def eval_II(m: KripkeModel3, s: str, f: Formula) -> TruthValue3:
    """Raises :class:`ClassIIError` (listing the violations) off class II."""
    return ModelEvaluator(m, SemanticsId.SEM_II).value(s, f)


def eval_4v(m: KripkeModel4, s: str, f: Formula, which: SemanticsId) -> TruthValue4:
    if which not in (SemanticsId.FOUR_I, SemanticsId.FOUR_II):
        raise EvaluationError(f"eval_4v takes 4I or 4II, not {which.value}")
    return ModelEvaluator(m, which).value(s, f)


def holds(m, s, f: Formula, sem: SemanticsId) -> bool:
    """True iff ``f`` gets the designated value at the pointed model.

    For weak Kleene ``m`` may be a plain atom valuation (``s`` is then
    ignored) or a three-valued Kripke model whose world ``s`` supplies it.
    """
    if sem is SemanticsId.WK:
        if isinstance(m, KripkeModel3):
            if s not in m.valuation:
                raise EvaluationError(f"unknown world {s!r}")
            m = m.valuation[s]
        return eval_wk(m, f) is T
    if sem.four_valued:
        return eval_4v(m, s, f, sem) == T1T2
    return ModelEvaluator(m, sem).value(s, f) is T
