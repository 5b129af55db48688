"""Vectorized three-valued evaluation over many pointed models at once.

Truth values are coded F=0, U=1, T=2 so that negation is ``2 - v`` and the
classical parts of conjunction/disjunction are ``min``/``max``.  Models are
grouped by world count; every public result is a flat vector indexed by
pointed model (model-major, worlds in declaration order).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .kripke import KripkeModel3
from .semantics import SemanticsId
from .syntax import And, Atom, Formula, Not, Or
from .truthval import TruthValue3

CODE = {TruthValue3.F: 0, TruthValue3.U: 1, TruthValue3.T: 2}
DECODE = {v: k for k, v in CODE.items()}


class _Group:
    def __init__(self, models: Sequence[KripkeModel3], atoms: Sequence[str]):
        n = len(models[0].worlds)
        self.n = n
        self.rel = np.zeros((len(models), n, n), dtype=bool)
        self.atoms = {a: np.empty((len(models), n), dtype=np.int8) for a in atoms}
        for i, m in enumerate(models):
            index = {w: j for j, w in enumerate(m.worlds)}
            for s, t in m.relation:
                self.rel[i, index[s], index[t]] = True
            for a in atoms:
                arr = self.atoms[a]
                for j, w in enumerate(m.worlds):
                    arr[i, j] = CODE[m.value(w, a)]

    def all_successors(self, x: np.ndarray) -> np.ndarray:
        """out[m, s] = x[m, t] for every successor t of s (vacuously True)."""
        return ~np.any(self.rel & ~x[:, None, :], axis=2)

    def any_successor(self, x: np.ndarray) -> np.ndarray:
        return np.any(self.rel & x[:, None, :], axis=2)


class PointedBatch:
    """Every pointed model drawn from ``models``, evaluated together.

    Semantics II is applied without checking class membership; callers
    decide which models to include.
    """

    def __init__(self, models: Sequence[KripkeModel3], sem: SemanticsId):
        if sem not in (SemanticsId.SEM_I, SemanticsId.SEM_II):
            raise ValueError("batch evaluation supports Semantics I and II only")
        self.sem = sem
        self.models = list(models)
        if not self.models:
            raise ValueError("empty batch")
        atoms = self.models[0].atoms
        by_size: dict[int, list[KripkeModel3]] = {}
        for m in self.models:
            if m.atoms != atoms:
                raise ValueError("all models in a batch must share one atom list")
            by_size.setdefault(len(m.worlds), []).append(m)
        self.groups = [_Group(ms, atoms) for _, ms in sorted(by_size.items())]
        self.pointed = [(m, w) for _, ms in sorted(by_size.items()) for m in ms for w in m.worlds]
        self.size = len(self.pointed)
        self._cache: dict[Formula, list[np.ndarray]] = {}
        self._true: dict[Formula, np.ndarray] = {}

    def _values(self, f: Formula) -> list[np.ndarray]:
        hit = self._cache.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            out = [g.atoms[f.name] for g in self.groups]
        elif isinstance(f, Not):
            out = [2 - v for v in self._values(f.child)]
        elif isinstance(f, (And, Or)):
            pick = np.minimum if isinstance(f, And) else np.maximum
            out = []
            for a, b in zip(self._values(f.left), self._values(f.right)):
                out.append(np.where((a == 1) | (b == 1), 1, pick(a, b)).astype(np.int8))
        else:
            out = []
            for g, v in zip(self.groups, self._values(f.child)):
                all_t = g.all_successors(v == 2)
                if self.sem is SemanticsId.SEM_I:
                    any_u = g.any_successor(v == 1)
                    box = np.where(all_t, 2, np.where(any_u, 1, 0))
                else:
                    box = np.where(v == 1, 1, np.where(all_t, 2, 0))
                out.append(box.astype(np.int8))
        self._cache[f] = out
        return out

    def values(self, f: Formula) -> np.ndarray:
        return np.concatenate([v.ravel() for v in self._values(f)])

    def true(self, f: Formula) -> np.ndarray:
        hit = self._true.get(f)
        if hit is None:
            hit = self.values(f) == 2
            self._true[f] = hit
        return hit

    def all_successors(self, x: np.ndarray) -> np.ndarray:
        """Lift a pointed boolean vector to 'holds at every successor'."""
        out, start = [], 0
        for g in self.groups:
            stop = start + g.rel.shape[0] * g.n
            out.append(g.all_successors(x[start:stop].reshape(-1, g.n)).ravel())
            start = stop
        return np.concatenate(out)
