"""Bounded enumeration: models, formulas, countermodels and the sweeps.

Nothing here decides validity.  A search that finds no countermodel only
says so for the bounds it was given.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from ._batch import PointedBatch
from .kripke import (
    KripkeModel3,
    ModelClass,
    in_class,
    lift_choices,
    lift_model,
    validate_s4,
)
from .proof import (
    BOX_INTRODUCTION_RULES,
    SYSTEM_RULES,
    RuleId,
    RuleInstance,
    Sequent,
    SystemId,
    rule_instances,
)
from .semantics import ModelEvaluator, SemanticsId, eval_wk
from .syntax import And, Atom, Box, Formula, Not, Or, atoms_of, is_modal
from .truthval import ALL4, Connective, F, T, U, TruthValue3, compress, fv_apply, wk_apply

log = logging.getLogger(__name__)

__all__ = [
    "Bounds",
    "VALUE_ORDER",
    "enumerate_models",
    "enumerate_formulas",
    "find_countermodel",
    "rule_soundness_report",
    "SoundnessReport",
    "SoundnessViolation",
    "correspondence_check",
    "CorrespondenceReport",
    "Mismatch",
    "persistence_check",
    "PersistenceViolation",
    "homomorphism_check",
    "scan_theorems",
    "system_setting",
]

# classical values first, so the first countermodel found prefers F over U
VALUE_ORDER = (T, F, U)


@dataclass(frozen=True)
class Bounds:
    max_worlds: int = 2
    atoms: tuple[str, ...] = ("p", "q")
    max_depth: int = 2
    model_class: ModelClass = ModelClass.ALL

    def __post_init__(self):
        if self.max_worlds < 1:
            raise ValueError("max_worlds must be at least 1")
        if self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")
        object.__setattr__(self, "atoms", tuple(self.atoms))

    @property
    def model_count(self) -> int:
        """Models enumerated before class filtering: sum of 2^(n^2) * 3^(n*k)."""
        k = len(self.atoms)
        return sum(2 ** (n * n) * 3 ** (n * k) for n in range(1, self.max_worlds + 1))


def enumerate_models(b: Bounds) -> Iterator[KripkeModel3]:
    """Every model on worlds w0..w(n-1), n <= b.max_worlds, in a fixed order.

    Order: world count, then relation (as a bitmask over pairs in row-major
    order), then valuation (product over (world, atom) with values T, F, U).
    Models outside ``b.model_class`` are skipped.
    """
    log.info("enumerating up to %d models (%s)", b.model_count, b.model_class.value)
    atoms = b.atoms
    for n in range(1, b.max_worlds + 1):
        worlds = tuple(f"w{i}" for i in range(n))
        pairs = [(s, t) for s in worlds for t in worlds]
        entries = [(w, a) for w in worlds for a in atoms]
        for mask in range(2 ** len(pairs)):
            relation = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
            if b.model_class.needs_s4:
                frame = KripkeModel3(worlds, relation, (), {})
                if validate_s4(frame):
                    continue
            for combo in itertools.product(VALUE_ORDER, repeat=len(entries)):
                valuation = {w: {} for w in worlds}
                for (w, a), v in zip(entries, combo):
                    valuation[w][a] = v
                m = KripkeModel3(worlds, relation, atoms, valuation)
                if b.model_class.needs_class_II and not in_class(m, ModelClass.CLASS_II):
                    continue
                yield m


def enumerate_formulas(atoms: Sequence[str], max_depth: int, modal: bool = True) -> list[Formula]:
    """All formulas of nesting depth <= ``max_depth``, shallowest first."""
    levels: list[list[Formula]] = [[Atom(a) for a in atoms]]
    for d in range(1, max_depth + 1):
        prev = levels[d - 1]
        fresh = set(prev)
        below = [f for level in levels for f in level]
        new: list[Formula] = [Not(f) for f in prev]
        for cls in (And, Or):
            for x in below:
                for y in below:
                    if x in fresh or y in fresh:
                        new.append(cls(x, y))
        if modal:
            new.extend(Box(f) for f in prev)
        levels.append(new)
    return [f for level in levels for f in level]


# --------------------------------------------------------------------------
# countermodels


def find_countermodel(
    gamma: Iterable[Formula],
    goal: Formula,
    sem: SemanticsId,
    b: Optional[Bounds] = None,
) -> Optional[tuple[KripkeModel3, str]]:
    """First pointed model (fewest worlds) making all of ``gamma`` T and ``goal`` not T.

    ``None`` means only that no countermodel exists within ``b``.  For weak
    Kleene the search runs over single relationless worlds.  Semantics II
    always searches class-II models.  When ``b`` is omitted the atoms
    default to those of the problem.
    """
    gamma = list(gamma)
    needed = set(atoms_of(goal)).union(*(atoms_of(g) for g in gamma))
    if b is None:
        b = Bounds(atoms=tuple(sorted(needed)))
    missing = needed - set(b.atoms)
    if missing:
        raise ValueError(f"bounds do not cover atoms {sorted(missing)}")
    if sem is SemanticsId.WK:
        if any(is_modal(f) for f in gamma + [goal]):
            raise ValueError("weak Kleene countermodels need box-free formulas")
        for combo in itertools.product(VALUE_ORDER, repeat=len(b.atoms)):
            v = dict(zip(b.atoms, combo))
            if all(eval_wk(v, g) is T for g in gamma) and eval_wk(v, goal) is not T:
                return KripkeModel3(("w0",), frozenset(), b.atoms, {"w0": v}), "w0"
        return None
    if sem not in (SemanticsId.SEM_I, SemanticsId.SEM_II):
        raise ValueError("countermodel search supports wk, I and II")
    cls = b.model_class
    if sem is SemanticsId.SEM_II and not cls.needs_class_II:
        cls = ModelClass.S4_CLASS_II if cls.needs_s4 else ModelClass.CLASS_II
    bounds = Bounds(b.max_worlds, b.atoms, b.max_depth, cls)
    for m in enumerate_models(bounds):
        ev = ModelEvaluator(m, sem, check_class=False)
        for w in m.worlds:
            if all(ev.value(w, g) is T for g in gamma) and ev.value(w, goal) is not T:
                return m, w
    return None


# --------------------------------------------------------------------------
# soundness sweep


def system_setting(sys: SystemId) -> tuple[ModelClass, SemanticsId]:
    """The model class and semantics a proof system is meant to be sound for."""
    return {
        SystemId.SYS_I: (ModelClass.ALL, SemanticsId.SEM_I),
        SystemId.SYS_I_S4: (ModelClass.S4, SemanticsId.SEM_I),
        SystemId.SYS_II: (ModelClass.CLASS_II, SemanticsId.SEM_II),
        SystemId.SYS_II_S4: (ModelClass.S4_CLASS_II, SemanticsId.SEM_II),
    }[sys]


@dataclass(frozen=True)
class SoundnessViolation:
    instance: RuleInstance
    model: KripkeModel3
    world: str

    def __str__(self) -> str:
        prem = "; ".join(str(p) for p in self.instance.premises)
        return f"{self.instance.rule.value}: [{prem}] => {self.instance.conclusion} fails at {self.world} of {self.model!r}"


@dataclass
class SoundnessReport:
    system: SystemId
    model_class: ModelClass
    semantics: SemanticsId
    models: int
    pointed_models: int
    instances: dict[RuleId, int] = field(default_factory=dict)
    violating_instances: dict[RuleId, int] = field(default_factory=dict)
    examples: dict[RuleId, list[SoundnessViolation]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.violating_instances.values())

    def violations(self, rule: RuleId) -> int:
        return self.violating_instances.get(rule, 0)

    def summary(self) -> str:
        lines = [
            f"system {self.system.value} over {self.model_class.value} models, "
            f"semantics {self.semantics.value}: {self.models} models, {self.pointed_models} pointed"
        ]
        for rule, n in self.instances.items():
            bad = self.violating_instances.get(rule, 0)
            lines.append(f"  {rule.value:<14} {n:>7} instances  {bad} violating")
        return "\n".join(lines)


def rule_soundness_report(
    sys: SystemId,
    b: Optional[Bounds] = None,
    pool_depth: int = 1,
    gamma_cap: int = 1,
    model_class: Optional[ModelClass] = None,
    rules: Optional[Sequence[RuleId]] = None,
    keep: int = 3,
) -> SoundnessReport:
    """Check every rule instance of ``sys`` on every pointed model within ``b``.

    A sequent holds at a pointed model when its conclusion is T there or some
    assumption is not.  An ordinary rule instance is violated at a point
    where all its premise sequents hold but its conclusion sequent does not.
    The box introduction rules turn an entailment into a boxed one, so their
    premise must hold at every successor of the point instead.

    The model class defaults to the one matching ``sys`` (``b.model_class``
    is ignored); pass ``model_class`` to run a deliberate misuse.
    """
    b = b or Bounds(max_depth=pool_depth)
    default_class, sem = system_setting(sys)
    cls = model_class or default_class
    models = list(enumerate_models(Bounds(b.max_worlds, b.atoms, b.max_depth, cls)))
    batch = PointedBatch(models, sem)
    pool = enumerate_formulas(b.atoms, pool_depth, modal=True)
    report = SoundnessReport(sys, cls, sem, len(models), batch.size)
    ones = np.ones(batch.size, dtype=bool)
    ctx_cache: dict[frozenset, np.ndarray] = {}

    def ctx_true(gamma: frozenset) -> np.ndarray:
        hit = ctx_cache.get(gamma)
        if hit is None:
            hit = ones
            for g in gamma:
                hit = hit & batch.true(g)
            ctx_cache[gamma] = hit
        return hit

    def holds(s: Sequent) -> np.ndarray:
        return ~ctx_true(s.assumptions) | batch.true(s.conclusion)

    for rule in rules or SYSTEM_RULES[sys]:
        count = bad = 0
        examples = []
        lift = rule in BOX_INTRODUCTION_RULES
        for inst in rule_instances(rule, pool, gamma_cap):
            count += 1
            ok = ones
            for p in inst.premises:
                h = holds(p)
                ok = ok & (batch.all_successors(h) if lift else h)
            broken = ok & ~holds(inst.conclusion)
            if broken.any():
                bad += 1
                if len(examples) < keep:
                    m, w = batch.pointed[int(np.argmax(broken))]
                    examples.append(SoundnessViolation(inst, m, w))
        report.instances[rule] = count
        report.violating_instances[rule] = bad
        if examples:
            report.examples[rule] = examples
    return report


# --------------------------------------------------------------------------
# four-valued correspondence


@dataclass(frozen=True)
class Mismatch:
    model: KripkeModel3
    lift: tuple
    world: str
    formula: Formula
    semantics: SemanticsId
    three_valued: TruthValue3
    compressed: TruthValue3


@dataclass
class CorrespondenceReport:
    models: int = 0
    lifted_models: int = 0
    comparisons: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def merge(self, other: "CorrespondenceReport") -> "CorrespondenceReport":
        return CorrespondenceReport(
            self.models + other.models,
            self.lifted_models + other.lifted_models,
            self.comparisons + other.comparisons,
            self.mismatches + other.mismatches,
        )

    def summary(self) -> str:
        return (
            f"correspondence: {self.models} models, {self.lifted_models} lifts, "
            f"{self.comparisons} comparisons, {len(self.mismatches)} mismatches"
        )


def _correspondence_part(b: Bounds, depth: int, part: int, parts: int) -> CorrespondenceReport:
    formulas = enumerate_formulas(b.atoms, depth, modal=True)
    report = CorrespondenceReport()
    all_models = Bounds(b.max_worlds, b.atoms, b.max_depth, ModelClass.ALL)
    for i, m in enumerate(enumerate_models(all_models)):
        if i % parts != part:
            continue
        report.models += 1
        checks = [(SemanticsId.FOUR_I, ModelEvaluator(m, SemanticsId.SEM_I))]
        if in_class(m, ModelClass.CLASS_II):
            checks.append((SemanticsId.FOUR_II, ModelEvaluator(m, SemanticsId.SEM_II)))
        for choice in lift_choices(m):
            report.lifted_models += 1
            m4 = lift_model(m, choice)
            for which, ev3 in checks:
                ev4 = ModelEvaluator(m4, which)
                for w in m.worlds:
                    for f in formulas:
                        expected = ev3.value(w, f)
                        got = compress(ev4.value(w, f))
                        report.comparisons += 1
                        if got is not expected:
                            lift = tuple(sorted((k, v.name) for k, v in choice.items()))
                            report.mismatches.append(Mismatch(m, lift, w, f, which, expected, got))
    return report


def correspondence_check(b: Optional[Bounds] = None, max_depth: Optional[int] = None, jobs: int = 1) -> CorrespondenceReport:
    """Compare compressed four-valued evaluation with the three-valued one.

    Every model within ``b`` (class ignored), every lift of it, every world
    and every formula up to ``max_depth``: the 4I reading must compress to
    Semantics I, and on class-II models the 4II reading to Semantics II.
    """
    b = b or Bounds()
    depth = b.max_depth if max_depth is None else max_depth
    if jobs <= 1:
        return _correspondence_part(b, depth, 0, 1)
    with ProcessPoolExecutor(jobs) as pool:
        parts = pool.map(_correspondence_part, [b] * jobs, [depth] * jobs, range(jobs), [jobs] * jobs)
        report = CorrespondenceReport()
        for r in parts:
            report = report.merge(r)
    return report


@dataclass(frozen=True)
class PersistenceViolation:
    model: KripkeModel3
    world: str
    successor: str
    formula: Formula


def persistence_check(b: Optional[Bounds] = None, max_depth: Optional[int] = None) -> list[PersistenceViolation]:
    """Class-II models only: a formula that is not U at s is not U at any successor of s."""
    b = b or Bounds()
    depth = b.max_depth if max_depth is None else max_depth
    formulas = enumerate_formulas(b.atoms, depth, modal=True)
    out = []
    cls = ModelClass.S4_CLASS_II if b.model_class.needs_s4 else ModelClass.CLASS_II
    for m in enumerate_models(Bounds(b.max_worlds, b.atoms, b.max_depth, cls)):
        ev = ModelEvaluator(m, SemanticsId.SEM_II)
        for s in m.worlds:
            for t in m.successors(s):
                for f in formulas:
                    if ev.value(s, f) is not U and ev.value(t, f) is U:
                        out.append(PersistenceViolation(m, s, t, f))
    return out


def homomorphism_check() -> list[tuple]:
    """Inputs where compressing the four-valued result differs from weak Kleene."""
    bad = []
    for a in ALL4:
        if compress(fv_apply(Connective.NEG, a)) is not wk_apply(Connective.NEG, compress(a)):
            bad.append((Connective.NEG, a))
    for c in (Connective.CONJ, Connective.DISJ):
        for a, b in itertools.product(ALL4, repeat=2):
            if compress(fv_apply(c, a, b)) is not wk_apply(c, compress(a), compress(b)):
                bad.append((c, a, b))
    return bad


def scan_theorems(sys: SystemId, pool: Sequence[Formula], rounds: int = 2, gamma_cap: int = 1) -> list[Sequent]:
    """Bounded forward proof search; returns derived sequents with no assumptions.

    Starts from the Assume instances over ``pool`` and applies every rule
    instance of ``sys`` whose premises are already derived, ``rounds`` times.
    """
    rules = [r for r in SYSTEM_RULES[sys] if r is not RuleId.Assume]
    derived = {i.conclusion for i in rule_instances(RuleId.Assume, pool, gamma_cap)}
    instances = [i for r in rules for i in rule_instances(r, pool, gamma_cap)]
    for _ in range(rounds):
        new = {i.conclusion for i in instances if all(p in derived for p in i.premises)}
        if new <= derived:
            break
        derived |= new
    return sorted((s for s in derived if not s.assumptions), key=str)
