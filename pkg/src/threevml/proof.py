"""Natural deduction derivations and their checker.

Derivations are sequent trees: each node carries a rule, its premise
subtrees and the sequent it concludes.  A node is correct when its
conclusion is exactly what the rule yields from the conclusions of its
premises; assumption sets of premises are unioned, and the disjunction
elimination rule discharges its three case hypotheses.

Systems and their modal rules::

    I       BoxI_I,        NegBoxI_I,  NegBoxE_I
    I-s4    BoxIprime_S4,  BoxE_S4,    NegBoxI_I,  NegBoxE_I
    II      BoxI1_II,      BoxI2_II,   NegBoxI_II, NegBoxE_II
    II-s4   BoxI1prime_S4, BoxE_S4,    BoxI2_II,   NegBoxI_II, NegBoxE_II

All systems share the propositional rules, and ``Weaken`` (an added
structural rule).

Proof files are JSON, one object per node::

    {"rule": "OrI2",
     "conclusion": {"assumptions": ["p"], "formula": "p | ~p"},
     "premises": [...]}
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .syntax import And, Box, Formula, FormulaSyntaxError, Not, Or, parse, render

__all__ = [
    "Sequent",
    "RuleId",
    "SystemId",
    "Derivation",
    "NodeError",
    "RuleInstance",
    "ProofFormatError",
    "SHARED_RULES",
    "SYSTEM_RULES",
    "BOX_INTRODUCTION_RULES",
    "check",
    "check_step",
    "box_image",
    "excluded_middle",
    "rule_instances",
    "context_subsets",
    "derivation_to_dict",
    "derivation_from_dict",
    "load_derivation",
    "save_derivation",
]


@dataclass(frozen=True, slots=True)
class Sequent:
    assumptions: frozenset
    conclusion: Formula

    def __init__(self, assumptions: Iterable[Formula], conclusion: Formula):
        object.__setattr__(self, "assumptions", frozenset(assumptions))
        object.__setattr__(self, "conclusion", conclusion)

    def __str__(self) -> str:
        gamma = ", ".join(sorted(render(a) for a in self.assumptions))
        return f"{{{gamma}}} |- {render(self.conclusion)}"


class RuleId(enum.Enum):
    Assume = "Assume"
    Weaken = "Weaken"
    EFQ = "EFQ"
    NotNotI = "NotNotI"
    NotNotE = "NotNotE"
    OrI1 = "OrI1"
    OrI2 = "OrI2"
    OrI3 = "OrI3"
    OrE = "OrE"
    AndI = "AndI"
    AndE1 = "AndE1"
    AndE2 = "AndE2"
    NegOrI = "NegOrI"
    NegOrE = "NegOrE"
    NegAndI = "NegAndI"
    NegAndE = "NegAndE"
    BoxI_I = "BoxI_I"
    NegBoxI_I = "NegBoxI_I"
    NegBoxE_I = "NegBoxE_I"
    BoxIprime_S4 = "BoxIprime_S4"
    BoxE_S4 = "BoxE_S4"
    BoxI1_II = "BoxI1_II"
    BoxI2_II = "BoxI2_II"
    NegBoxI_II = "NegBoxI_II"
    NegBoxE_II = "NegBoxE_II"
    BoxI1prime_S4 = "BoxI1prime_S4"


class SystemId(enum.Enum):
    SYS_I = "I"
    SYS_II = "II"
    SYS_I_S4 = "I-s4"
    SYS_II_S4 = "II-s4"


R = RuleId
SHARED_RULES = (
    R.Assume, R.Weaken, R.EFQ, R.NotNotI, R.NotNotE, R.OrI1, R.OrI2, R.OrI3, R.OrE,
    R.AndI, R.AndE1, R.AndE2, R.NegOrI, R.NegOrE, R.NegAndI, R.NegAndE,
)  # fmt: skip
SYSTEM_RULES = {
    SystemId.SYS_I: SHARED_RULES + (R.BoxI_I, R.NegBoxI_I, R.NegBoxE_I),
    SystemId.SYS_I_S4: SHARED_RULES + (R.BoxIprime_S4, R.BoxE_S4, R.NegBoxI_I, R.NegBoxE_I),
    SystemId.SYS_II: SHARED_RULES + (R.BoxI1_II, R.BoxI2_II, R.NegBoxI_II, R.NegBoxE_II),
    SystemId.SYS_II_S4: SHARED_RULES
    + (R.BoxI1prime_S4, R.BoxE_S4, R.BoxI2_II, R.NegBoxI_II, R.NegBoxE_II),
}
# rules whose premise is a whole entailment rather than a local fact
BOX_INTRODUCTION_RULES = frozenset({R.BoxI_I, R.BoxIprime_S4, R.BoxI1_II, R.BoxI1prime_S4})


@dataclass(frozen=True)
class Derivation:
    rule: RuleId
    conclusion: Sequent
    premises: tuple["Derivation", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))

    def nodes(self, address: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], "Derivation"]]:
        """Pre-order walk yielding (address, node); the root has address ()."""
        yield address, self
        for i, p in enumerate(self.premises):
            yield from p.nodes(address + (i,))


@dataclass(frozen=True)
class NodeError:
    address: tuple[int, ...]
    rule: RuleId
    message: str

    def __str__(self) -> str:
        where = "root" if not self.address else ".".join(map(str, self.address))
        return f"node {where} ({self.rule.value}): {self.message}"


def box_image(gamma: Iterable[Formula]) -> frozenset:
    return frozenset(Box(b) for b in gamma)


def excluded_middle(a: Formula) -> Formula:
    return Or(a, Not(a))


# --------------------------------------------------------------------------
# single-step checking
#
# Each checker receives the premise sequents and the claimed conclusion and
# returns None when the step is a correct instance, else a message.


class _Mismatch(Exception):
    pass


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise _Mismatch(message)


def _shape(f: Formula, cls, what: str):
    _need(isinstance(f, cls), f"premise formula {render(f)} is not {what}")
    return f


def _union(ps: Sequence[Sequent]) -> frozenset:
    out: frozenset = frozenset()
    for p in ps:
        out |= p.assumptions
    return out


def _expect(concl: Sequent, assumptions: frozenset, formula: Formula) -> None:
    _need(
        concl.conclusion == formula,
        f"conclusion formula should be {render(formula)}, got {render(concl.conclusion)}",
    )
    _need(
        concl.assumptions == assumptions,
        "assumption set should be " + str(Sequent(assumptions, formula)).split(" |- ")[0]
        + ", got " + str(concl).split(" |- ")[0],
    )


def _unary(transform: Callable[[Formula], Formula]):
    def step(ps: Sequence[Sequent], concl: Sequent) -> None:
        (p,) = ps
        _expect(concl, p.assumptions, transform(p.conclusion))

    step.arity = 1
    return step


def _double_neg(f):
    return _shape(_shape(f, Not, "a negation").child, Not, "a double negation").child


def _and_parts(f, left_neg: bool, right_neg: bool):
    c = _shape(f, And, "a conjunction")
    a, b = c.left, c.right
    if left_neg:
        a = _shape(a, Not, "of the form ~A & B").child
    if right_neg:
        b = _shape(b, Not, "of the form A & ~B").child
    return a, b


def _or_intro(left_neg, right_neg):
    def t(f):
        a, b = _and_parts(f, left_neg, right_neg)
        return Or(a, b)

    return _unary(t)


def _neg_or_intro(f):
    a, b = _and_parts(f, True, True)
    return Not(Or(a, b))


def _neg_or_elim(f):
    d = _shape(_shape(f, Not, "a negated disjunction").child, Or, "a negated disjunction")
    return And(Not(d.left), Not(d.right))


def _neg_and_intro(f):
    d = _shape(f, Or, "of the form ~A | ~B")
    a = _shape(d.left, Not, "of the form ~A | ~B").child
    b = _shape(d.right, Not, "of the form ~A | ~B").child
    return Not(And(a, b))


def _neg_and_elim(f):
    c = _shape(_shape(f, Not, "a negated conjunction").child, And, "a negated conjunction")
    return Or(Not(c.left), Not(c.right))


def _em_arg(f, what="of the form A | ~A") -> Formula:
    d = _shape(f, Or, what)
    _need(d.right == Not(d.left), f"premise formula {render(f)} is not {what}")
    return d.left


def _box_em_arg(f) -> Formula:
    b = _shape(f, Box, "of the form [](A | ~A)")
    return _em_arg(b.child, "of the form [](A | ~A)")


def _box_or_not_box_arg(f) -> Formula:
    d = _shape(f, Or, "of the form []A | ~[]A")
    a = _shape(d.left, Box, "of the form []A | ~[]A").child
    _need(d.right == Not(Box(a)), f"premise formula {render(f)} is not of the form []A | ~[]A")
    return a


def _box_or_not_box(a):
    return Or(Box(a), Not(Box(a)))


def _check_assume(ps, concl):
    _need(concl.conclusion in concl.assumptions, "assumed formula is not in the assumption set")


_check_assume.arity = 0


def _check_weaken(ps, concl):
    (p,) = ps
    _need(concl.conclusion == p.conclusion, "weakening may not change the formula")
    _need(p.assumptions <= concl.assumptions, "weakening may only add assumptions")


_check_weaken.arity = 1


def _check_efq(ps, concl):
    a, na = ps
    _need(na.conclusion == Not(a.conclusion), "second premise must be the negation of the first")
    _expect(concl, _union(ps), concl.conclusion)


_check_efq.arity = 2


def _check_and_intro(ps, concl):
    a, b = ps
    _expect(concl, _union(ps), And(a.conclusion, b.conclusion))


_check_and_intro.arity = 2


def _check_or_elim(ps, concl):
    major, c1, c2, c3 = ps
    d = _shape(major.conclusion, Or, "a disjunction")
    a, b = d.left, d.right
    c = c1.conclusion
    _need(c2.conclusion == c and c3.conclusion == c, "the three case premises must share one conclusion")
    expected = (
        major.assumptions
        | (c1.assumptions - {And(a, b)})
        | (c2.assumptions - {And(a, Not(b))})
        | (c3.assumptions - {And(Not(a), b)})
    )
    _expect(concl, expected, c)


_check_or_elim.arity = 4


def _check_box_intro_I(ps, concl):
    (p,) = ps
    _expect(concl, box_image(p.assumptions), Box(p.conclusion))


_check_box_intro_I.arity = 1


def _check_box_intro_prime(ps, concl):
    (p,) = ps
    for g in p.assumptions:
        _need(isinstance(g, Box), f"assumption {render(g)} is not boxed")
    _expect(concl, p.assumptions, Box(p.conclusion))


_check_box_intro_prime.arity = 1


def _check_box_intro_1_II(ps, concl):
    (p,) = ps
    a = p.conclusion
    _expect(concl, box_image(p.assumptions) | {excluded_middle(a)}, Box(a))


_check_box_intro_1_II.arity = 1


_STEP = {
    R.Assume: _check_assume,
    R.Weaken: _check_weaken,
    R.EFQ: _check_efq,
    R.NotNotI: _unary(lambda a: Not(Not(a))),
    R.NotNotE: _unary(_double_neg),
    R.OrI1: _or_intro(True, False),
    R.OrI2: _or_intro(False, True),
    R.OrI3: _or_intro(False, False),
    R.OrE: _check_or_elim,
    R.AndI: _check_and_intro,
    R.AndE1: _unary(lambda f: _shape(f, And, "a conjunction").left),
    R.AndE2: _unary(lambda f: _shape(f, And, "a conjunction").right),
    R.NegOrI: _unary(_neg_or_intro),
    R.NegOrE: _unary(_neg_or_elim),
    R.NegAndI: _unary(_neg_and_intro),
    R.NegAndE: _unary(_neg_and_elim),
    R.BoxI_I: _check_box_intro_I,
    R.NegBoxI_I: _unary(lambda f: _box_or_not_box(_box_em_arg(f))),
    R.NegBoxE_I: _unary(lambda f: Box(excluded_middle(_box_or_not_box_arg(f)))),
    R.BoxIprime_S4: _check_box_intro_prime,
    R.BoxE_S4: _unary(lambda f: _shape(f, Box, "a box formula").child),
    R.BoxI1_II: _check_box_intro_1_II,
    R.BoxI2_II: _unary(lambda f: Box(excluded_middle(_em_arg(f)))),
    R.NegBoxI_II: _unary(lambda f: _box_or_not_box(_em_arg(f))),
    R.NegBoxE_II: _unary(lambda f: excluded_middle(_box_or_not_box_arg(f))),
    R.BoxI1prime_S4: _check_box_intro_prime,
}


def check_step(rule: RuleId, premises: Sequence[Sequent], conclusion: Sequent) -> Optional[str]:
    """Check one rule application; None if correct, else the violated condition."""
    step = _STEP[rule]
    if len(premises) != step.arity:
        return f"{rule.value} takes {step.arity} premise(s), got {len(premises)}"
    try:
        step(premises, conclusion)
    except _Mismatch as e:
        return str(e)
    return None


def check(d: Derivation, sys: SystemId) -> list[NodeError]:
    """Every incorrect node of ``d`` under ``sys``; an empty list means accepted."""
    allowed = SYSTEM_RULES[sys]
    errors = []
    for address, node in d.nodes():
        if node.rule not in allowed:
            errors.append(NodeError(address, node.rule, f"rule not available in system {sys.value}"))
            continue
        msg = check_step(node.rule, [p.conclusion for p in node.premises], node.conclusion)
        if msg is not None:
            errors.append(NodeError(address, node.rule, msg))
    return errors


# --------------------------------------------------------------------------
# schema instantiation


@dataclass(frozen=True)
class RuleInstance:
    rule: RuleId
    premises: tuple[Sequent, ...]
    conclusion: Sequent


def context_subsets(pool: Sequence[Formula], cap: int) -> list[frozenset]:
    """All subsets of ``pool`` with at most ``cap`` members, smallest first."""
    out = []
    for k in range(min(cap, len(pool)) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(pool, k))
    return out


def _premise_contexts(contexts: list[frozenset], formula: Formula) -> list[frozenset]:
    # the pool subsets, plus the context an Assume leaf for the premise itself would give
    own = frozenset({formula})
    return contexts if own in contexts else contexts + [own]


def rule_instances(rule: RuleId, pool: Sequence[Formula], gamma_cap: int = 1) -> Iterator[RuleInstance]:
    """Instantiate the schema of ``rule`` over ``pool``.

    Metavariables range over ``pool``.  Each premise's assumption set ranges
    over subsets of ``pool`` of size at most ``gamma_cap`` and over the
    singleton of the premise's own formula.  Disjunction elimination uses one
    side context shared by its four premises, to which the case hypotheses
    are added.  Every yielded instance passes :func:`check_step`.
    """
    pool = list(dict.fromkeys(pool))
    contexts = context_subsets(pool, gamma_cap)
    step = _STEP[rule]

    def unary(premise_of: Callable[[Formula], Formula], conclusion_of: Callable[[Formula], Formula], metas=1):
        for args in itertools.product(pool, repeat=metas):
            pf = premise_of(*args)
            cf = conclusion_of(*args)
            for g in _premise_contexts(contexts, pf):
                yield RuleInstance(rule, (Sequent(g, pf),), Sequent(g, cf))

    if rule is R.Assume:
        for g in contexts:
            for a in g:
                yield RuleInstance(rule, (), Sequent(g, a))
        return
    if rule is R.Weaken:
        for a in pool:
            for g in _premise_contexts(contexts, a):
                for extra in contexts:
                    if extra and not extra <= g:
                        yield RuleInstance(rule, (Sequent(g, a),), Sequent(g | extra, a))
        return
    if rule in (R.EFQ, R.AndI):
        for a, b in itertools.product(pool, repeat=2):
            if rule is R.EFQ:
                f1, f2, c = a, Not(a), b
            else:
                f1, f2, c = a, b, And(a, b)
            for g1 in _premise_contexts(contexts, f1):
                for g2 in _premise_contexts(contexts, f2):
                    yield RuleInstance(rule, (Sequent(g1, f1), Sequent(g2, f2)), Sequent(g1 | g2, c))
        return
    if rule is R.OrE:
        for a, b, c in itertools.product(pool, repeat=3):
            for g in contexts:
                prem = (
                    Sequent(g, Or(a, b)),
                    Sequent(g | {And(a, b)}, c),
                    Sequent(g | {And(a, Not(b))}, c),
                    Sequent(g | {And(Not(a), b)}, c),
                )
                yield RuleInstance(rule, prem, Sequent(g, c))
        return
    if rule in (R.BoxI_I, R.BoxI1_II):
        for a in pool:
            for g in contexts:
                extra = {excluded_middle(a)} if rule is R.BoxI1_II else set()
                yield RuleInstance(rule, (Sequent(g, a),), Sequent(box_image(g) | extra, Box(a)))
        return
    if rule in (R.BoxIprime_S4, R.BoxI1prime_S4):
        for a in pool:
            for g in contexts:
                boxed = box_image(g)
                yield RuleInstance(rule, (Sequent(boxed, a),), Sequent(boxed, Box(a)))
        return

    table = {
        R.NotNotI: (lambda a: a, lambda a: Not(Not(a)), 1),
        R.NotNotE: (lambda a: Not(Not(a)), lambda a: a, 1),
        R.OrI1: (lambda a, b: And(Not(a), b), Or, 2),
        R.OrI2: (lambda a, b: And(a, Not(b)), Or, 2),
        R.OrI3: (And, Or, 2),
        R.AndE1: (And, lambda a, b: a, 2),
        R.AndE2: (And, lambda a, b: b, 2),
        R.NegOrI: (lambda a, b: And(Not(a), Not(b)), lambda a, b: Not(Or(a, b)), 2),
        R.NegOrE: (lambda a, b: Not(Or(a, b)), lambda a, b: And(Not(a), Not(b)), 2),
        R.NegAndI: (lambda a, b: Or(Not(a), Not(b)), lambda a, b: Not(And(a, b)), 2),
        R.NegAndE: (lambda a, b: Not(And(a, b)), lambda a, b: Or(Not(a), Not(b)), 2),
        R.NegBoxI_I: (lambda a: Box(excluded_middle(a)), lambda a: Or(Box(a), Not(Box(a))), 1),
        R.NegBoxE_I: (lambda a: Or(Box(a), Not(Box(a))), lambda a: Box(excluded_middle(a)), 1),
        R.BoxE_S4: (Box, lambda a: a, 1),
        R.BoxI2_II: (excluded_middle, lambda a: Box(excluded_middle(a)), 1),
        R.NegBoxI_II: (excluded_middle, lambda a: Or(Box(a), Not(Box(a))), 1),
        R.NegBoxE_II: (lambda a: Or(Box(a), Not(Box(a))), excluded_middle, 1),
    }
    premise_of, conclusion_of, metas = table[rule]
    assert step.arity == 1
    yield from unary(premise_of, conclusion_of, metas)


# --------------------------------------------------------------------------
# proof files


class ProofFormatError(ValueError):
    pass


def _sequent_to_dict(s: Sequent) -> dict:
    return {
        "assumptions": sorted(render(a) for a in s.assumptions),
        "formula": render(s.conclusion),
    }


def derivation_to_dict(d: Derivation) -> dict:
    return {
        "rule": d.rule.value,
        "conclusion": _sequent_to_dict(d.conclusion),
        "premises": [derivation_to_dict(p) for p in d.premises],
    }


def _parse_at(text, where: str) -> Formula:
    if not isinstance(text, str):
        raise ProofFormatError(f"{where}: formula must be a string")
    try:
        return parse(text)
    except FormulaSyntaxError as e:
        raise ProofFormatError(f"{where}: {e}") from None


def derivation_from_dict(doc, address: tuple[int, ...] = ()) -> Derivation:
    where = "node " + ("root" if not address else ".".join(map(str, address)))
    if not isinstance(doc, dict):
        raise ProofFormatError(f"{where}: must be an object")
    try:
        rule = RuleId(doc.get("rule"))
    except ValueError:
        raise ProofFormatError(f"{where}: unknown rule {doc.get('rule')!r}") from None
    concl = doc.get("conclusion")
    if not isinstance(concl, dict) or "formula" not in concl:
        raise ProofFormatError(f"{where}: conclusion needs 'assumptions' and 'formula'")
    assumptions = concl.get("assumptions", [])
    if not isinstance(assumptions, list):
        raise ProofFormatError(f"{where}: assumptions must be a list")
    sequent = Sequent(
        [_parse_at(a, where) for a in assumptions],
        _parse_at(concl["formula"], where),
    )
    premises = doc.get("premises", [])
    if not isinstance(premises, list):
        raise ProofFormatError(f"{where}: premises must be a list")
    return Derivation(
        rule,
        sequent,
        tuple(derivation_from_dict(p, address + (i,)) for i, p in enumerate(premises)),
    )


def load_derivation(text: str) -> Derivation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProofFormatError(f"not valid JSON: {e}") from None
    return derivation_from_dict(doc)


def save_derivation(d: Derivation, indent: int | None = 2) -> str:
    return json.dumps(derivation_to_dict(d), indent=indent, ensure_ascii=False)
