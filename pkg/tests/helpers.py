"""Shared builders for the test suite."""

from __future__ import annotations

import itertools

from threevml.kripke import KripkeModel3
from threevml.proof import Derivation, RuleId, Sequent, SystemId, check, rule_instances, SYSTEM_RULES
from threevml.syntax import And, Atom, Box, Not, Or, parse
from threevml.truthval import TruthValue3

p, q, r = Atom("p"), Atom("q"), Atom("r")


def model(valuation: dict[str, str], relation: str = "", atoms=None) -> KripkeModel3:
    """``model({"s": "p=T q=U", "t": "p=F q=U"}, "s>t t>t")``."""
    worlds = tuple(valuation)
    val = {}
    for w, entries in valuation.items():
        val[w] = {}
        for item in entries.split():
            a, v = item.split("=")
            val[w][a] = TruthValue3(v)
    if atoms is None:
        atoms = tuple(dict.fromkeys(a for row in val.values() for a in row))
    rel = frozenset(tuple(pair.split(">")) for pair in relation.split())
    return KripkeModel3(worlds, rel, tuple(atoms), val)


def seq(assumptions: str, formula: str) -> Sequent:
    gamma = [parse(a) for a in assumptions.split(",") if a.strip()]
    return Sequent(gamma, parse(formula))


def assume(text_gamma: str, text_formula: str) -> Derivation:
    return Derivation(RuleId.Assume, seq(text_gamma, text_formula))


def golden_excluded_middle() -> Derivation:
    """{p} |- p | ~p through NotNotI, AndI and OrI2 with A=p, B=~p."""
    leaf = assume("p", "p")
    nn = Derivation(RuleId.NotNotI, seq("p", "~~p"), (assume("p", "p"),))
    conj = Derivation(RuleId.AndI, seq("p", "p & ~~p"), (leaf, nn))
    return Derivation(RuleId.OrI2, seq("p", "p | ~p"), (conj,))


def golden_efq() -> Derivation:
    return Derivation(RuleId.EFQ, seq("p, ~p", "q"), (assume("p", "p"), assume("~p", "~p")))


def golden_box_intro() -> Derivation:
    """{[](p & q)} |- []p from {p & q} |- p."""
    e = Derivation(RuleId.AndE1, seq("p & q", "p"), (assume("p & q", "p & q"),))
    return Derivation(RuleId.BoxI_I, seq("[](p & q)", "[]p"), (e,))


GOLDENS = {
    "excluded_middle": golden_excluded_middle,
    "efq": golden_efq,
    "box_intro": golden_box_intro,
}


def _replace(d: Derivation, address: tuple[int, ...], new: Derivation) -> Derivation:
    if not address:
        return new
    i = address[0]
    premises = list(d.premises)
    premises[i] = _replace(premises[i], address[1:], new)
    return Derivation(d.rule, d.conclusion, tuple(premises))


def _formula_perturbations(f):
    out = [Not(f), And(f, f), Or(f, f), Box(f)]
    swapped = parse(str(f).replace("p", "#").replace("q", "p").replace("#", "q"))
    if swapped != f:
        out.insert(0, swapped)
    return out


def mutations(d: Derivation, sys: SystemId = SystemId.SYS_I):
    """Single-node mutants of ``d`` as (address, mutant) pairs.

    Each mutant swaps one node's rule for another of the same arity, or
    perturbs one node's conclusion formula or assumption set.  The
    conclusion formula of an EFQ node is left alone: EFQ accepts any
    conclusion, so perturbing it is not a mutation of the proof.
    """
    arity = {RuleId.Assume: 0, RuleId.EFQ: 2, RuleId.AndI: 2, RuleId.OrE: 4}
    for address, node in d.nodes():
        n = len(node.premises)
        for rule in SYSTEM_RULES[sys]:
            if rule is not node.rule and arity.get(rule, 1) == n and rule is not RuleId.Weaken:
                yield address, _replace(d, address, Derivation(rule, node.conclusion, node.premises))
        gamma, f = node.conclusion.assumptions, node.conclusion.conclusion
        if node.rule is not RuleId.EFQ:
            for g in _formula_perturbations(f):
                yield address, _replace(d, address, Derivation(node.rule, Sequent(gamma, g), node.premises))
        for extra in (r, Not(r)):
            yield address, _replace(d, address, Derivation(node.rule, Sequent(gamma | {extra}, f), node.premises))
        for a in sorted(gamma, key=str):
            if node.rule is RuleId.Assume and a == f:
                continue
            yield address, _replace(d, address, Derivation(node.rule, Sequent(gamma - {a}, f), node.premises))
            yield address, _replace(d, address, Derivation(node.rule, Sequent((gamma - {a}) | {Not(a)}, f), node.premises))


def parent(address):
    return address[:-1] if address else None


def assume_fed_derivations(sys: SystemId, pool, gamma_cap: int = 1):
    """One-step derivations whose premises are all Assume leaves, in a fixed order."""
    for rule in SYSTEM_RULES[sys]:
        if rule is RuleId.Assume:
            continue
        for inst in rule_instances(rule, pool, gamma_cap):
            if all(prem.conclusion in prem.assumptions for prem in inst.premises):
                leaves = tuple(Derivation(RuleId.Assume, prem) for prem in inst.premises)
                d = Derivation(rule, inst.conclusion, leaves)
                yield d


def interleave(groups):
    """Round-robin over several iterables so every rule is represented early."""
    for batch in itertools.zip_longest(*groups):
        for item in batch:
            if item is not None:
                yield item


def accepted(d: Derivation, sys: SystemId) -> bool:
    return not check(d, sys)
