"""Acceptance gate.

Each test carries an ``acceptance`` marker; conftest prints one PASS/FAIL
line per criterion at the end of the run.  Time limits are asserted inside
the tests, so a slow pass counts as a failure.
"""

import itertools
import random
import time

import pytest

from helpers import GOLDENS, accepted, assume_fed_derivations, interleave, mutations, parent
from threevml.kripke import ModelClass
from threevml.proof import SYSTEM_RULES, RuleId, SystemId, check
from threevml.search import (
    Bounds,
    correspondence_check,
    enumerate_formulas,
    find_countermodel,
    homomorphism_check,
    persistence_check,
    rule_soundness_report,
)
from threevml.semantics import SemanticsId, eval_wk
from threevml.syntax import Atom, Box, Not, Or
from threevml.truthval import ALL3, ALL4, F, T, U, Connective, compress, fv_apply, wk_apply

BOUNDS = Bounds(max_worlds=2, atoms=("p", "q"), max_depth=2)
POOL_DEPTH = 1


class timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


# weak Kleene tables written out by hand; rows and columns in T U F order
EXPECTED = {
    Connective.CONJ: ["T U F", "U U U", "F U F"],
    Connective.DISJ: ["T U T", "U U U", "T U F"],
    Connective.NEG: ["F", "U", "T"],
}


@pytest.mark.acceptance(1, "truth tables match the hand-written weak Kleene tables (21 entries)")
def test_truth_tables():
    with timer() as t:
        by_name = {v.value: v for v in ALL3}
        entries = 0
        for c, rows in EXPECTED.items():
            for a, row in zip(ALL3, rows):
                cells = [by_name[x] for x in row.split()]
                if c is Connective.NEG:
                    assert wk_apply(c, a) is cells[0]
                    entries += 1
                else:
                    for b, want in zip(ALL3, cells):
                        assert wk_apply(c, a, b) is want, (c, a, b)
                        entries += 1
    assert entries == 21
    assert t.seconds < 1


@pytest.mark.acceptance(2, "compression is a homomorphism (36 cases)")
def test_homomorphism():
    with timer() as t:
        cases = 0
        for a in ALL4:
            assert compress(fv_apply(Connective.NEG, a)) is wk_apply(Connective.NEG, compress(a))
            cases += 1
        for c in (Connective.CONJ, Connective.DISJ):
            for a, b in itertools.product(ALL4, repeat=2):
                assert compress(fv_apply(c, a, b)) is wk_apply(c, compress(a), compress(b))
                cases += 1
        assert homomorphism_check() == []
    assert cases == 36
    assert t.seconds < 1


@pytest.mark.acceptance(3, "no tautology: all-U valuation gives U to every box-free formula up to depth 3")
def test_no_tautology():
    with timer() as t:
        formulas = enumerate_formulas(["p", "q"], 3, modal=False)
        all_u = {"p": U, "q": U}
        exceptions = [f for f in formulas if eval_wk(all_u, f) is not U]
    print(f"{len(formulas)} formulas checked in {t.seconds:.2f}s")
    assert len(formulas) > 100_000
    assert exceptions == []
    assert t.seconds < 10


def _sound(sys_id):
    with timer() as t:
        report = rule_soundness_report(sys_id, BOUNDS, pool_depth=POOL_DEPTH)
    print(report.summary())
    print(f"{t.seconds:.1f}s")
    return report, t.seconds


@pytest.mark.acceptance(4, "System I is sound at 2 worlds, atoms p q, pool depth 1")
def test_soundness_I():
    report, seconds = _sound(SystemId.SYS_I)
    assert report.pointed_models == 2610
    assert set(report.instances) == set(SYSTEM_RULES[SystemId.SYS_I])
    assert report.ok, report.summary()
    assert seconds < 300


@pytest.mark.acceptance(5, "System II is sound over class-II models; misuse over all models is caught")
def test_soundness_II_and_misuse():
    report, seconds = _sound(SystemId.SYS_II)
    assert report.model_class is ModelClass.CLASS_II
    assert report.ok, report.summary()
    with timer() as t:
        misuse = rule_soundness_report(
            SystemId.SYS_II, BOUNDS, pool_depth=POOL_DEPTH, model_class=ModelClass.ALL, rules=[RuleId.BoxI2_II]
        )
    print(f"misuse: {misuse.violations(RuleId.BoxI2_II)} of {misuse.instances[RuleId.BoxI2_II]} BoxI2_II instances violated")
    print(misuse.examples[RuleId.BoxI2_II][0])
    assert misuse.violations(RuleId.BoxI2_II) >= 1
    assert seconds + t.seconds < 300


@pytest.mark.acceptance(6, "S4 variants are sound over S4 and S4 class-II models")
def test_soundness_S4():
    for sys_id, cls in ((SystemId.SYS_I_S4, ModelClass.S4), (SystemId.SYS_II_S4, ModelClass.S4_CLASS_II)):
        report, _ = _sound(sys_id)
        assert report.model_class is cls
        for rule in (RuleId.BoxIprime_S4, RuleId.BoxI1prime_S4, RuleId.BoxE_S4):
            if rule in SYSTEM_RULES[sys_id]:
                assert report.instances[rule] > 0
        assert report.ok, report.summary()


@pytest.mark.acceptance(7, "four-valued readings compress to Semantics I and II (all lifts, depth 2)")
def test_correspondence():
    with timer() as t:
        report = correspondence_check(BOUNDS)
    print(report.summary(), f"in {t.seconds:.1f}s")
    assert report.models == 1314
    assert report.lifted_models == 4128
    assert report.ok, report.mismatches[:3]
    assert t.seconds < 300


@pytest.mark.acceptance(8, "persistence of non-U values along the relation in class-II models")
def test_persistence():
    violations = persistence_check(BOUNDS)
    assert violations == []


@pytest.mark.acceptance(9, "proof checker accepts the goldens and rejects 20 mutations of each")
def test_proof_goldens_and_mutations():
    rng = random.Random(20)
    for name, make in GOLDENS.items():
        d = make()
        assert accepted(d, SystemId.SYS_I), (name, check(d, SystemId.SYS_I))
        every = list(mutations(d))
        assert len(every) >= 20
        for address, mutant in rng.sample(every, 20):
            errors = check(mutant, SystemId.SYS_I)
            assert errors, (name, address, mutant)
            hits = {e.address for e in errors}
            assert address in hits or parent(address) in hits, (name, address, hits)
        # the remaining mutants are rejected too
        assert all(check(m, SystemId.SYS_I) for _, m in every)


@pytest.mark.acceptance(10, "countermodel goldens for {p} |- []p and |- p | ~p")
def test_countermodel_goldens():
    p = Atom("p")
    m, w = find_countermodel([p], Box(p), SemanticsId.SEM_I)
    assert w == "w0"
    assert m.worlds == ("w0", "w1")
    assert m.relation == {("w0", "w1")}
    assert m.valuation == {"w0": {"p": T}, "w1": {"p": F}}
    assert find_countermodel([p], Box(p), SemanticsId.SEM_I) == (m, w)

    m, w = find_countermodel([], Or(p, Not(p)), SemanticsId.WK)
    assert (m.worlds, m.relation, w) == (("w0",), frozenset(), "w0")
    assert m.valuation == {"w0": {"p": U}}
    assert find_countermodel([], Or(p, Not(p)), SemanticsId.WK) == (m, w)


@pytest.mark.acceptance(11, "50 accepted derivations have no countermodel within default bounds")
def test_end_to_end_duality():
    pool = enumerate_formulas(["p", "q"], 1)
    per_rule = {}
    for d in assume_fed_derivations(SystemId.SYS_I, pool):
        per_rule.setdefault(d.rule, []).append(d)
    candidates = [make() for make in GOLDENS.values()]
    candidates += list(interleave(per_rule.values()))
    chosen = []
    for d in candidates:
        if accepted(d, SystemId.SYS_I) and d.conclusion not in {c.conclusion for c in chosen}:
            chosen.append(d)
        if len(chosen) == 50:
            break
    assert len(chosen) == 50
    assert len({d.rule for d in chosen}) >= 10
    for d in chosen:
        s = d.conclusion
        found = find_countermodel(s.assumptions, s.conclusion, SemanticsId.SEM_I)
        assert found is None, (str(s), found)
