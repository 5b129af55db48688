import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import model
from threevml.kripke import (
    ClassIIViolation,
    KripkeModel3,
    ModelClass,
    ModelError,
    ReflexivityViolation,
    TransitivityViolation,
    compress_model,
    lift_choices,
    lift_model,
    load_model,
    save_model,
    validate_class_II,
    validate_s4,
    violations,
)
from threevml.truthval import F1F2, F1T2, T1F2, T1T2, U


def test_class_II_violation_names_predecessor():
    m = model({"s": "p=U", "t": "p=T"}, "t>s")
    assert validate_class_II(m) == [ClassIIViolation("s", "p", "t")]


def test_class_II_without_u_is_clean():
    m = model({"s": "p=T q=F", "t": "p=F q=T"}, "s>t t>s s>s")
    assert validate_class_II(m) == []


def test_class_II_reflexive_u():
    assert validate_class_II(model({"s": "p=U"}, "s>s")) == []


def test_class_II_successor_direction():
    # U at the source, known at the target: understanding persists forward, fine
    assert validate_class_II(model({"s": "p=U", "t": "p=T"}, "s>t")) == []


def test_s4():
    assert validate_s4(model({"s": "p=T"})) == [ReflexivityViolation("s")]
    m = model({"s": "p=T", "t": "p=T", "u": "p=T"}, "s>s t>t u>u s>t t>u")
    assert validate_s4(m) == [TransitivityViolation("s", "t", "u")]
    assert validate_s4(model({"s": "p=T", "t": "p=T"}, "s>s t>t")) == []


def test_violations_are_order_independent():
    a = model({"s": "p=U q=U", "t": "p=T q=F", "u": "p=F q=U"}, "t>s u>s s>u")
    b = KripkeModel3(tuple(reversed(a.worlds)), frozenset(reversed(sorted(a.relation))), a.atoms, a.valuation)
    for cls in ModelClass:
        assert set(violations(a, cls)) == set(violations(b, cls))


def test_lift_model():
    m = model({"s": "p=T", "t": "p=U"}, "s>t")
    m4 = lift_model(m, {("s", "p"): T1T2, ("t", "p"): F1F2})
    assert m4.value("s", "p") == T1T2
    assert m4.value("t", "p") == F1F2
    assert compress_model(m4) == m
    with pytest.raises(ValueError, match=r"\(t, p\)"):
        lift_model(m, {("s", "p"): T1T2, ("t", "p"): F1T2})


def test_lift_choices_count():
    m = model({"s": "p=U q=T", "t": "p=U q=U"})
    choices = list(lift_choices(m))
    assert len(choices) == 2**3
    assert len({tuple(sorted(c.items())) for c in choices}) == 8
    for c in choices:
        assert compress_model(lift_model(m, c)) == m


DOC = {
    "worlds": ["s", "t"],
    "relation": [["s", "t"]],
    "atoms": ["p", "q"],
    "valuation": {"s": {"p": "T", "q": "U"}, "t": {"p": "F", "q": "T"}},
}


def test_load_save_round_trip():
    text = json.dumps(DOC, indent=2)
    m = load_model(text)
    assert m.value("s", "q") is U
    assert save_model(m) == text
    assert load_model(save_model(m)) == m


def test_load_minimal():
    m = load_model('{"worlds": ["w"], "relation": [], "atoms": ["p"], "valuation": {"w": {"p": "F"}}}')
    assert m.worlds == ("w",) and m.relation == frozenset()


def test_load_four_valued():
    doc = dict(DOC, valuation={"s": {"p": "T1T2", "q": "T1F2"}, "t": {"p": "F1T2", "q": "F1F2"}})
    m = load_model(json.dumps(doc))
    assert m.value("s", "q") == T1F2
    assert json.loads(save_model(m)) == doc


@pytest.mark.parametrize(
    "patch, message",
    [
        ({"relation": [["s", "u"]]}, "'u'"),
        ({"valuation": {"s": {"p": "T", "q": "U"}, "t": {"p": "F"}}}, r"\('t', 'q'\)"),
        ({"worlds": ["s", "t", "s"]}, "duplicate world id 's'"),
        ({"valuation": {"s": {"p": "T", "q": "X"}, "t": {"p": "F", "q": "T"}}}, "unknown truth value 'X'"),
        ({"valuation": {"s": {"p": "T", "q": "T1T2"}, "t": {"p": "F", "q": "T"}}}, "mixes"),
        ({"worlds": [], "relation": [], "valuation": {}}, "at least one world"),
    ],
)
def test_load_errors(patch, message):
    with pytest.raises(ModelError, match=message):
        load_model(json.dumps(dict(DOC, **patch)))


def test_missing_key():
    doc = dict(DOC)
    del doc["atoms"]
    with pytest.raises(ModelError, match="atoms"):
        load_model(json.dumps(doc))


vals = st.sampled_from(["T", "U", "F"])


@st.composite
def model_docs(draw):
    n = draw(st.integers(1, 3))
    worlds = [f"w{i}" for i in range(n)]
    atoms = draw(st.sampled_from([[], ["p"], ["p", "q"]]))
    pairs = [[s, t] for s in worlds for t in worlds]
    relation = [pr for pr in pairs if draw(st.booleans())]
    valuation = {w: {a: draw(vals) for a in atoms} for w in worlds}
    return {"worlds": worlds, "relation": relation, "atoms": atoms, "valuation": valuation}


@given(model_docs())
def test_save_is_identity_on_canonical_documents(doc):
    text = json.dumps(doc, indent=2)
    assert save_model(load_model(text)) == text
