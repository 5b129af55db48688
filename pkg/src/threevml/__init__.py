"""Three-valued modal logic under weak Kleene semantics.

Evaluators for the propositional fragment and for two box semantics, the
four-valued readings they compress from, natural deduction checkers for
the matching proof systems, and bounded countermodel search.
"""

from .kripke import (
    KripkeModel3,
    KripkeModel4,
    ModelClass,
    ModelError,
    lift_model,
    load_model,
    save_model,
    validate_class_II,
    validate_s4,
)
from .proof import Derivation, RuleId, Sequent, SystemId, box_image, check, rule_instances
from .search import (
    Bounds,
    correspondence_check,
    enumerate_formulas,
    enumerate_models,
    find_countermodel,
    rule_soundness_report,
)
from .semantics import SemanticsId, eval_4v, eval_I, eval_II, eval_wk, holds
from .syntax import And, Atom, Box, Formula, FormulaSyntaxError, Not, Or, atoms_of, parse, render
from .truthval import (
    Connective,
    TruthValue3,
    TruthValue4,
    compress,
    fv_apply,
    lifts,
    wk_apply,
)

__version__ = "0.1.0"

__all__ = [
    "KripkeModel3",
    "KripkeModel4",
    "ModelClass",
    "ModelError",
    "lift_model",
    "load_model",
    "save_model",
    "validate_class_II",
    "validate_s4",
    "Derivation",
    "RuleId",
    "Sequent",
    "SystemId",
    "box_image",
    "check",
    "rule_instances",
    "Bounds",
    "correspondence_check",
    "enumerate_formulas",
    "enumerate_models",
    "find_countermodel",
    "rule_soundness_report",
    "SemanticsId",
    "eval_4v",
    "eval_I",
    "eval_II",
    "eval_wk",
    "holds",
    "And",
    "Atom",
    "Box",
    "Formula",
    "FormulaSyntaxError",
    "Not",
    "Or",
    "atoms_of",
    "parse",
    "render",
    "Connective",
    "TruthValue3",
    "TruthValue4",
    "compress",
    "fv_apply",
    "lifts",
    "wk_apply",
]
