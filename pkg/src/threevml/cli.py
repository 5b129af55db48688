"""Command-line entry point.

Exit codes: 0 success or a positive verdict, 1 a negative verdict (model
violates its class, proof rejected, countermodel found, selftest failure),
2 usage, file or parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .kripke import KripkeModel4, ModelClass, ModelError, load_model, model_to_dict, violations
from .proof import ProofFormatError, RuleId, SystemId, check, load_derivation
from .search import (
    Bounds,
    correspondence_check,
    find_countermodel,
    homomorphism_check,
    persistence_check,
    rule_soundness_report,
)
from .semantics import EvaluationError, ModelEvaluator, SemanticsId, eval_wk
from .syntax import FormulaSyntaxError, parse
from .truthval import ALL3, ALL4, CONJ_TABLE, DISJ_TABLE, NEG_TABLE, TruthValue4, compress

EPILOG = "exit status: 0 ok, 1 negative verdict, 2 usage or input error"


class UsageError(Exception):
    pass


def table_text() -> str:
    """The weak Kleene tables and the compression map in a fixed layout."""
    lines = ["NOT", "A | ~A", "--+---"]
    lines += [f"{a} | {NEG_TABLE[a]}" for a in ALL3]
    for name, table, sym in (("AND", CONJ_TABLE, "&"), ("OR", DISJ_TABLE, "|")):
        lines += ["", name, f"A {sym} B | T U F", "------+------"]
        for a in ALL3:
            lines.append(f"{a}     | " + " ".join(str(table[a, b]) for b in ALL3))
    lines += ["", "COMPRESS"]
    lines += [f"{v} -> {compress(v)}" for v in ALL4]
    return "\n".join(lines) + "\n"


def _table_json() -> dict:
    return {
        "neg": {a.value: NEG_TABLE[a].value for a in ALL3},
        "conj": {a.value: {b.value: CONJ_TABLE[a, b].value for b in ALL3} for a in ALL3},
        "disj": {a.value: {b.value: DISJ_TABLE[a, b].value for b in ALL3} for a in ALL3},
        "compress": {v.name: compress(v).value for v in ALL4},
    }


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _formula(text: str):
    try:
        return parse(text)
    except FormulaSyntaxError as e:
        raise UsageError(f"cannot parse {text!r}: {e}") from None


def _model(path: str):
    try:
        return load_model(_read(path))
    except ModelError as e:
        raise UsageError(f"{path}: {e}") from None


def _emit(args, text: str, doc: dict) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print(text)


_CLASS_CHOICES = {"all": ModelClass.ALL, "II": ModelClass.CLASS_II, "s4": ModelClass.S4, "s4-II": ModelClass.S4_CLASS_II}


def cmd_eval(args) -> int:
    m = _model(args.model)
    f = _formula(args.formula)
    sem = SemanticsId(args.semantics)
    if args.world not in m.worlds:
        raise UsageError(f"unknown world {args.world!r}")
    try:
        if sem is SemanticsId.WK:
            if isinstance(m, KripkeModel4):
                raise UsageError("weak Kleene evaluation needs a three-valued model")
            value = eval_wk(m.valuation[args.world], f)
        else:
            value = ModelEvaluator(m, sem).value(args.world, f)
    except EvaluationError as e:
        raise UsageError(str(e)) from None
    wire = value.name if isinstance(value, TruthValue4) else value.value
    _emit(args, str(value), {"world": args.world, "semantics": sem.value, "formula": args.formula, "value": wire})
    return 0


def cmd_table(args) -> int:
    if args.json:
        print(json.dumps(_table_json(), indent=2))
    else:
        sys.stdout.write(table_text())
    return 0


def cmd_check_model(args) -> int:
    m = _model(args.file)
    cls = _CLASS_CHOICES[args.model_class]
    found = violations(m, cls)
    text = "OK" if not found else "\n".join(str(v) for v in found)
    _emit(args, text, {"class": cls.value, "ok": not found, "violations": [str(v) for v in found]})
    return 0 if not found else 1


def cmd_check_proof(args) -> int:
    try:
        d = load_derivation(_read(args.file))
    except ProofFormatError as e:
        raise UsageError(f"{args.file}: {e}") from None
    errors = check(d, SystemId(args.system))
    text = "OK" if not errors else "REJECTED\n" + "\n".join(str(e) for e in errors)
    doc = {
        "system": args.system,
        "ok": not errors,
        "errors": [{"address": list(e.address), "rule": e.rule.value, "message": e.message} for e in errors],
    }
    _emit(args, text, doc)
    return 0 if not errors else 1


def cmd_countermodel(args) -> int:
    sem = SemanticsId(args.semantics)
    gamma = [_formula(a) for a in args.assume]
    goal = _formula(args.goal)
    atoms = tuple(a for a in (args.atoms or "").split(",") if a)
    cls = _CLASS_CHOICES[args.model_class] if args.model_class else ModelClass.ALL
    try:
        b = Bounds(args.max_worlds, atoms, 0, cls) if atoms else None
        if b is not None:
            print(f"searching {b.model_count} candidate models", file=sys.stderr)
        found = find_countermodel(gamma, goal, sem, b)
    except (ValueError, EvaluationError) as e:
        raise UsageError(str(e)) from None
    if found is None:
        _emit(args, "no countermodel up to bounds (inconclusive)", {"found": False})
        return 0
    m, w = found
    doc = {"found": True, "world": w, "model": model_to_dict(m)}
    _emit(args, f"countermodel at world {w}:\n" + json.dumps(model_to_dict(m), indent=2), doc)
    return 1


def cmd_selftest(args) -> int:
    b = Bounds(args.max_worlds, tuple(args.atoms.split(",")), args.depth)
    lines, ok = [], True
    bad = homomorphism_check()
    ok &= not bad
    lines.append(f"homomorphism: {len(bad)} mismatches")
    for sys_id in SystemId:
        r = rule_soundness_report(sys_id, b, pool_depth=args.pool_depth)
        ok &= r.ok
        total = sum(r.violating_instances.values())
        lines.append(f"soundness {sys_id.value}: {sum(r.instances.values())} instances, {total} violating")
    misuse = rule_soundness_report(SystemId.SYS_II, b, pool_depth=args.pool_depth, model_class=ModelClass.ALL)
    teeth = misuse.violations(RuleId.BoxI2_II)
    ok &= teeth > 0
    lines.append(f"misuse check (BoxI2_II off class II): {teeth} violating (expected > 0)")
    corr = correspondence_check(b, jobs=args.jobs)
    ok &= corr.ok
    lines.append(corr.summary())
    pers = persistence_check(b)
    ok &= not pers
    lines.append(f"persistence: {len(pers)} violations")
    lines.append("PASS" if ok else "FAIL")
    _emit(args, "\n".join(lines), {"ok": bool(ok), "lines": lines})
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="threevml", description="Evaluate, check and search three-valued modal logic.", epilog=EPILOG)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula at a pointed model", epilog=EPILOG)
    p.add_argument("--model", required=True)
    p.add_argument("--world", required=True)
    p.add_argument("--semantics", required=True, choices=[s.value for s in SemanticsId])
    p.add_argument("formula")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", parents=[common], help="print truth tables and the compression map", epilog=EPILOG)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("check-model", parents=[common], help="check a model against a frame class", epilog=EPILOG)
    p.add_argument("--class", dest="model_class", default="all", choices=list(_CLASS_CHOICES))
    p.add_argument("file")
    p.set_defaults(func=cmd_check_model)

    p = sub.add_parser("check-proof", parents=[common], help="check a derivation", epilog=EPILOG)
    p.add_argument("--system", required=True, choices=[s.value for s in SystemId])
    p.add_argument("file")
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("countermodel", parents=[common], help="search for a countermodel", epilog=EPILOG)
    p.add_argument("--semantics", required=True, choices=["wk", "I", "II"])
    p.add_argument("--max-worlds", type=int, default=2)
    p.add_argument("--atoms", default=None, help="comma separated; defaults to the atoms of the problem")
    p.add_argument("--class", dest="model_class", choices=["II", "s4", "s4-II"])
    p.add_argument("--assume", action="append", default=[])
    p.add_argument("goal")
    p.set_defaults(func=cmd_countermodel)

    p = sub.add_parser("selftest", parents=[common], help="run the soundness and correspondence sweeps", epilog=EPILOG)
    p.add_argument("--max-worlds", type=int, default=2)
    p.add_argument("--atoms", default="p,q")
    p.add_argument("--depth", type=int, default=2, help="formula depth for correspondence and persistence")
    p.add_argument("--pool-depth", type=int, default=1, help="metavariable pool depth for the soundness sweep")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"threevml {args.command}: error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
