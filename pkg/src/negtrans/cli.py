"""Command-line front end.

Exit codes: 0 for an affirmative answer, 1 when a negative result was found
(invalid formula, countermodel, rejected proof, violations), 2 for usage or
input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import kernels
from .algebra import (
    check_homomorphism, classify, dump_model, evaluate, load_model, models_calculus, satisfies,
)
from .calculi import Calculus, ProofError, check_proof, to_sequent_text
from .corpus import DATA_DIR, lemma_bank, verify_corpus
from .formula import atoms, connectives, desugar, is_negative, parse, to_text
from .proofio import load as load_proof
from .search import (
    DEFAULT_ORDER_BOUND, enumerate_pocrims, find_countermodel, random_stream,
    theory_implication_check,
)
from .translations import Scheme, translate

OK, NEGATIVE, ERROR = 0, 1, 2


class _Out:
    def __init__(self, fmt: str):
        self.json = fmt == "json"

    def emit(self, human: str, data: dict) -> None:
        if self.json:
            print(json.dumps(data, sort_keys=True, ensure_ascii=False))
        else:
            print(human)


def _models(specs):
    return [load_model(s) for s in specs]


def _assignment(text: str) -> dict[str, str]:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise ValueError(f"bad assignment {part!r}; expected VAR=element")
        k, v = (s.strip() for s in part.split("=", 1))
        out[k] = v
    return out


# ---------------------------------------------------------------------------
# Commands

def cmd_parse(a, out: _Out) -> int:
    f = parse(a.formula)
    core = desugar(f)
    text = to_text(f, full_parens=a.full_parens)
    out.emit(text if not a.desugar else to_text(core, full_parens=a.full_parens), {
        "formula": text,
        "core": to_text(core),
        "atoms": atoms(f),
        "connectives": connectives(f),
        "negative": is_negative(core) is not None,
    })
    return OK


def cmd_translate(a, out: _Out) -> int:
    scheme = Scheme.parse(a.scheme)
    f = parse(a.formula)
    g = translate(scheme, f)
    text = to_text(g, neg_sugar=not a.no_sugar)
    out.emit(text, {"scheme": scheme.value, "input": to_text(f), "output": text,
                    "negative": is_negative(g) is not None})
    return OK


def cmd_check_proof(a, out: _Out) -> int:
    pf = load_proof(a.file)
    bank = lemma_bank(a.bank) if a.bank else {}
    calc = Calculus.parse(a.calculus) if a.calculus else pf.calculus
    data = {"id": pf.id, "calculus": calc.value, "statement": to_sequent_text(pf.statement)}
    try:
        root = check_proof(pf.tree, calc, bank)
    except ProofError as e:
        data.update(ok=False, kind=e.kind, path=list(e.path), reason=e.reason)
        out.emit(f"rejected {pf.id}: {e}", data)
        return NEGATIVE
    if root != pf.statement:
        reason = f"proof concludes {to_sequent_text(root)}"
        data.update(ok=False, kind="statement-mismatch", path=[], reason=reason)
        out.emit(f"rejected {pf.id}: {reason}, file states {data['statement']}", data)
        return NEGATIVE
    data["ok"] = True
    out.emit(f"ok {pf.id} in {calc.value}: {data['statement']}", data)
    return OK


def cmd_eval(a, out: _Out) -> int:
    m = load_model(a.model)
    f = parse(a.formula)
    asg = _assignment(a.assign)
    missing = [v for v in atoms(f) if v not in asg]
    if missing:
        raise ValueError(f"no value for {', '.join(missing)}")
    v = evaluate(f, m, asg)
    out.emit(v, {"model": m.name, "formula": to_text(f), "assignment": asg, "value": v})
    return OK


def cmd_valid(a, out: _Out) -> int:
    f = parse(a.formula)
    verdicts = [satisfies(m, f) for m in _models(a.model)]
    lines = [v.describe() for v in verdicts]
    out.emit("\n".join(lines), {
        "formula": to_text(f),
        "valid": all(v.valid for v in verdicts),
        "models": [{"model": v.model, "valid": v.valid, "assignment": v.assignment,
                    "value": v.value} for v in verdicts],
    })
    return OK if all(v.valid for v in verdicts) else NEGATIVE


def cmd_classify(a, out: _Out) -> int:
    rows, data = [], []
    for m in _models(a.model):
        c = classify(m)
        calcs = [x.value for x in models_calculus(m)]
        d = {"model": m.name, "order": m.order, **c.as_dict(), "calculi": calcs}
        data.append(d)
        parts = []
        for key, wkey in (("hoop", "hoop_witness"), ("involutive", "involutive_witness"),
                          ("idempotent", "idempotent_witness")):
            if d[key]:
                parts.append(key)
            else:
                w = d[wkey]
                w = f"({w[0]},{w[1]})" if isinstance(w, list) else w
                parts.append(f"non-{key} (witness {w})")
        rows.append(f"{m.name}: " + ", ".join(parts) + f"; models {' '.join(calcs)}")
    out.emit("\n".join(rows), {"models": data})
    return OK


def cmd_enumerate(a, out: _Out) -> int:
    models = enumerate_pocrims(a.order, a.cls, dedup=not a.no_dedup, bound=a.bound)
    if a.out:
        d = Path(a.out)
        d.mkdir(parents=True, exist_ok=True)
        for m in models:
            dump_model(m, d / f"{m.name}.model")
    if a.count_only:
        out.emit(str(len(models)), {"order": a.order, "class": a.cls, "count": len(models)})
        return OK
    rows = []
    for m in models:
        c = classify(m)
        flags = [k for k, v in (("hoop", c.is_hoop), ("involutive", c.is_involutive),
                                ("idempotent", c.is_idempotent)) if v]
        rows.append(f"{m.name}: {' '.join(m.elements)} [{', '.join(flags) or '-'}]")
    out.emit("\n".join(rows) + f"\n{len(models)} model(s)",
             {"order": a.order, "class": a.cls, "count": len(models),
              "models": [{"name": m.name, **classify(m).as_dict()} for m in models]})
    return OK


def cmd_search(a, out: _Out) -> int:
    from .algebra import load_bank

    goal = parse(a.goal)
    bank = load_bank(a.bank) if a.bank else None
    cm = find_countermodel(goal, a.cls, a.max_order, bank=bank, bound=a.bound)
    if cm is None:
        out.emit("no countermodel found", {"goal": to_text(goal), "found": False})
        return OK
    out.emit(f"countermodel {cm.describe()}",
             {"goal": to_text(goal), "found": True, "model": cm.model.name,
              "assignment": cm.assignment, "value": cm.value})
    return NEGATIVE


def cmd_verify_corpus(a, out: _Out) -> int:
    rep = verify_corpus(a.dir or DATA_DIR, a.calculus)
    rows = [f"{'ok  ' if r.ok else 'FAIL'} {r.id} [{r.calculus}] {r.seconds * 1000:.1f} ms"
            + ("" if r.ok else f": {r.error}") for r in rep.results]
    rows.append(f"{len(rep.results) - len(rep.failed())}/{len(rep.results)} entries verified")
    out.emit("\n".join(rows), {"ok": rep.ok, "entries": [
        {"id": r.id, "calculus": r.calculus, "ok": r.ok, "error": r.error,
         "ms": round(r.seconds * 1000, 3)} for r in rep.results]})
    return OK if rep.ok else NEGATIVE


def cmd_theory_check(a, out: _Out) -> int:
    premise, goal = load_model(a.premise_model), load_model(a.goal_model)
    sample = random_stream(a.seed, a.samples, a.max_connectives)
    sample += [parse(x) for x in a.extra]
    rep = theory_implication_check(premise, goal, a.scheme, sample)
    rows = [f"{rep.premise} -> {rep.goal} under {rep.scheme}: checked {rep.checked}, "
            f"premise-valid {rep.premise_valid}, violations {len(rep.violations)}"]
    rows += [f"  {to_text(f)}: {v.describe()}" for f, v in rep.violations[:a.show]]
    out.emit("\n".join(rows), {
        "premise": rep.premise, "goal": rep.goal, "scheme": rep.scheme,
        "checked": rep.checked, "premise_valid": rep.premise_valid,
        "violations": [{"formula": to_text(f), "assignment": v.assignment, "value": v.value}
                       for f, v in rep.violations],
    })
    return OK if rep.ok else NEGATIVE


def cmd_homomorphism(a, out: _Out) -> int:
    src, dst = load_model(a.source), load_model(a.target)
    h = _assignment(a.map)
    rep = check_homomorphism(h, src, dst)
    msg = "homomorphism" if rep.ok else f"fails on {rep.operation} at {rep.witness}"
    out.emit(f"{src.name} -> {dst.name}: {msg}",
             {"ok": rep.ok, "operation": rep.operation,
              "witness": list(rep.witness) if rep.witness else None})
    return OK if rep.ok else NEGATIVE


# ---------------------------------------------------------------------------
# Argument parsing

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="negtrans",
                                description="Negative translations in substructural logics.")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--backend", choices=("cython", "python"),
                   help="evaluation kernel (default: compiled when available)")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("parse", help="parse and pretty-print a formula")
    s.add_argument("formula")
    s.add_argument("--full-parens", action="store_true")
    s.add_argument("--desugar", action="store_true", help="print the core-connective form")
    s.set_defaults(run=cmd_parse)

    s = sub.add_parser("translate", help="apply a negative translation")
    s.add_argument("--scheme", required=True)
    s.add_argument("--no-sugar", action="store_true", help="write A -> bot instead of A^")
    s.add_argument("formula")
    s.set_defaults(run=cmd_translate)

    s = sub.add_parser("check-proof", help="check a proof file")
    s.add_argument("file")
    s.add_argument("--bank", help="corpus directory whose entries may be cited")
    s.add_argument("--calculus", help="override the calculus named in the file")
    s.set_defaults(run=cmd_check_proof)

    s = sub.add_parser("eval", help="evaluate a formula under an assignment")
    s.add_argument("--model", required=True)
    s.add_argument("--assign", default="")
    s.add_argument("formula")
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("valid", help="exhaustive validity in one or more models")
    s.add_argument("--model", required=True, action="append")
    s.add_argument("formula")
    s.set_defaults(run=cmd_valid)

    s = sub.add_parser("classify", help="hoop / involutive / idempotent status")
    s.add_argument("--model", required=True, action="append")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("enumerate", help="pocrims of a given order up to isomorphism")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--class", dest="cls", default="pocrim")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--out", help="write each model to DIR/<name>.model")
    s.add_argument("--no-dedup", action="store_true")
    s.add_argument("--bound", type=int, default=DEFAULT_ORDER_BOUND)
    s.set_defaults(run=cmd_enumerate)

    s = sub.add_parser("search", help="find a countermodel")
    s.add_argument("--goal", required=True)
    s.add_argument("--class", dest="cls", default="pocrim")
    s.add_argument("--max-order", type=int, default=4)
    s.add_argument("--bank", help="directory of model files to scan instead of enumerating")
    s.add_argument("--bound", type=int, default=DEFAULT_ORDER_BOUND)
    s.set_defaults(run=cmd_search)

    s = sub.add_parser("verify-corpus", help="check a proof corpus")
    s.add_argument("dir", nargs="?", help="corpus directory (default: the shipped corpus)")
    s.add_argument("--calculus")
    s.set_defaults(run=cmd_verify_corpus)

    s = sub.add_parser("theory-check", help="finite check that a translation maps Th(M1) into Th(M2)")
    s.add_argument("--premise-model", required=True)
    s.add_argument("--goal-model", required=True)
    s.add_argument("--scheme", required=True)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-connectives", type=int, default=8)
    s.add_argument("--extra", action="append", default=[], help="add a formula to the sample")
    s.add_argument("--show", type=int, default=5, help="violations to list")
    s.set_defaults(run=cmd_theory_check)

    s = sub.add_parser("homomorphism", help="check a map between models")
    s.add_argument("--source", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--map", required=True, help="x=y,... over source elements")
    s.set_defaults(run=cmd_homomorphism)
    return p


def main(argv=None) -> int:
    p = build_parser()
    try:
        a = p.parse_args(argv)
    except SystemExit as e:
        return ERROR if e.code else OK
    if a.backend:
        try:
            kernels.use(a.backend)
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return ERROR
    try:
        return a.run(a, _Out(a.format))
    except (ValueError, KeyError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
