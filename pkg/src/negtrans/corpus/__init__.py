"""Proof corpus: on-disk layout, batch verification and semantic cross-checks.

A corpus directory holds one ``<id>.proof`` file per entry plus
``index.json``, a list of objects with keys ``id``, ``calculus``,
``statement``, ``paper_ref`` and ``depends_on``.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

from ..algebra import PocrimTable, Verdict, models_calculus, sequent_verdict
from ..calculi import (
    Calculus, Lemma, ProofError, ProofTree, Rule, Sequent, check_proof,
    iter_nodes, lemma_ids, parse_sequent, replace_at, sequent_to_formula, to_sequent_text,
)
from ..formula import Atom, Tensor
from ..proofio import ProofFile, ProofFileError, dumps, load

DATA_DIR = Path(__file__).with_name("data")
INDEX_NAME = "index.json"


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    calculus: Calculus
    statement: Sequent
    statement_text: str
    paper_ref: str
    depends_on: tuple[str, ...]
    path: Path

    def formula(self):
        return sequent_to_formula(self.statement)


def load_index(directory: str | Path = DATA_DIR) -> list[CorpusEntry]:
    directory = Path(directory)
    try:
        raw = json.loads((directory / INDEX_NAME).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise CorpusError(f"cannot read {directory / INDEX_NAME}: {e}") from None
    out = []
    seen = set()
    for item in raw:
        eid = item["id"]
        if eid in seen:
            raise CorpusError(f"duplicate entry {eid!r}")
        seen.add(eid)
        out.append(CorpusEntry(
            id=eid,
            calculus=Calculus.parse(item["calculus"]),
            statement=parse_sequent(item["statement"]),
            statement_text=item["statement"],
            paper_ref=item.get("paper_ref", ""),
            depends_on=tuple(item.get("depends_on", ())),
            path=directory / f"{eid}.proof",
        ))
    return out


def topological_order(entries: Sequence[CorpusEntry]) -> list[CorpusEntry]:
    """Entries ordered so dependencies come first; index order breaks ties."""
    by_id = {e.id: e for e in entries}
    for e in entries:
        for d in e.depends_on:
            if d not in by_id:
                raise CorpusError(f"{e.id} depends on unknown entry {d!r}")
    state: dict[str, int] = {}
    out: list[CorpusEntry] = []

    def visit(e: CorpusEntry, trail: list[str]):
        s = state.get(e.id)
        if s == 2:
            return
        if s == 1:
            cycle = trail[trail.index(e.id):] + [e.id]
            raise CorpusError("dependency cycle: " + " -> ".join(cycle))
        state[e.id] = 1
        for d in e.depends_on:
            visit(by_id[d], trail + [e.id])
        state[e.id] = 2
        out.append(e)

    for e in entries:
        visit(e, [])
    return out


# ---------------------------------------------------------------------------
# Checking

def check_entry(tree: ProofTree, entry: CorpusEntry, bank: dict[str, Lemma]) -> None:
    """Raise ``ProofError``/``CorpusError`` unless ``tree`` proves ``entry`` in its calculus."""
    cited = set(lemma_ids(tree))
    undeclared = cited - set(entry.depends_on)
    if undeclared:
        raise CorpusError(f"cites undeclared lemmas: {', '.join(sorted(undeclared))}")
    root = check_proof(tree, entry.calculus, bank)
    if root != entry.statement:
        raise CorpusError(f"proof concludes {to_sequent_text(root)}, "
                          f"index states {to_sequent_text(entry.statement)}")


@dataclass
class EntryResult:
    id: str
    calculus: str
    ok: bool
    error: str | None = None
    seconds: float = 0.0


@dataclass
class CorpusReport:
    results: list[EntryResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failed(self) -> list[EntryResult]:
        return [r for r in self.results if not r.ok]


def verify_corpus(directory: str | Path = DATA_DIR, calculus: Calculus | str | None = None,
                  ) -> CorpusReport:
    """Check every entry in dependency order.

    With ``calculus`` only entries stated in that calculus are reported;
    their dependencies are still checked (silently) so citations resolve.
    An entry whose dependency failed fails too.
    """
    if isinstance(calculus, str):
        calculus = Calculus.parse(calculus)
    entries = topological_order(load_index(directory))
    if calculus is not None:
        wanted = {e.id for e in entries if e.calculus is calculus}
        needed = set(wanted)
        by_id = {e.id: e for e in entries}
        stack = list(wanted)
        while stack:
            for d in by_id[stack.pop()].depends_on:
                if d not in needed:
                    needed.add(d)
                    stack.append(d)
        entries = [e for e in entries if e.id in needed]
    else:
        wanted = {e.id for e in entries}
    bank: dict[str, Lemma] = {}
    report = CorpusReport()
    for e in entries:
        t0 = time.perf_counter()
        err = None
        missing = [d for d in e.depends_on if d not in bank]
        if missing:
            err = f"dependency failed: {', '.join(missing)}"
        else:
            try:
                pf = load(e.path)
                if pf.id != e.id or pf.calculus is not e.calculus or pf.statement != e.statement:
                    raise CorpusError("proof file header disagrees with the index")
                check_entry(pf.tree, e, bank)
            except (OSError, ProofFileError, ProofError, CorpusError, ValueError) as ex:
                err = str(ex)
        if err is None:
            bank[e.id] = Lemma(e.id, e.formula(), e.calculus)
        if e.id in wanted:
            report.results.append(EntryResult(e.id, e.calculus.value, err is None, err,
                                              time.perf_counter() - t0))
    return report


def lemma_bank(directory: str | Path = DATA_DIR) -> dict[str, Lemma]:
    """All entries of a corpus as citable lemmas (without re-checking them)."""
    return {e.id: Lemma(e.id, e.formula(), e.calculus) for e in load_index(directory)}


# ---------------------------------------------------------------------------
# Semantics

@dataclass
class CrosscheckReport:
    entry: str
    valid: list[str] = field(default_factory=list)
    not_applicable: list[str] = field(default_factory=list)
    violations: list[Verdict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def semantic_crosscheck(entry: CorpusEntry, bank: Iterable[PocrimTable]) -> CrosscheckReport:
    """The entry's sequent must hold in every bank model that models its calculus."""
    rep = CrosscheckReport(entry.id)
    for m in bank:
        if entry.calculus not in models_calculus(m):
            rep.not_applicable.append(m.name)
            continue
        v = sequent_verdict(m, entry.statement)
        if v.valid:
            rep.valid.append(m.name)
        else:
            rep.violations.append(v)
    return rep


# ---------------------------------------------------------------------------
# Mutation

MUTATIONS = ("conclusion", "add-context", "drop-context", "drop-premise", "rename-rule")
_SAME_ARITY = {"LollyE": ("TensorI", "TensorE"), "TensorI": ("LollyE", "TensorE"),
               "TensorE": ("LollyE", "TensorI")}
_FRESH = Atom("Zmut")


def _set_conclusion(node: ProofTree, s: Sequent) -> ProofTree:
    return replace(node, conclusion=s)


def mutate(tree: ProofTree, rng: random.Random) -> tuple[ProofTree, str, tuple[int, ...]]:
    """Apply one random single-node mutation; returns the tree, its kind and the node path."""
    nodes = list(iter_nodes(tree))
    path, node = nodes[rng.randrange(len(nodes))]
    kinds = list(MUTATIONS)
    if not isinstance(node, Rule):
        kinds = [k for k in kinds if k not in ("drop-premise", "rename-rule")]
    elif node.name not in _SAME_ARITY:
        kinds.remove("rename-rule")
    if not node.conclusion.context:
        kinds.remove("drop-context")
    kind = rng.choice(kinds)
    s = node.conclusion
    if kind == "conclusion":
        new = _set_conclusion(node, Sequent(s.context, Tensor(s.conclusion, _FRESH)))
    elif kind == "add-context":
        new = _set_conclusion(node, s.add(_FRESH))
    elif kind == "drop-context":
        ctx = list(s.context)
        del ctx[rng.randrange(len(ctx))]
        new = _set_conclusion(node, Sequent(ctx, s.conclusion))
    elif kind == "drop-premise":
        prems = list(node.premises)
        del prems[rng.randrange(len(prems))]
        new = Rule(node.name, s, tuple(prems))
    else:
        new = Rule(rng.choice(_SAME_ARITY[node.name]), s, node.premises)
    return replace_at(tree, path, new), kind, path


# ---------------------------------------------------------------------------
# Building the shipped corpus

def build(directory: str | Path = DATA_DIR) -> list[Path]:
    """Write the authored derivations and their index into ``directory``."""
    from .proofs import ENTRIES

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for old in directory.glob("*.proof"):
        old.unlink()
    written = []
    index = []
    for a in ENTRIES:
        pf = ProofFile(a.id, a.calculus, a.sequent, a.tree)
        path = directory / f"{a.id}.proof"
        path.write_text(dumps(pf))
        written.append(path)
        index.append({"id": a.id, "calculus": a.calculus.value, "statement": a.statement,
                      "paper_ref": a.ref, "depends_on": list(a.depends_on)})
    (directory / INDEX_NAME).write_text(json.dumps(index, indent=2, ensure_ascii=False) + "\n")
    return written


__all__ = [
    "CorpusEntry", "CorpusError", "CorpusReport", "CrosscheckReport", "DATA_DIR", "EntryResult",
    "MUTATIONS", "build", "check_entry", "load_index", "mutate", "semantic_crosscheck",
    "topological_order", "verify_corpus",
]
