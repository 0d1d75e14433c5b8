import json
import random
import shutil

import pytest

from negtrans.algebra import BUILTIN_NAMES, builtin, models_calculus
from negtrans.calculi import Calculus, ProofError, parse_sequent
from negtrans.corpus import (
    DATA_DIR, CorpusError, build, check_entry, lemma_bank, load_index, mutate,
    semantic_crosscheck, topological_order, verify_corpus,
)
from negtrans.proofio import dumps, load
from negtrans.search import enumerate_up_to


@pytest.fixture()
def corpus_copy(tmp_path):
    d = tmp_path / "corpus"
    shutil.copytree(DATA_DIR, d)
    return d


@pytest.fixture(scope="module")
def bank_models():
    return [builtin(n) for n in BUILTIN_NAMES] + enumerate_up_to(4, min_order=2)


def test_shipped_corpus_verifies():
    rep = verify_corpus()
    assert rep.ok, rep.failed()
    assert len(rep.results) == len(load_index())
    assert all(r.seconds >= 0 for r in rep.results)


def test_build_reproduces_shipped_files(tmp_path):
    build(tmp_path)
    for p in DATA_DIR.iterdir():
        assert (tmp_path / p.name).read_text() == p.read_text()


def test_dependencies_come_first():
    order = [e.id for e in topological_order(load_index())]
    pos = {k: i for i, k in enumerate(order)}
    for e in load_index():
        assert all(pos[d] < pos[e.id] for d in e.depends_on)


def test_filter_by_calculus():
    rep = verify_corpus(calculus="ALi")
    ids = {e.id for e in load_index() if e.calculus is Calculus.ALi}
    assert {r.id for r in rep.results} == ids and rep.ok
    assert {r.id for r in verify_corpus(calculus=Calculus.IL).results} == {
        "con-contraction", "contraction-con", "cwc-from-con"}


def test_deleted_premise_in_cwc_lub_fails_only_that_entry_and_dependants(corpus_copy):
    p = corpus_copy / "cwc-lub.proof"
    pf = load(p)
    t = pf.tree
    broken = type(t)(t.name, t.conclusion, t.premises[:1])
    p.write_text(dumps(type(pf)(pf.id, pf.calculus, pf.statement, broken)))
    rep = verify_corpus(corpus_copy)
    failed = {r.id for r in rep.failed()}
    assert "cwc-lub" in failed
    assert "wrong-arity" in next(r.error for r in rep.results if r.id == "cwc-lub")
    # entries citing it fail as dependants; nothing else is touched
    users = {e.id for e in load_index() if "cwc-lub" in e.depends_on}
    closure = set(users)
    for e in topological_order(load_index()):
        if set(e.depends_on) & closure:
            closure.add(e.id)
    assert failed == {"cwc-lub"} | closure


def test_cycle_detected(corpus_copy):
    idx = json.loads((corpus_copy / "index.json").read_text())
    for item in idx:
        if item["id"] == "ali-basic-i":
            item["depends_on"] = ["ali-basic-i-bot"]
    (corpus_copy / "index.json").write_text(json.dumps(idx))
    with pytest.raises(CorpusError, match="cycle"):
        verify_corpus(corpus_copy)


def test_statement_mismatch_rejected(corpus_copy):
    idx = json.loads((corpus_copy / "index.json").read_text())
    idx[0]["statement"] = "C -> A, C -> B |- A * (A -> B)"
    (corpus_copy / "index.json").write_text(json.dumps(idx))
    rep = verify_corpus(corpus_copy)
    assert not next(r for r in rep.results if r.id == "cwc-lub").ok


def test_undeclared_citation_rejected(corpus_copy):
    idx = json.loads((corpus_copy / "index.json").read_text())
    for item in idx:
        if item["id"] == "lemma165":
            item["depends_on"] = []
    (corpus_copy / "index.json").write_text(json.dumps(idx))
    rep = verify_corpus(corpus_copy)
    r = next(r for r in rep.results if r.id == "lemma165")
    assert not r.ok and "undeclared" in r.error


def test_parse_error_reported(corpus_copy):
    (corpus_copy / "demorgan-1-lr.proof").write_text("(proof id")
    rep = verify_corpus(corpus_copy)
    assert [r.id for r in rep.failed()] == ["demorgan-1-lr"]


def test_mutations_are_rejected():
    bank = lemma_bank()
    rng = random.Random(2024)
    kinds = set()
    for e in load_index():
        tree = load(e.path).tree
        for _ in range(20):
            mutant, kind, _ = mutate(tree, rng)
            kinds.add(kind)
            with pytest.raises((ProofError, CorpusError)):
                check_entry(mutant, e, bank)
    assert kinds == {"conclusion", "add-context", "drop-context", "drop-premise", "rename-rule"}


def test_crosscheck_examples(bank_models):
    idx = {e.id: e for e in load_index()}
    hoops = [m for m in bank_models if Calculus.LLi in models_calculus(m)]
    for side in ("lr", "rl"):
        rep = semantic_crosscheck(idx[f"c-demorgan-{side}"], [builtin("L3")] + hoops)
        assert rep.ok and not rep.not_applicable
        rep = semantic_crosscheck(idx[f"ali-basic-vi-{side}"], bank_models)
        assert rep.ok and len(rep.valid) == len(bank_models)
    rep = semantic_crosscheck(idx["guess"], [builtin("P4")])
    assert rep.not_applicable == ["P4"] and rep.ok


def test_crosscheck_all_entries(bank_models):
    for e in load_index():
        rep = semantic_crosscheck(e, bank_models)
        assert rep.ok, (e.id, [v.describe() for v in rep.violations])
        assert rep.valid


def test_crosscheck_reports_violations():
    # an unsound "entry" shows up as a violation, not as an exception
    e = load_index()[0]
    fake = type(e)(e.id, Calculus.ALi, parse_sequent("A^^ |- A"), "A^^ |- A", "", (), e.path)
    rep = semantic_crosscheck(fake, [builtin("P4")])
    assert not rep.ok and rep.violations[0].assignment == {"A": "c"}
