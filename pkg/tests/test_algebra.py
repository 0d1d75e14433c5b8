import itertools

import pytest
from hypothesis import given, strategies as st

from negtrans.algebra import (
    BUILTIN_NAMES, Q6_TO_Q4, ModelFileError, PocrimLawError, axiom_schema_valid, builtin,
    check_homomorphism, chain, classify, dumps_model, eval_all, eval_index, evaluate, load_bank, load_model,
    loads_model, models_calculus, residual_table, satisfies, sequent_verdict, validate_pocrim,
)
from negtrans.calculi import Calculus
from negtrans.corpus import load_index
from negtrans.formula import parse_core, random_formula
from negtrans.kernels import backends
from negtrans.translations import translate

from tables import Ops, de_morgan_pairs, delta_hom_failures

C = parse_core


def test_builtins_validate():
    for name in BUILTIN_NAMES:
        m = builtin(name)
        again = validate_pocrim(name, m.elements, m.elements[m.unit], m.elements[m.zero],
                                m.leq, m.mult, m.imp)
        assert (again.imp == m.imp).all()
    assert builtin("L3").order == 3 and builtin("Q6").order == 6


def test_builtin_table_entries():
    assert builtin("Q4").times("p", "q") == "0"
    assert builtin("Q6").implies("s", "t") == "r"
    assert builtin("P4").implies("c", "0") == "b"


def test_unknown_builtin():
    with pytest.raises(ValueError):
        builtin("Z9")


def test_perturbed_l3_fails():
    # a * a = a while a -> 0 stays a
    with pytest.raises(PocrimLawError) as e:
        chain("bad", ["1", "a", "0"], ["1 a 0", "a a 0", "0 0 0"], ["1 a 0", "1 1 a", "1 1 1"])
    assert e.value.law == "residuation"


@pytest.mark.parametrize("mult,law", [
    (["1 a 0", "a 0 0", "0 a 0"], "commutativity"),
    (["1 a 0", "a a 0", "0 0 a"], "monotonicity"),
    (["a a 0", "a 0 0", "0 0 0"], "unit"),
])
def test_law_failures(mult, law):
    with pytest.raises(PocrimLawError) as e:
        chain("bad", ["1", "a", "0"], mult)
    assert e.value.law == law


def test_order_laws():
    with pytest.raises(PocrimLawError) as e:
        validate_pocrim("x", ["1", "0"], "1", "0", [[1, 1], [1, 1]], [[0, 1], [1, 1]])
    assert e.value.law == "antisymmetry"
    with pytest.raises(PocrimLawError):
        validate_pocrim("x", ["1", "0"], "1", "1", [[1, 0], [1, 1]], [[0, 1], [1, 1]])


def test_one_element_structure():
    m = validate_pocrim("T", ["1"], "1", "1", [[1]], [[0]])
    assert m.implies("1", "1") == "1"


def test_classification():
    c = classify(builtin("L3"))
    assert c.is_hoop and c.is_involutive and not c.is_idempotent
    assert c.idempotent_witness == "a"
    c = classify(builtin("P4"))
    assert (c.is_hoop, c.hoop_witness) == (False, ("b", "c"))
    assert (c.is_involutive, c.involutive_witness) == (False, "c")
    assert builtin("P4").delta("c") == "b"
    c = classify(builtin("Q4"))
    assert (c.is_hoop, c.hoop_witness, c.is_involutive) == (False, ("p", "q"), True)
    c = classify(builtin("Q6"))
    assert not c.is_hoop and not c.is_involutive
    assert c.involutive_witness == "r" and builtin("Q6").delta("r") == "1"


def test_hoop_witness_values_in_p4():
    m = builtin("P4")
    assert m.times("b", m.implies("b", "c")) == "0"
    assert m.times("c", m.implies("c", "b")) == "c"


def test_eval_examples():
    p4 = builtin("P4")
    assert evaluate(C("P^^"), p4, {"P": "c"}) == "b"
    assert evaluate(translate("glivenko", C("P^^ -> P")), p4, {"P": "c"}) == "b"
    for name in BUILTIN_NAMES:
        m = builtin(name)
        assert set(eval_all(C("P -> P"), m)[1]) == {m.unit}


def test_eval_missing_variable():
    with pytest.raises(KeyError):
        evaluate(C("P * Q"), builtin("L3"), {"P": "a"})


def test_satisfies_examples():
    assert satisfies(builtin("L3"), C("P * (P -> Q) -> Q * (Q -> P)")).valid
    v = satisfies(builtin("P4"), translate("glivenko", C("P^^ -> P")))
    assert (v.valid, v.assignment, v.value) == (False, {"P": "c"}, "b")
    v = satisfies(builtin("Q6"), translate("gentzen", C("(P * Q)^^ -> P * Q")))
    assert (v.assignment, v.value) == ({"P": "s", "Q": "s"}, "r")
    assert evaluate(translate("gentzen", C("(P * Q)^^ -> P * Q")), builtin("Q6"),
                    {"P": "s", "Q": "t"}) == "r"


def test_schema_validity():
    assert axiom_schema_valid(builtin("L3"), "DNE")
    assert not axiom_schema_valid(builtin("P4"), "CWC")
    assert not axiom_schema_valid(builtin("Q6"), "DNE")
    assert not axiom_schema_valid(builtin("L3"), "CON")


def test_models_calculus():
    C_ = Calculus
    assert models_calculus(builtin("L3")) == [C_.ALi, C_.ALc, C_.LLi, C_.LLc]
    assert models_calculus(builtin("P4")) == [C_.ALi]
    assert models_calculus(builtin("Q4")) == [C_.ALi, C_.ALc]
    assert models_calculus(builtin("Q6")) == [C_.ALi]


def test_homomorphisms():
    assert check_homomorphism(Q6_TO_Q4, builtin("Q6"), builtin("Q4")).ok
    l3 = builtin("L3")
    assert check_homomorphism({e: e for e in l3.elements}, l3, l3).ok
    q4 = builtin("Q4")
    r = check_homomorphism({"1": "1", "p": "q", "q": "p", "0": "0"}, q4, q4)
    assert not r.ok and r.operation == "mult"
    with pytest.raises(ValueError):
        check_homomorphism({"1": "1"}, l3, l3)


def test_model_file_round_trip(tmp_path):
    for name in BUILTIN_NAMES:
        m = builtin(name)
        text = dumps_model(m)
        m2 = loads_model(text)
        assert m2.elements == m.elements and (m2.mult == m.mult).all() and (m2.imp == m.imp).all()
        assert dumps_model(m2) == text
        (tmp_path / f"{name}.model").write_text(dumps_model(m, with_imp=False))
    assert [m.name for m in load_bank(tmp_path)] == sorted(BUILTIN_NAMES)
    assert load_model(tmp_path / "Q6.model").implies("s", "t") == "r"
    assert load_model("builtin:P4").name == "P4"


def test_model_file_comments_and_errors():
    text = "# comment\n" + dumps_model(builtin("L3"))
    assert loads_model(text).name == "L3"
    with pytest.raises(ModelFileError):
        loads_model("model x\nelements 1 0\nunit 1\nzero 0\nleq\n1: 1\n0: 0 1\n")
    bad_imp = dumps_model(builtin("L3")).replace("a: 1 1 a", "a: 1 a a")
    with pytest.raises(ModelFileError):
        loads_model(bad_imp)
    with pytest.raises(ModelFileError):
        load_model("/nonexistent/file.model")


# --- laws over every enumerated model ------------------------------------------

def test_residual_uniqueness(pocrims4):
    for m in pocrims4 + [builtin(n) for n in BUILTIN_NAMES]:
        n = m.order
        imp, _ = residual_table(m.leq, m.mult)
        assert (imp == m.imp).all()
        for y in range(n):
            for z in range(n):
                xs = [x for x in range(n) if m.leq[m.mult[x, y], z]]
                assert all(m.leq[x, m.imp[y, z]] for x in xs) and m.imp[y, z] in xs


def test_delta_basics(pocrims4):
    for m in pocrims4 + [builtin(n) for n in BUILTIN_NAMES]:
        D, N = m.delta_table, m.neg_table
        assert all(m.leq[x, D[x]] for x in range(m.order))
        assert (N[D] == N).all()


def test_basic_affine_lemmas_hold_in_pocrims(pocrims4):
    stmts = [e for e in load_index() if e.id.startswith("ali-basic")]
    assert len(stmts) == 14
    for m in pocrims4 + [builtin(n) for n in BUILTIN_NAMES]:
        for e in stmts:
            assert sequent_verdict(m, e.statement).valid, (e.id, m.name)


def test_hoop_identities(hoops4):
    for m in hoops4 + [builtin("L3")]:
        o = Ops(m)
        x, y = o.x, o.y
        assert not delta_hom_failures(m)
        for lhs, rhs in de_morgan_pairs(o):
            assert (lhs == rhs).all()
        assert (o.nor(x, y) == o.nor(y, x)).all()
        assert (o.dn(o.imp(o.dn(x), x)) == m.unit).all()
        assert (o.neg(o.cup(x, y)) == o.mul(o.neg(x), o.imp(y, x))).all()
        assert (o.neg(o.imp(o.neg(x), y)) == o.mul(o.neg(x), o.neg(y))).all()


def test_delta_homomorphism_fails_in_a_builtin_non_hoop():
    fails = {n: delta_hom_failures(builtin(n)) for n in ("P4", "Q4", "Q6")}
    assert any(fails.values())
    assert fails["P4"] == [("imp", "b", "c")]
    assert fails["Q4"] == []


@given(st.integers(0, 10**6), st.sampled_from(BUILTIN_NAMES))
def test_backends_agree_with_direct_evaluation(seed, name):
    f = random_formula(seed, 8)
    m = builtin(name)
    results = [eval_all(f, m, backend=b) for b in backends().values()]
    var_names, vals = results[0]
    assert all((r[1] == vals).all() for r in results)
    for k, combo in enumerate(itertools.product(range(m.order), repeat=len(var_names))):
        assert eval_index(f, m, dict(zip(var_names, combo))) == vals[k]
