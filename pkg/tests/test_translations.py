import pytest
from hypothesis import given, strategies as st

from negtrans.algebra import builtin, eval_all
from negtrans.formula import BOT, Atom, desugar, dneg, is_negative, neg, parse, parse_core
from negtrans.translations import (
    FULL_SCHEMES, Scheme, gentzen_neg_commutes, krivine_pre_right, nt1_witness, translate,
)

from conftest import core_formulas, surface_formulas

P, Q = Atom("P"), Atom("Q")
C = parse_core


def test_kolmogorov_tensor():
    assert translate("kolmogorov", C("P * Q")) == C("(P^^ * Q^^)^^")


def test_kolmogorov_lolly_and_bot():
    assert translate("kolmogorov", C("P -> bot")) == C("(P^^ -> bot)^^")
    assert translate("kolmogorov", BOT) == BOT


def test_gentzen_dne_instance():
    assert translate("gentzen", C("(P * Q)^^ -> P * Q")) == C("(P^^ * Q^^)^^ -> P^^ * Q^^")


def test_glivenko_bot():
    assert translate("glivenko", BOT) == C("((bot -> bot) -> bot)")


def test_krivine_atom():
    assert translate("krivine", P) == C("P^^")
    assert translate("krivine-pre", BOT) == C("bot -> bot")
    assert translate("krivine-pre", C("P * Q")) == C("P^^ -> Q^")
    assert translate("krivine-pre", C("P -> Q")) == C("P^^ * Q^")


def test_krivine_right_variant_is_not_classical():
    # in the two-element Boolean algebra the right-negating table sends P * Q to not (P or Q)
    from negtrans.search import enumerate_pocrims
    (b2,) = enumerate_pocrims(2)
    f = C("P * Q")
    bad = neg(krivine_pre_right(f))
    assert [b2.elements[v] for v in eval_all(bad, b2, ["P", "Q"])[1]] == ["0", "0", "0", "1"]
    good = translate("krivine", f)
    assert (eval_all(good, b2, ["P", "Q"])[1] == eval_all(f, b2, ["P", "Q"])[1]).all()


def test_goedel_clauses():
    assert translate("goedel-pre", C("P -> Q")) == C("P -> Q^^")
    assert translate("goedel-pre", C("P * Q")) == C("P * Q")
    assert translate("goedel", P) == C("P^^")
    assert translate("goedel-simplified", C("(P -> Q) -> R")) == C("((P -> Q) -> R^^)^^")
    assert translate("goedel", C("(P -> Q) -> R")) == C("((P -> Q^^) -> R^^)^^")


def test_scheme_aliases():
    assert Scheme.parse("k") is Scheme.KOLMOGOROV
    assert Scheme.parse("Gödel") is Scheme.GOEDEL
    assert Scheme.parse("godel_pre") is Scheme.GOEDEL_PRE
    with pytest.raises(ValueError):
        Scheme.parse("nope")


def test_surface_input_is_desugared():
    f = parse("P & Q")
    assert translate("glivenko", f) == dneg(desugar(f))


def test_nt1_examples():
    w = nt1_witness("kolmogorov", P)
    assert w is not None and w.formula == C("P^^")
    assert nt1_witness("gentzen", C("P * Q")).formula == C("P^^ * Q^^")
    assert nt1_witness("goedel-pre", P) is None


def test_gentzen_commutes_examples():
    r = gentzen_neg_commutes(P)
    assert r.equal and r.lhs == C("P^^^")
    assert gentzen_neg_commutes(C("P * Q")).equal


@given(core_formulas, st.sampled_from(FULL_SCHEMES + (Scheme.KRIVINE_PRE,)))
def test_nt1_for_every_scheme(f, scheme):
    assert nt1_witness(scheme, f) is not None


@given(surface_formulas, st.sampled_from(list(Scheme)))
def test_outputs_are_core(f, scheme):
    from negtrans.formula import is_core
    assert is_core(translate(scheme, f))


@given(core_formulas)
def test_gentzen_neg_commutes(f):
    assert gentzen_neg_commutes(f).equal


def test_gentzen_neg_commutes_seeded():
    from negtrans.formula import random_formula
    assert all(gentzen_neg_commutes(random_formula(s, 8)).equal for s in range(1000))


@given(core_formulas)
def test_goedel_is_dn_of_pre_and_krivine_is_neg_of_pre(f):
    assert translate("goedel", f) == dneg(translate("goedel-pre", f))
    assert translate("krivine", f) == neg(translate("krivine-pre", f))
    assert translate("glivenko", f) == dneg(f)


def test_goedel_pre_fails_nt1_and_nt2():
    # without the outer double negation an atom stays an atom
    f = P
    assert not is_negative(translate("goedel-pre", f))
    assert is_negative(translate("goedel", f))
    # and it disagrees with Kolmogorov in P4 at P = c, where delta(c) = b
    m = builtin("P4")
    a = eval_all(translate("goedel-pre", f), m, ["P"])[1]
    b = eval_all(translate("kolmogorov", f), m, ["P"])[1]
    c = m.index("c")
    assert m.elements[a[c]] == "c" and m.elements[b[c]] == "b"
