import itertools
import warnings

import numpy as np
import pytest

from negtrans.algebra import (
    PocrimLawError, builtin, dumps_model, is_hoop, validate_pocrim,
)
from negtrans.formula import parse_core
from negtrans.kernels import backends
from negtrans.search import (
    bounded_posets, canonical_form, enumerate_pocrims, enumerate_up_to, find_countermodel,
    in_class, is_isomorphic, parse_classes, random_stream, raw_pocrims, theory_implication_check,
)
from negtrans.translations import translate

C = parse_core


def test_counts():
    counts = [len(enumerate_pocrims(n)) for n in range(1, 6)]
    assert counts[:4] == [1, 1, 2, 7]
    # order 5 frozen from the first run of the enumeration
    assert counts[4] == 26


def test_bounded_poset_counts():
    # 1, 1, 1, 2 (chain or two incomparable atoms), 5 shapes on three middle points
    assert [len(bounded_posets(n)) for n in range(1, 6)] == [1, 1, 1, 2, 5]


def test_order_four_non_hoops_are_p4_and_q4():
    bad = [m for m in enumerate_pocrims(4) if not is_hoop(m)]
    assert len(bad) == 2
    p4, q4 = builtin("P4"), builtin("Q4")
    matched = sorted((is_isomorphic(m, p4) is not None, is_isomorphic(m, q4) is not None) for m in bad)
    assert matched == [(False, True), (True, False)]
    assert [m.name for m in enumerate_pocrims(4, "non-hoop")] == [m.name for m in bad]


def test_order_three_non_idempotent_is_l3():
    ms = enumerate_pocrims(3, "non-idempotent")
    assert len(ms) == 1 and is_isomorphic(ms[0], builtin("L3"))


def test_order_two_is_boolean():
    (m,) = enumerate_pocrims(2)
    assert m.times("1", "1") == "1" and m.times("0", "1") == "0" and m.implies("1", "0") == "0"


def test_class_filters():
    assert parse_classes("involutive-hoop") == ("involutive", "hoop")
    assert parse_classes("hoop+non-idempotent") == ("hoop", "non-idempotent")
    with pytest.raises(ValueError):
        parse_classes("pretty")
    l3 = builtin("L3")
    assert in_class(l3, "involutive-hoop") and not in_class(l3, "idempotent")
    for n in range(2, 5):
        hoops = enumerate_pocrims(n, "hoop")
        assert all(is_hoop(m) for m in hoops)
        assert len(hoops) + len(enumerate_pocrims(n, "non-hoop")) == len(enumerate_pocrims(n))


def test_enumeration_is_deterministic():
    a = [dumps_model(m) for m in enumerate_up_to(5)]
    from negtrans import search
    search._canonical_models.cache_clear()
    b = [dumps_model(m) for m in enumerate_up_to(5)]
    assert a == b


def test_every_model_validates_and_is_canonical():
    for m in enumerate_up_to(5):
        validate_pocrim(m.name, m.elements, m.elements[m.unit], m.elements[m.zero], m.leq, m.mult)
        key, perm = canonical_form(m.leq, m.mult)
        assert list(perm) == list(range(m.order))


def test_no_two_emitted_models_isomorphic():
    for n in range(1, 6):
        ms = enumerate_pocrims(n)
        for a, b in itertools.combinations(ms, 2):
            assert is_isomorphic(a, b) is None


def test_order_bound():
    with pytest.raises(ValueError):
        enumerate_pocrims(7)
    with pytest.raises(ValueError):
        enumerate_pocrims(0)
    with pytest.raises(ValueError):
        enumerate_pocrims(5, bound=4)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert len(enumerate_pocrims(6)) == 129
    assert any(issubclass(x.category, RuntimeWarning) for x in w)


def test_without_dedup():
    assert len(enumerate_pocrims(3, dedup=False)) == 2
    raw4 = enumerate_pocrims(4, dedup=False)
    classes = []
    for m in raw4:
        if not any(is_isomorphic(m, c) for c in classes):
            classes.append(m)
    assert len(classes) == 7


def _brute_force(n):
    """Every pocrim on n labelled points with 1 first and 0 last, found by trying
    all symmetric tables with the unit row fixed."""
    names = [str(i) for i in range(n)]
    mids = [(i, j) for i in range(n) for j in range(n) if 0 < i < n - 1 and 0 < j < n - 1 and i != j]
    found = []
    for bits in itertools.product((0, 1), repeat=len(mids)):
        leq = np.zeros((n, n), dtype=bool)
        leq[np.arange(n), np.arange(n)] = True
        leq[:, 0] = True
        leq[n - 1, :] = True
        for (i, j), b in zip(mids, bits):
            leq[i, j] = b
        free = [(i, j) for i in range(1, n) for j in range(i, n)]
        for vals in itertools.product(range(n), repeat=len(free)):
            mult = np.zeros((n, n), dtype=np.int32)
            mult[0, :] = mult[:, 0] = np.arange(n)
            for (i, j), v in zip(free, vals):
                mult[i, j] = mult[j, i] = v
            try:
                found.append(validate_pocrim("B", names, "0", str(n - 1), leq, mult))
            except PocrimLawError:
                pass
    return found


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dedup_against_brute_force(n):
    brute = _brute_force(n)
    emitted = enumerate_pocrims(n)
    for m in brute:
        hits = [e for e in emitted if is_isomorphic(m, e) is not None]
        assert len(hits) == 1
    for e in emitted:
        assert any(is_isomorphic(m, e) is not None for m in brute)


def test_backends_find_the_same_tables():
    mods = list(backends().values())
    for n in range(1, 6):
        runs = [[(l.tobytes(), m.tobytes()) for l, m in raw_pocrims(n, backend=b)] for b in mods]
        assert all(r == runs[0] for r in runs)


def test_isomorphism():
    l3 = builtin("L3")
    renamed = validate_pocrim("L3x", ["one", "mid", "nil"], "one", "nil", l3.leq, l3.mult)
    assert is_isomorphic(l3, renamed) == {"1": "one", "a": "mid", "0": "nil"}
    assert is_isomorphic(builtin("P4"), builtin("Q4")) is None
    assert is_isomorphic(builtin("P4"), l3) is None


def test_countermodel_for_glivenko_dne():
    goal = translate("glivenko", C("P^^ -> P"))
    cm = find_countermodel(goal, "pocrim", 4)
    p4 = builtin("P4")
    iso = is_isomorphic(cm.model, p4)
    assert iso is not None
    assert iso[cm.assignment["P"]] == "c" and iso[cm.value] == "b"


def test_countermodel_for_gentzen_in_bank():
    goal = translate("gentzen", C("(P * Q)^^ -> P * Q"))
    bank = [builtin(n) for n in ("L3", "P4", "Q4", "Q6")]
    cm = find_countermodel(goal, "pocrim", bank=bank)
    assert cm.model.name == "Q6"
    assert (cm.assignment, cm.value) == ({"P": "s", "Q": "s"}, "r")
    assert find_countermodel(goal, "pocrim", 4) is None


def test_no_countermodel_for_identity():
    for cls in ("pocrim", "hoop", "involutive", "non-hoop"):
        assert find_countermodel(C("P -> P"), cls, 4) is None


def test_theory_checks():
    q4, q6, l3, p4 = (builtin(n) for n in ("Q4", "Q6", "L3", "P4"))
    sample = random_stream(0, 300)
    assert theory_implication_check(q4, q6, "glivenko", sample).ok
    dne2 = C("(P * Q)^^ -> P * Q")
    r = theory_implication_check(q4, q6, "gentzen", sample + [dne2])
    assert dne2 in [f for f, _ in r.violations]
    r = theory_implication_check(l3, p4, "glivenko", [C("P^^ -> P")])
    (f, v), = r.violations
    assert v.assignment == {"P": "c"} and v.value == "b"


def test_random_stream_is_seeded():
    assert random_stream(5, 20) == random_stream(5, 20)
    assert random_stream(5, 20) != random_stream(6, 20)
