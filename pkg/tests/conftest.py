import pytest
from hypothesis import settings, strategies as st

from negtrans.formula import (
    BOT, TOP, Atom, Cap, Cup, Lolly, Neg, Nor, StrongImp, Tensor, random_formula,
)

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

VARS = ("P", "Q", "R")

atoms_st = st.sampled_from([Atom(v) for v in VARS] + [BOT])


def _core_step(children):
    return st.builds(Tensor, children, children) | st.builds(Lolly, children, children)


def _surface_step(children):
    return (_core_step(children)
            | st.builds(Neg, children)
            | st.builds(Cap, children, children)
            | st.builds(Cup, children, children)
            | st.builds(StrongImp, children, children)
            | st.builds(Nor, children, children))


core_formulas = st.recursive(atoms_st, _core_step, max_leaves=10)
surface_formulas = st.recursive(atoms_st | st.just(TOP), _surface_step, max_leaves=8)
seeded_formulas = st.integers(0, 2**32 - 1).map(lambda s: random_formula(s, 8, VARS))


@pytest.fixture(scope="session")
def hoops4():
    from negtrans.search import enumerate_up_to

    return enumerate_up_to(4, "hoop", min_order=2)


@pytest.fixture(scope="session")
def pocrims4():
    from negtrans.search import enumerate_up_to

    return enumerate_up_to(4, "pocrim", min_order=2)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, dt, detail = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({dt:.2f} s) {detail}")
