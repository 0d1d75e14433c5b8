import os
import subprocess
import sys

import numpy as np
from hypothesis import given, strategies as st

from negtrans import kernels
from negtrans.algebra import builtin, eval_all
from negtrans.search import bounded_posets


def test_fallback_selected_by_environment():
    code = "from negtrans import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, NEGTRANS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


def test_backends_listed():
    assert "python" in kernels.backends()
    assert kernels.BACKEND in kernels.backends()


def test_use_rejects_unknown_backend():
    import pytest
    with pytest.raises(ValueError):
        kernels.use("fortran")


@given(st.lists(st.sampled_from(["P", "Q", "*", "->", "bot"]), min_size=1, max_size=12),
       st.sampled_from(["L3", "P4", "Q4", "Q6"]))
def test_random_programs_agree(tokens, name):
    # build a formula from a postfix token list, skipping tokens that would underflow
    from negtrans.formula import BOT, Atom, Lolly, Tensor
    stack = []
    for t in tokens:
        if t in ("*", "->"):
            if len(stack) < 2:
                continue
            b, a = stack.pop(), stack.pop()
            stack.append(Tensor(a, b) if t == "*" else Lolly(a, b))
        else:
            stack.append(BOT if t == "bot" else Atom(t))
    m = builtin(name)
    outs = [eval_all(f, m, ["P", "Q"], backend=b)[1] for f in stack for b in kernels.backends().values()]
    k = len(kernels.backends())
    for i in range(0, len(outs), k):
        assert all(np.array_equal(outs[i], o) for o in outs[i:i + k])


def test_search_agrees_per_poset():
    mods = list(kernels.backends().values())
    for n in range(1, 6):
        for leq in bounded_posets(n, False):
            res = [sorted(np.asarray(t).tobytes() for t in mod.search_monoids(leq)) for mod in mods]
            assert all(r == res[0] for r in res)


def test_benchmark_runs():
    from pathlib import Path
    script = Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(script), "--repeat", "1", "--formulas", "5"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "DISAGREE" not in out.stdout
