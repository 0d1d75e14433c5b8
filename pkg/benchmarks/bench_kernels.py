"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times exhaustive evaluation of random formulas over the built-in models and
the monoid search at orders 4 and 5, and checks both backends agree.
"""
import argparse
import time

import numpy as np

from negtrans import kernels
from negtrans.algebra import BUILTIN_NAMES, builtin, eval_all
from negtrans.formula import random_formula
from negtrans.search import raw_pocrims


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_eval(backend, formulas, models):
    return [eval_all(f, m, backend=backend)[1] for f in formulas for m in models]


def bench_search(backend, order):
    return raw_pocrims(order, backend=backend)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--formulas", type=int, default=300)
    a = p.parse_args()
    avail = kernels.backends()
    formulas = [random_formula(i, 8, ("P", "Q", "R")) for i in range(a.formulas)]
    models = [builtin(n) for n in BUILTIN_NAMES]
    rows = []
    results = {}
    for name, mod in avail.items():
        t, r = _time(lambda: bench_eval(mod, formulas, models), a.repeat)
        rows.append((f"eval x{len(formulas) * len(models)}", name, t))
        results.setdefault("eval", {})[name] = r
        for order in (4, 5):
            t, r = _time(lambda: bench_search(mod, order), a.repeat)
            rows.append((f"search order {order}", name, t))
            results.setdefault(order, {})[name] = [(l.tobytes(), m.tobytes()) for l, m in r]
    for task, name, t in rows:
        print(f"{task:<18} {name:<7} {t * 1000:9.2f} ms")
    if len(avail) > 1:
        same = all(np.array_equal(x, y) for x, y in zip(*results["eval"].values()))
        same &= all(len(set(map(tuple, [v for v in results[o].values()]))) == 1 for o in (4, 5))
        print("backends agree" if same else "BACKENDS DISAGREE")
    else:
        print("compiled backend not built; only the fallback was timed")


if __name__ == "__main__":
    main()
