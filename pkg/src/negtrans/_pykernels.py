"""Pure-Python/numpy implementations of the hot kernels.

These are the reference versions; ``_ckernels.pyx`` mirrors them and the
test-suite checks that both backends agree.

Element convention for :func:`search_monoids`: index 0 is the unit (top),
index ``n - 1`` the zero (bottom), the rest are the middle elements.
"""
from __future__ import annotations

import numpy as np

OP_VAR, OP_CONST, OP_TENSOR, OP_LOLLY = 0, 1, 2, 3


def eval_program(program, nvars: int, n: int, mult, imp):
    """Evaluate a postfix formula program under every interpretation.

    ``program`` is an ``(L, 2)`` int array of ``(opcode, argument)`` rows.
    Interpretation ``i`` assigns variable ``k`` the ``k``-th base-``n``
    digit of ``i``, most significant first (``itertools.product`` order).
    """
    total = n ** nvars
    idx = np.arange(total, dtype=np.int64)
    columns = []
    for k in range(nvars):
        columns.append(((idx // n ** (nvars - 1 - k)) % n).astype(np.int32))
    mult = np.asarray(mult)
    imp = np.asarray(imp)
    stack = []
    for op, arg in np.asarray(program).tolist():
        if op == OP_VAR:
            stack.append(columns[arg])
        elif op == OP_CONST:
            stack.append(np.full(total, arg, dtype=np.int32))
        else:
            right = stack.pop()
            left = stack.pop()
            table = mult if op == OP_TENSOR else imp
            stack.append(table[left, right])
    (result,) = stack
    return np.ascontiguousarray(result, dtype=np.int32)


def search_monoids(leq) -> list:
    """All multiplication tables making the bounded poset ``leq`` a pocrim.

    The search assigns the products of middle elements in row-major order,
    pruning on integrality and monotonicity; complete tables are then
    checked for associativity and for existence of all residuals.
    """
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    L = leq.tolist()
    top, bot = 0, n - 1
    m = [[-1] * n for _ in range(n)]
    for x in range(n):
        m[top][x] = m[x][top] = x
        m[bot][x] = m[x][bot] = bot
    cells = [(i, j) for i in range(1, n - 1) for j in range(i, n - 1)]
    cands = {}
    for i, j in cells:
        cands[(i, j)] = [v for v in range(n) if L[v][i] and L[v][j]]
    results = []

    def monotone_ok(i, j, v):
        for k in range(1, n - 1):
            for l in range(1, n - 1):
                w = m[k][l]
                if w < 0:
                    continue
                if L[i][k] and L[j][l] and not L[v][w]:
                    return False
                if L[k][i] and L[l][j] and not L[w][v]:
                    return False
        return True

    def rec(c):
        if c == len(cells):
            table = finish(m, L, n)
            if table is not None:
                results.append(table)
            return
        i, j = cells[c]
        for v in cands[(i, j)]:
            m[i][j] = m[j][i] = v
            if monotone_ok(i, j, v):
                rec(c + 1)
            m[i][j] = m[j][i] = -1

    rec(0)
    return results


def finish(m, L, n):
    for x in range(n):
        for y in range(n):
            mxy = m[x][y]
            for z in range(n):
                if m[mxy][z] != m[x][m[y][z]]:
                    return None
    if residuals(m, L, n) is None:
        return None
    return np.array(m, dtype=np.int32)


def residuals(m, L, n):
    """Residual table ``imp[y][z] = max{x : x*y <= z}`` or ``None`` if one is missing."""
    imp = [[0] * n for _ in range(n)]
    for y in range(n):
        for z in range(n):
            s = [x for x in range(n) if L[m[x][y]][z]]
            best = -1
            for x in s:
                if all(L[w][x] for w in s):
                    best = x
                    break
            if best < 0:
                return None
            imp[y][z] = best
    return imp
