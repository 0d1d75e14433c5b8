# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``; same signatures."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    MAXN = 12
    MAXSTACK = 256


def eval_program(program, int nvars, int n, mult, imp):
    cdef const int[:, ::1] prog = np.ascontiguousarray(program, dtype=np.int32)
    cdef const int[:, ::1] mt = np.ascontiguousarray(mult, dtype=np.int32)
    cdef const int[:, ::1] it = np.ascontiguousarray(imp, dtype=np.int32)
    cdef Py_ssize_t total = 1
    cdef int k
    for k in range(nvars):
        total *= n
    out = np.empty(total, dtype=np.int32)
    cdef int[::1] res = out
    cdef int stack[MAXSTACK]
    cdef int assign[64]
    cdef int L = prog.shape[0]
    cdef Py_ssize_t i
    cdef long rem
    cdef int sp, pc, op, arg, a, b
    if L > MAXSTACK:
        raise ValueError("formula program too long for the compiled kernel")
    if nvars > 64:
        raise ValueError("too many variables for the compiled kernel")
    with nogil:
        for i in range(total):
            rem = i
            for k in range(nvars - 1, -1, -1):
                assign[k] = rem % n
                rem = rem // n
            sp = 0
            for pc in range(L):
                op = prog[pc, 0]
                arg = prog[pc, 1]
                if op == 0:
                    stack[sp] = assign[arg]
                    sp += 1
                elif op == 1:
                    stack[sp] = arg
                    sp += 1
                else:
                    b = stack[sp - 1]
                    a = stack[sp - 2]
                    sp -= 1
                    if op == 2:
                        stack[sp - 1] = mt[a, b]
                    else:
                        stack[sp - 1] = it[a, b]
            res[i] = stack[0]
    return out


cdef struct Search:
    int n
    int ncells
    int leq[MAXN][MAXN]
    int m[MAXN][MAXN]
    int ci[MAXN * MAXN]
    int cj[MAXN * MAXN]


cdef bint _monotone_ok(Search* s, int i, int j, int v) nogil:
    cdef int k, l, w
    for k in range(1, s.n - 1):
        for l in range(1, s.n - 1):
            w = s.m[k][l]
            if w < 0:
                continue
            if s.leq[i][k] and s.leq[j][l] and not s.leq[v][w]:
                return False
            if s.leq[k][i] and s.leq[l][j] and not s.leq[w][v]:
                return False
    return True


cdef bint _associative(Search* s) nogil:
    cdef int x, y, z, n = s.n
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if s.m[s.m[x][y]][z] != s.m[x][s.m[y][z]]:
                    return False
    return True


cdef bint _residuated(Search* s) nogil:
    cdef int y, z, x, w, n = s.n
    cdef bint found, ok
    for y in range(n):
        for z in range(n):
            found = False
            for x in range(n):
                if not s.leq[s.m[x][y]][z]:
                    continue
                ok = True
                for w in range(n):
                    if s.leq[s.m[w][y]][z] and not s.leq[w][x]:
                        ok = False
                        break
                if ok:
                    found = True
                    break
            if not found:
                return False
    return True


cdef void _rec(Search* s, int c, list results):
    cdef int i, j, v, x, y
    if c == s.ncells:
        if _associative(s) and _residuated(s):
            table = np.empty((s.n, s.n), dtype=np.int32)
            for x in range(s.n):
                for y in range(s.n):
                    table[x, y] = s.m[x][y]
            results.append(table)
        return
    i = s.ci[c]
    j = s.cj[c]
    for v in range(s.n):
        if not (s.leq[v][i] and s.leq[v][j]):
            continue
        s.m[i][j] = v
        s.m[j][i] = v
        if _monotone_ok(s, i, j, v):
            _rec(s, c + 1, results)
        s.m[i][j] = -1
        s.m[j][i] = -1


def search_monoids(leq):
    cdef const cnp.uint8_t[:, ::1] lq = np.ascontiguousarray(leq, dtype=np.uint8)
    cdef Search s
    cdef int n = lq.shape[0]
    cdef int x, y, c
    if n > MAXN:
        raise ValueError("order too large for the compiled kernel")
    s.n = n
    for x in range(n):
        for y in range(n):
            s.leq[x][y] = lq[x, y]
            s.m[x][y] = -1
    for x in range(n):
        s.m[0][x] = x
        s.m[x][0] = x
        s.m[n - 1][x] = n - 1
        s.m[x][n - 1] = n - 1
    c = 0
    for x in range(1, n - 1):
        for y in range(x, n - 1):
            s.ci[c] = x
            s.cj[c] = y
            c += 1
    s.ncells = c
    results = []
    _rec(&s, 0, results)
    return results
