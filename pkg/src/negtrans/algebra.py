"""Finite pocrims and hoops: validation, evaluation, validity and classification.

Elements are referred to by name at the API boundary and by index into
``PocrimTable.elements`` internally. Evaluation of a formula compiles it to
a postfix program that the kernel runs over every interpretation at once.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .calculi import Calculus, Sequent, sequent_to_formula
from .formula import Atom, Bottom, Formula, Lolly, Tensor, atoms, desugar, dneg, is_core


class PocrimLawError(ValueError):
    """Raised by :func:`validate_pocrim`; ``witness`` is a tuple of element names."""

    def __init__(self, law: str, witness: tuple, detail: str = ""):
        self.law = law
        self.witness = tuple(witness)
        msg = f"{law} fails at ({', '.join(map(str, self.witness))})"
        super().__init__(f"{msg}: {detail}" if detail else msg)


@dataclass(frozen=True, eq=False)
class PocrimTable:
    name: str
    elements: tuple[str, ...]
    unit: int
    zero: int
    leq: np.ndarray
    mult: np.ndarray
    imp: np.ndarray
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})
        for arr in (self.leq, self.mult, self.imp):
            arr.setflags(write=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, e: str | int) -> int:
        if isinstance(e, (int, np.integer)):
            return int(e)
        try:
            return self._index[e]
        except KeyError:
            raise KeyError(f"{self.name} has no element {e!r}") from None

    def times(self, x, y) -> str:
        return self.elements[self.mult[self.index(x), self.index(y)]]

    def implies(self, x, y) -> str:
        return self.elements[self.imp[self.index(x), self.index(y)]]

    def le(self, x, y) -> bool:
        return bool(self.leq[self.index(x), self.index(y)])

    def negate(self, x) -> str:
        return self.implies(x, self.zero)

    def delta(self, x) -> str:
        """Double negation ``(x -> 0) -> 0``."""
        return self.negate(self.negate(x))

    @property
    def neg_table(self) -> np.ndarray:
        return self.imp[:, self.zero]

    @property
    def delta_table(self) -> np.ndarray:
        n = self.neg_table
        return n[n]

    def renamed(self, name: str) -> "PocrimTable":
        return PocrimTable(name, self.elements, self.unit, self.zero,
                           self.leq.copy(), self.mult.copy(), self.imp.copy())

    def __repr__(self) -> str:
        return f"<PocrimTable {self.name} order={self.order}>"


# ---------------------------------------------------------------------------
# Validation

def residual_table(leq: np.ndarray, mult: np.ndarray) -> tuple[np.ndarray | None, tuple | None]:
    """``imp[y, z]`` as the maximum of ``{x : x*y <= z}``; on failure the missing ``(y, z)``."""
    n = leq.shape[0]
    imp = np.zeros((n, n), dtype=np.int32)
    for y in range(n):
        for z in range(n):
            s = [x for x in range(n) if leq[mult[x, y], z]]
            best = next((x for x in s if all(leq[w, x] for w in s)), None)
            if best is None:
                return None, (y, z)
            imp[y, z] = best
    return imp, None


def validate_pocrim(name: str, elements: Sequence[str], unit: str, zero: str,
                    leq, mult, imp=None) -> PocrimTable:
    """Check every pocrim law exhaustively and return the validated table.

    ``leq[i][j]`` means ``elements[i] <= elements[j]``; ``mult`` and ``imp``
    are index tables. When ``imp`` is omitted it is computed from the
    residuals; when supplied it must satisfy residuation. Laws are checked
    in a fixed order and the first failing tuple, in element order, is
    reported via :class:`PocrimLawError`.
    """
    elements = tuple(elements)
    n = len(elements)
    if n == 0:
        raise PocrimLawError("nonempty", ())
    if len(set(elements)) != n:
        raise PocrimLawError("distinct-elements", ())
    ix = {e: i for i, e in enumerate(elements)}
    if unit not in ix or zero not in ix:
        raise PocrimLawError("unit-zero-declared", (unit, zero))
    u, z = ix[unit], ix[zero]
    if u == z and n > 1:
        raise PocrimLawError("unit-zero-distinct", (unit, zero))
    leq = np.asarray(leq, dtype=bool)
    mult = np.asarray(mult, dtype=np.int32)
    if leq.shape != (n, n) or mult.shape != (n, n):
        raise PocrimLawError("table-shape", ())
    if mult.min() < 0 or mult.max() >= n:
        raise PocrimLawError("closure", ())
    E = elements
    R = range(n)

    def fail(law, *idx):
        raise PocrimLawError(law, tuple(E[i] for i in idx))

    for x in R:
        if not leq[x, x]:
            fail("reflexivity", x)
    for x, y in itertools.product(R, R):
        if x != y and leq[x, y] and leq[y, x]:
            fail("antisymmetry", x, y)
    for x, y, w in itertools.product(R, R, R):
        if leq[x, y] and leq[y, w] and not leq[x, w]:
            fail("transitivity", x, y, w)
    for x in R:
        if not (leq[z, x] and leq[x, u]):
            fail("bounds", x)
    for x in R:
        if mult[u, x] != x or mult[x, u] != x:
            fail("unit", x)
    for x, y in itertools.product(R, R):
        if mult[x, y] != mult[y, x]:
            fail("commutativity", x, y)
    for x, y, w in itertools.product(R, R, R):
        if mult[mult[x, y], w] != mult[x, mult[y, w]]:
            fail("associativity", x, y, w)
    for x, y, w in itertools.product(R, R, R):
        if leq[x, y] and not leq[mult[x, w], mult[y, w]]:
            fail("monotonicity", x, y, w)
    if imp is None:
        imp, missing = residual_table(leq, mult)
        if imp is None:
            fail("residual-exists", *missing)
    else:
        imp = np.asarray(imp, dtype=np.int32)
        if imp.shape != (n, n) or imp.min() < 0 or imp.max() >= n:
            raise PocrimLawError("table-shape", ())
    for x, y, w in itertools.product(R, R, R):
        if bool(leq[mult[x, y], w]) != bool(leq[x, imp[y, w]]):
            fail("residuation", x, y, w)
    for x, y in itertools.product(R, R):
        if bool(leq[x, y]) != (imp[x, y] == u):
            fail("order-via-implication", x, y)
    return PocrimTable(name, elements, u, z, leq.copy(), mult.copy(), imp.copy())


def from_names(name: str, elements: Sequence[str], unit: str, zero: str,
               up: Mapping[str, Sequence[str]], mult: Mapping[str, Sequence[str]],
               imp: Mapping[str, Sequence[str]] | None = None) -> PocrimTable:
    """Build from named up-sets and row tables, then validate."""
    ix = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    leq = np.zeros((n, n), dtype=bool)
    for x, ups in up.items():
        for y in ups:
            leq[ix[x], ix[y]] = True
    m = np.array([[ix[v] for v in mult[x]] for x in elements], dtype=np.int32)
    i = None if imp is None else np.array([[ix[v] for v in imp[x]] for x in elements],
                                           dtype=np.int32)
    return validate_pocrim(name, elements, unit, zero, leq, m, i)


def chain(name: str, elements: Sequence[str], mult_rows: Sequence[str],
          imp_rows: Sequence[str] | None = None) -> PocrimTable:
    """A chain listed in decreasing order, rows given as space-separated names."""
    els = list(elements)
    up = {e: els[: k + 1] for k, e in enumerate(els)}
    mult = {e: row.split() for e, row in zip(els, mult_rows)}
    imp = None if imp_rows is None else {e: row.split() for e, row in zip(els, imp_rows)}
    return from_names(name, els, els[0], els[-1], up, mult, imp)


# ---------------------------------------------------------------------------
# Built-in models

def _l3():
    return chain("L3", ["1", "a", "0"],
                 ["1 a 0", "a 0 0", "0 0 0"],
                 ["1 a 0", "1 1 a", "1 1 1"])


def _p4():
    return chain("P4", ["1", "b", "c", "0"],
                 ["1 b c 0", "b 0 0 0", "c 0 0 0", "0 0 0 0"],
                 ["1 b c 0", "1 1 b b", "1 1 1 b", "1 1 1 1"])


def _q4():
    return chain("Q4", ["1", "p", "q", "0"],
                 ["1 p q 0", "p p 0 0", "q 0 0 0", "0 0 0 0"],
                 ["1 p q 0", "1 1 q q", "1 1 1 p", "1 1 1 1"])


def _q6():
    return chain("Q6", ["1", "r", "s", "t", "u", "0"],
                 ["1 r s t u 0",
                  "r r t t u 0",
                  "s t t t 0 0",
                  "t t t t 0 0",
                  "u u 0 0 0 0",
                  "0 0 0 0 0 0"],
                 ["1 r s t u 0",
                  "1 1 s s u 0",
                  "1 1 1 r u u",
                  "1 1 1 1 u u",
                  "1 1 1 1 1 s",
                  "1 1 1 1 1 1"])


_BUILTINS = {"L3": _l3, "P4": _p4, "Q4": _q4, "Q6": _q6}
BUILTIN_NAMES = tuple(_BUILTINS)

# The map Q6 -> Q4 collapsing the blocks {1,r}, {s,t}, {u}, {0}.
Q6_TO_Q4 = {"1": "1", "r": "1", "s": "p", "t": "p", "u": "q", "0": "0"}


@lru_cache(maxsize=None)
def builtin(name: str) -> PocrimTable:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise ValueError(f"unknown built-in model {name!r} "
                         f"(choose from {', '.join(BUILTIN_NAMES)})") from None


# ---------------------------------------------------------------------------
# Classification

@dataclass(frozen=True)
class Classification:
    is_pocrim: bool
    is_hoop: bool
    is_involutive: bool
    is_idempotent: bool
    hoop_witness: tuple[str, str] | None = None
    involutive_witness: str | None = None
    idempotent_witness: str | None = None

    def as_dict(self) -> dict:
        return {
            "pocrim": self.is_pocrim,
            "hoop": self.is_hoop,
            "involutive": self.is_involutive,
            "idempotent": self.is_idempotent,
            "hoop_witness": list(self.hoop_witness) if self.hoop_witness else None,
            "involutive_witness": self.involutive_witness,
            "idempotent_witness": self.idempotent_witness,
        }


def hoop_witness(m: PocrimTable) -> tuple[int, int] | None:
    M, I = m.mult, m.imp
    for x in range(m.order):
        for y in range(m.order):
            if M[x, I[x, y]] != M[y, I[y, x]]:
                return x, y
    return None


def involutive_witness(m: PocrimTable) -> int | None:
    d = m.delta_table
    bad = np.nonzero(d != np.arange(m.order))[0]
    return int(bad[0]) if len(bad) else None


def idempotent_witness(m: PocrimTable) -> int | None:
    bad = np.nonzero(np.diagonal(m.mult) != np.arange(m.order))[0]
    return int(bad[0]) if len(bad) else None


def is_hoop(m: PocrimTable) -> bool:
    return hoop_witness(m) is None


def is_involutive(m: PocrimTable) -> bool:
    return involutive_witness(m) is None


def is_idempotent(m: PocrimTable) -> bool:
    return idempotent_witness(m) is None


def classify(m: PocrimTable) -> Classification:
    E = m.elements
    hw, iw, dw = hoop_witness(m), involutive_witness(m), idempotent_witness(m)
    return Classification(
        is_pocrim=True,
        is_hoop=hw is None,
        is_involutive=iw is None,
        is_idempotent=dw is None,
        hoop_witness=None if hw is None else (E[hw[0]], E[hw[1]]),
        involutive_witness=None if iw is None else E[iw],
        idempotent_witness=None if dw is None else E[dw],
    )


# ---------------------------------------------------------------------------
# Evaluation

@lru_cache(maxsize=4096)
def _compile(f: Formula) -> tuple[tuple[str, ...], tuple[tuple[int, int], ...]]:
    """Postfix program for core ``f``; bottom is emitted as a placeholder constant -1."""
    names = tuple(atoms(f))
    slot = {v: i for i, v in enumerate(names)}
    prog: list[tuple[int, int]] = []
    stack = [(f, False)]
    while stack:
        g, done = stack.pop()
        if isinstance(g, Atom):
            prog.append((kernels.OP_VAR, slot[g.name]))
        elif isinstance(g, Bottom):
            prog.append((kernels.OP_CONST, -1))
        elif done:
            prog.append((kernels.OP_TENSOR if isinstance(g, Tensor) else kernels.OP_LOLLY, 0))
        else:
            stack.append((g, True))
            stack.append((g.right, False))
            stack.append((g.left, False))
    return names, tuple(prog)


def _core(f: Formula) -> Formula:
    return f if is_core(f) else desugar(f)


def eval_all(f: Formula, m: PocrimTable, variables: Sequence[str] | None = None,
             backend=None) -> tuple[tuple[str, ...], np.ndarray]:
    """Value of ``f`` under every interpretation, as element indices.

    Interpretations are enumerated as ``itertools.product(elements, repeat=k)``
    over ``variables`` (default: the atoms of ``f`` in sorted order).
    """
    f = _core(f)
    names, prog = _compile(f)
    if variables is not None:
        variables = tuple(variables)
        missing = set(names) - set(variables)
        if missing:
            raise KeyError(f"unassigned variables: {', '.join(sorted(missing))}")
        slot = {v: i for i, v in enumerate(variables)}
        prog = tuple((op, slot[names[a]]) if op == kernels.OP_VAR else (op, a)
                     for op, a in prog)
        names = variables
    arr = np.array(prog, dtype=np.int32).reshape(-1, 2)
    arr[(arr[:, 0] == kernels.OP_CONST), 1] = m.zero
    run = (backend or kernels).eval_program
    return names, run(arr, len(names), m.order, m.mult, m.imp)


def eval_index(f: Formula, m: PocrimTable, assignment: Mapping[str, str | int]) -> int:
    f = _core(f)
    names, prog = _compile(f)
    missing = [v for v in names if v not in assignment]
    if missing:
        raise KeyError(f"unassigned variables: {', '.join(missing)}")
    stack: list[int] = []
    for op, a in prog:
        if op == kernels.OP_VAR:
            stack.append(m.index(assignment[names[a]]))
        elif op == kernels.OP_CONST:
            stack.append(m.zero)
        else:
            y, x = stack.pop(), stack.pop()
            stack.append(int(m.mult[x, y] if op == kernels.OP_TENSOR else m.imp[x, y]))
    return stack[0]


def evaluate(f: Formula, m: PocrimTable, assignment: Mapping[str, str | int]) -> str:
    """``V_I(f)`` for the interpretation ``assignment`` (variable to element name)."""
    return m.elements[eval_index(f, m, assignment)]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a validity check; a countermodel when ``valid`` is false."""

    valid: bool
    model: str
    assignment: dict | None = None
    value: str | None = None

    def __bool__(self) -> bool:
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return f"valid in {self.model}"
        asg = ", ".join(f"{k}={v}" for k, v in self.assignment.items()) or "(no variables)"
        return f"invalid in {self.model}: {asg} gives {self.value}"


def _unravel(i: int, k: int, n: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(i % n)
        i //= n
    return out[::-1]


def satisfies(m: PocrimTable, f: Formula) -> Verdict:
    """Exhaustive validity; the reported countermodel is the first in product order."""
    names, vals = eval_all(f, m)
    bad = np.nonzero(vals != m.unit)[0]
    if len(bad) == 0:
        return Verdict(True, m.name)
    i = int(bad[0])
    digits = _unravel(i, len(names), m.order)
    asg = {v: m.elements[d] for v, d in zip(names, digits)}
    return Verdict(False, m.name, asg, m.elements[int(vals[i])])


def sequent_verdict(m: PocrimTable, s: Sequent) -> Verdict:
    return satisfies(m, sequent_to_formula(s))


def sequent_valid(m: PocrimTable, s: Sequent) -> bool:
    return sequent_verdict(m, s).valid


# ---------------------------------------------------------------------------
# Axiom schemata

_A, _B = Atom("A"), Atom("B")
SCHEMA_FORMULAS = {
    "ASM": Lolly(_A, _A),
    "EFQ": Lolly(Bottom(), _A),
    "DNE": Lolly(dneg(_A), _A),
    "CON": Lolly(_A, Tensor(_A, _A)),
    "CWC": Lolly(_A, Lolly(Lolly(_A, _B), Tensor(_B, Lolly(_B, _A)))),
}


def _schema_identity(m: PocrimTable, schema: str) -> bool:
    if schema in ("ASM", "EFQ"):
        return True
    if schema == "CWC":
        return is_hoop(m)
    if schema == "DNE":
        return is_involutive(m)
    if schema == "CON":
        return is_idempotent(m)
    raise ValueError(f"unknown axiom schema {schema!r}")


def axiom_schema_valid(m: PocrimTable, schema: str) -> bool:
    """Whether every instance of ``schema`` holds in ``m``.

    Decided twice: by evaluating the schema with its metavariables ranging
    over all elements, and by the matching algebraic identity. A
    disagreement is a bug and raises ``AssertionError``.
    """
    by_identity = _schema_identity(m, schema)
    by_instances = satisfies(m, SCHEMA_FORMULAS[schema]).valid
    if by_identity != by_instances:
        raise AssertionError(f"{schema} in {m.name}: identity says {by_identity}, "
                             f"instances say {by_instances}")
    return by_identity


def models_calculus(m: PocrimTable) -> list[Calculus]:
    """All calculi whose axiom schemata are valid in ``m``, in declaration order."""
    ok = {s: axiom_schema_valid(m, s) for s in SCHEMA_FORMULAS}
    return [c for c in Calculus if all(ok[s] for s in c.schemata)]


# ---------------------------------------------------------------------------
# Homomorphisms

@dataclass(frozen=True)
class HomomorphismReport:
    ok: bool
    operation: str | None = None
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def check_homomorphism(h: Mapping[str, str], src: PocrimTable, dst: PocrimTable) -> HomomorphismReport:
    """Check that ``h`` preserves 1, 0, multiplication and implication."""
    missing = [e for e in src.elements if e not in h]
    if missing:
        raise ValueError(f"map is not total: {', '.join(missing)} unassigned")
    H = np.array([dst.index(h[e]) for e in src.elements], dtype=np.int32)
    E = src.elements
    if H[src.unit] != dst.unit:
        return HomomorphismReport(False, "unit", (E[src.unit],))
    if H[src.zero] != dst.zero:
        return HomomorphismReport(False, "zero", (E[src.zero],))
    for op, S, D in (("mult", src.mult, dst.mult), ("imp", src.imp, dst.imp)):
        bad = np.argwhere(H[S] != D[np.ix_(H, H)])
        if len(bad):
            x, y = bad[0]
            return HomomorphismReport(False, op, (E[x], E[y]))
    return HomomorphismReport(True)


# ---------------------------------------------------------------------------
# Model files

class ModelFileError(ValueError):
    pass


def loads_model(text: str) -> PocrimTable:
    name = None
    elements: list[str] | None = None
    unit = zero = None
    sections: dict[str, dict[str, list[str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "model":
            name = rest.strip()
            current = None
        elif head == "elements":
            elements = rest.split()
            current = None
        elif head == "unit":
            unit = rest.strip()
            current = None
        elif head == "zero":
            zero = rest.strip()
            current = None
        elif line in ("leq", "mult", "imp"):
            current = line
            sections[current] = {}
        elif current is not None and ":" in line:
            x, _, row = line.partition(":")
            sections[current][x.strip()] = row.split()
        else:
            raise ModelFileError(f"line {lineno}: cannot read {raw!r}")
    if name is None or elements is None or unit is None or zero is None:
        raise ModelFileError("model file needs 'model', 'elements', 'unit' and 'zero' lines")
    for sec in ("leq", "mult"):
        if sec not in sections:
            raise ModelFileError(f"missing {sec} section")
    known = set(elements)
    for sec, rows in sections.items():
        if set(rows) != known:
            raise ModelFileError(f"{sec} section must have one row per element")
        for x, row in rows.items():
            bad = [v for v in row if v not in known]
            if bad:
                raise ModelFileError(f"{sec} row {x}: unknown element {bad[0]!r}")
            if sec != "leq" and len(row) != len(elements):
                raise ModelFileError(f"{sec} row {x} has {len(row)} entries, "
                                     f"expected {len(elements)}")
    try:
        return from_names(name, elements, unit, zero, sections["leq"], sections["mult"],
                          sections.get("imp"))
    except PocrimLawError as e:
        raise ModelFileError(f"{name}: {e}") from None


def dumps_model(m: PocrimTable, with_imp: bool = True) -> str:
    E = m.elements
    out = [f"model {m.name}", "elements " + " ".join(E),
           f"unit {E[m.unit]}", f"zero {E[m.zero]}", "leq"]
    for x in range(m.order):
        out.append(f"{E[x]}: " + " ".join(E[y] for y in range(m.order) if m.leq[x, y]))
    out.append("mult")
    for x in range(m.order):
        out.append(f"{E[x]}: " + " ".join(E[v] for v in m.mult[x]))
    if with_imp:
        out.append("imp")
        for x in range(m.order):
            out.append(f"{E[x]}: " + " ".join(E[v] for v in m.imp[x]))
    return "\n".join(out) + "\n"


def load_model(spec: str | Path) -> PocrimTable:
    """Load ``builtin:NAME`` or a model file path."""
    s = str(spec)
    if s.startswith("builtin:"):
        return builtin(s.split(":", 1)[1])
    try:
        return loads_model(Path(s).read_text())
    except OSError as e:
        raise ModelFileError(f"cannot read model file {s}: {e}") from None


def dump_model(m: PocrimTable, path: str | Path) -> None:
    Path(path).write_text(dumps_model(m))


def load_bank(directory: str | Path) -> list[PocrimTable]:
    """Every ``*.model`` file in ``directory``, sorted by file name."""
    return [loads_model(p.read_text()) for p in sorted(Path(directory).glob("*.model"))]
