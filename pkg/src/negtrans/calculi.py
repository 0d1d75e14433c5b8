"""Sequents, the six calculi and a checker for natural-deduction proof trees."""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .formula import (
    BOT, Formula, Lolly, Tensor, substitute_many, to_text,
)


class Calculus(enum.Enum):
    ALi = "ALi"
    ALc = "ALc"
    LLi = "LLi"
    LLc = "LLc"
    IL = "IL"
    CL = "CL"

    @property
    def schemata(self) -> frozenset[str]:
        return SCHEMATA[self]

    def includes(self, other: "Calculus") -> bool:
        """True when every schema of ``other`` is a schema of ``self``."""
        return SCHEMATA[other] <= SCHEMATA[self]

    @classmethod
    def parse(cls, name: str) -> "Calculus":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown calculus {name!r}") from None


SCHEMATA = {
    Calculus.ALi: frozenset({"ASM", "EFQ"}),
    Calculus.ALc: frozenset({"ASM", "EFQ", "DNE"}),
    Calculus.LLi: frozenset({"ASM", "CWC", "EFQ"}),
    Calculus.LLc: frozenset({"ASM", "CWC", "EFQ", "DNE"}),
    Calculus.IL: frozenset({"ASM", "CON", "EFQ"}),
    Calculus.CL: frozenset({"ASM", "CON", "EFQ", "DNE"}),
}
SCHEMA_NAMES = ("ASM", "CON", "EFQ", "DNE", "CWC")
RULE_NAMES = ("LollyI", "LollyE", "TensorI", "TensorE")
RULE_ARITY = {"LollyI": 1, "LollyE": 2, "TensorI": 2, "TensorE": 2}


class Sequent:
    """``context |- conclusion`` with the context treated as a multiset.

    The given context order is kept for display only; equality and hashing
    ignore it.
    """

    __slots__ = ("context", "conclusion", "_bag")

    def __init__(self, context: Iterable[Formula], conclusion: Formula):
        self.context = tuple(context)
        self.conclusion = conclusion
        self._bag = Counter(self.context)

    @property
    def bag(self) -> Counter:
        return self._bag

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sequent):
            return NotImplemented
        return self.conclusion == other.conclusion and self._bag == other._bag

    def __hash__(self) -> int:
        return hash((self.conclusion, frozenset(self._bag.items())))

    def __repr__(self) -> str:
        return f"Sequent({to_sequent_text(self)!r})"

    def with_context(self, context: Iterable[Formula]) -> "Sequent":
        return Sequent(context, self.conclusion)

    def add(self, *formulas: Formula) -> "Sequent":
        return Sequent(self.context + formulas, self.conclusion)

    def substitute(self, sigma: Mapping[str, Formula]) -> "Sequent":
        return Sequent((substitute_many(f, sigma) for f in self.context),
                       substitute_many(self.conclusion, sigma))


def to_sequent_text(s: Sequent) -> str:
    ctx = ", ".join(to_text(f) for f in s.context)
    return f"{ctx} |- {to_text(s.conclusion)}" if ctx else f"|- {to_text(s.conclusion)}"


def parse_sequent(text: str) -> Sequent:
    from .formula import parse_core

    if "|-" not in text:
        raise ValueError(f"sequent has no '|-': {text!r}")
    left, right = text.split("|-", 1)
    left = left.strip()
    if left in ("", '""'):
        context: list[Formula] = []
    else:
        context = [parse_core(part) for part in left.split(",")]
    return Sequent(context, parse_core(right))


# ---------------------------------------------------------------------------
# Proof trees

@dataclass(frozen=True, eq=False)
class Rule:
    name: str
    conclusion: Sequent
    premises: tuple["ProofTree", ...] = ()


@dataclass(frozen=True, eq=False)
class Axiom:
    schema: str
    conclusion: Sequent


@dataclass(frozen=True, eq=False)
class LemmaRef:
    lemma: str
    substitution: tuple[tuple[str, Formula], ...]
    conclusion: Sequent

    @property
    def sigma(self) -> dict[str, Formula]:
        return dict(self.substitution)


ProofTree = Rule | Axiom | LemmaRef


@dataclass(frozen=True)
class Lemma:
    """A verified closed theorem available for citation."""

    id: str
    formula: Formula
    calculus: Calculus


class ProofError(Exception):
    """A proof tree was rejected.

    ``kind`` is one of ``wrong-arity``, ``unknown-rule``, ``context-mismatch``,
    ``conclusion-mismatch``, ``schema-not-in-calculus``, ``axiom-mismatch``,
    ``unknown-lemma``, ``lemma-calculus``, ``substitution-mismatch``;
    ``path`` lists premise indices from the root.
    """

    def __init__(self, kind: str, path: Sequence[int], reason: str):
        self.kind = kind
        self.path = tuple(path)
        self.reason = reason
        where = "/".join(map(str, self.path)) or "root"
        super().__init__(f"{kind} at {where}: {reason}")


def _bag_text(bag: Counter) -> str:
    items = sorted(to_text(f) for f in bag.elements())
    return "{" + ", ".join(items) + "}"


# ---------------------------------------------------------------------------
# Axiom matching

def match_axiom(s: Sequent, schema: str) -> dict | None:
    """Try to read ``s`` as an instance of ``schema``.

    Returns the instantiation (``gamma`` plus the schema's metavariables) or
    ``None``. Candidates are tried in context order, so the result is
    deterministic.
    """
    bag = s.bag
    concl = s.conclusion
    if schema == "ASM":
        if bag[concl] > 0:
            return {"A": concl, "gamma": _minus(bag, [concl])}
        return None
    if schema == "CON":
        if isinstance(concl, Tensor) and concl.left == concl.right and bag[concl.left] > 0:
            return {"A": concl.left, "gamma": _minus(bag, [concl.left])}
        return None
    if schema == "EFQ":
        if bag[BOT] > 0:
            return {"A": concl, "gamma": _minus(bag, [BOT])}
        return None
    if schema == "DNE":
        dn = Lolly(Lolly(concl, BOT), BOT)
        if bag[dn] > 0:
            return {"A": concl, "gamma": _minus(bag, [dn])}
        return None
    if schema == "CWC":
        # Gamma, A, A -> B |- B * (B -> A)
        if not (isinstance(concl, Tensor) and isinstance(concl.right, Lolly)):
            return None
        b, a = concl.left, concl.right.right
        if concl.right.left != b:
            return None
        need = Counter([a, Lolly(a, b)])
        if all(bag[f] >= k for f, k in need.items()):
            return {"A": a, "B": b, "gamma": _minus(bag, [a, Lolly(a, b)])}
        return None
    raise ValueError(f"unknown axiom schema {schema!r}")


def _minus(bag: Counter, items: Iterable[Formula]) -> Counter:
    out = Counter(bag)
    out.subtract(items)
    return +out


# ---------------------------------------------------------------------------
# Checking

def check_proof(tree: ProofTree, calculus: Calculus | str,
                lemmas: Mapping[str, Lemma] | None = None) -> Sequent:
    """Check ``tree`` in ``calculus`` and return its root sequent.

    Raises :class:`ProofError` at the first bad node (pre-order, leftmost).
    """
    if isinstance(calculus, str):
        calculus = Calculus.parse(calculus)
    _check(tree, calculus, lemmas or {}, [])
    return tree.conclusion


def _check(t: ProofTree, calc: Calculus, lemmas: Mapping[str, Lemma], path: list[int]) -> None:
    if isinstance(t, Axiom):
        if t.schema not in SCHEMA_NAMES:
            raise ProofError("unknown-rule", path, f"no axiom schema {t.schema!r}")
        if t.schema not in calc.schemata:
            raise ProofError("schema-not-in-calculus", path,
                             f"{t.schema} is not an axiom of {calc.value}")
        if match_axiom(t.conclusion, t.schema) is None:
            raise ProofError("axiom-mismatch", path,
                             f"{to_sequent_text(t.conclusion)} is not an instance of {t.schema}")
        return
    if isinstance(t, LemmaRef):
        lemma = lemmas.get(t.lemma)
        if lemma is None:
            raise ProofError("unknown-lemma", path, f"no verified lemma {t.lemma!r}")
        if not calc.includes(lemma.calculus):
            raise ProofError("lemma-calculus", path,
                             f"lemma {t.lemma!r} was verified in {lemma.calculus.value}, "
                             f"which {calc.value} does not include")
        expected = substitute_many(lemma.formula, t.sigma)
        if expected != t.conclusion.conclusion:
            raise ProofError("substitution-mismatch", path,
                             f"lemma instance is {to_text(expected)}, "
                             f"node concludes {to_text(t.conclusion.conclusion)}")
        return
    if not isinstance(t, Rule):
        raise TypeError(f"not a proof tree: {t!r}")
    if t.name not in RULE_ARITY:
        raise ProofError("unknown-rule", path, f"no rule {t.name!r}")
    if len(t.premises) != RULE_ARITY[t.name]:
        raise ProofError("wrong-arity", path,
                         f"{t.name} takes {RULE_ARITY[t.name]} premises, got {len(t.premises)}")
    for i, p in enumerate(t.premises):
        _check(p, calc, lemmas, path + [i])
    _check_rule(t, path)


def _check_rule(t: Rule, path: list[int]) -> None:
    concl = t.conclusion
    prem = [p.conclusion for p in t.premises]

    def mismatch(expected: Formula, actual: Formula):
        raise ProofError("conclusion-mismatch", path,
                         f"{t.name} expected {to_text(expected)}, found {to_text(actual)}")

    def ctx_check(expected: Counter):
        if expected != concl.bag:
            raise ProofError("context-mismatch", path,
                             f"{t.name} expected context {_bag_text(expected)}, "
                             f"found {_bag_text(concl.bag)}")

    if t.name == "LollyI":
        (p,) = prem
        if not isinstance(concl.conclusion, Lolly):
            raise ProofError("conclusion-mismatch", path,
                             f"LollyI must conclude an implication, found {to_text(concl.conclusion)}")
        a, b = concl.conclusion.left, concl.conclusion.right
        if p.conclusion != b:
            mismatch(b, p.conclusion)
        if p.bag[a] < 1:
            raise ProofError("context-mismatch", path,
                             f"LollyI premise context {_bag_text(p.bag)} lacks {to_text(a)}")
        ctx_check(_minus(p.bag, [a]))
    elif t.name == "LollyE":
        pa, pf = prem
        want = Lolly(pa.conclusion, concl.conclusion)
        if pf.conclusion != want:
            mismatch(want, pf.conclusion)
        ctx_check(pa.bag + pf.bag)
    elif t.name == "TensorI":
        pa, pb = prem
        want = Tensor(pa.conclusion, pb.conclusion)
        if concl.conclusion != want:
            mismatch(want, concl.conclusion)
        ctx_check(pa.bag + pb.bag)
    elif t.name == "TensorE":
        pt, pc = prem
        if not isinstance(pt.conclusion, Tensor):
            raise ProofError("conclusion-mismatch", path,
                             f"TensorE major premise must be a tensor, found {to_text(pt.conclusion)}")
        if pc.conclusion != concl.conclusion:
            mismatch(concl.conclusion, pc.conclusion)
        a, b = pt.conclusion.left, pt.conclusion.right
        need = Counter([a, b])
        if any(pc.bag[f] < k for f, k in need.items()):
            raise ProofError("context-mismatch", path,
                             f"TensorE minor premise context {_bag_text(pc.bag)} lacks "
                             f"{to_text(a)} and {to_text(b)}")
        ctx_check(pt.bag + _minus(pc.bag, [a, b]))


def verify(tree: ProofTree, calculus: Calculus | str,
           lemmas: Mapping[str, Lemma] | None = None) -> bool:
    try:
        check_proof(tree, calculus, lemmas)
    except ProofError:
        return False
    return True


# ---------------------------------------------------------------------------
# Tree transformers

def weaken_proof(t: ProofTree, a: Formula) -> ProofTree:
    """Add ``a`` to the root context by threading it down one path."""
    concl = t.conclusion.add(a)
    if isinstance(t, (Axiom, LemmaRef)):
        return replace(t, conclusion=concl)
    first, *rest = t.premises
    return Rule(t.name, concl, (weaken_proof(first, a), *rest))


def substitute_proof(t: ProofTree, sigma: Mapping[str, Formula]) -> ProofTree:
    """Apply ``sigma`` to every sequent of ``t``."""
    if not sigma:
        return t
    concl = t.conclusion.substitute(sigma)
    if isinstance(t, Axiom):
        return Axiom(t.schema, concl)
    if isinstance(t, LemmaRef):
        inner = t.sigma
        composed = {v: substitute_many(g, sigma) for v, g in inner.items()}
        for v, g in sigma.items():
            composed.setdefault(v, g)
        return LemmaRef(t.lemma, tuple(sorted(composed.items())), concl)
    return Rule(t.name, concl, tuple(substitute_proof(p, sigma) for p in t.premises))


def sequent_to_formula(s: Sequent, order: Sequence[Formula] | None = None) -> Formula:
    """``A1, ..., An |- B`` becomes ``A1 -> ... -> An -> B``."""
    if order is None:
        order = s.context
    if Counter(order) != s.bag:
        raise ValueError("order does not enumerate the sequent's context")
    f = s.conclusion
    for a in reversed(order):
        f = Lolly(a, f)
    return f


def close_proof(t: ProofTree, order: Sequence[Formula] | None = None) -> ProofTree:
    """Discharge the whole context with LollyI, matching :func:`sequent_to_formula`."""
    s = t.conclusion
    order = list(s.context if order is None else order)
    if Counter(order) != s.bag:
        raise ValueError("order does not enumerate the sequent's context")
    tree = t
    for i in range(len(order) - 1, -1, -1):
        tree = Rule("LollyI", Sequent(order[:i], Lolly(order[i], tree.conclusion.conclusion)),
                    (tree,))
    return tree


def derived_rule_contraction(t: ProofTree, a: Formula, calculus: Calculus | str) -> ProofTree:
    """From a proof of ``Gamma, a, a |- B`` build one of ``Gamma, a |- B``.

    Uses a CON axiom for ``a |- a * a`` followed by TensorE, so ``calculus``
    must contain CON.
    """
    if isinstance(calculus, str):
        calculus = Calculus.parse(calculus)
    if "CON" not in calculus.schemata:
        raise ValueError(f"{calculus.value} has no contraction axiom")
    s = t.conclusion
    if s.bag[a] < 2:
        raise ValueError(f"context does not contain two copies of {to_text(a)}")
    con = Axiom("CON", Sequent([a], Tensor(a, a)))
    rest = list(s.context)
    rest.remove(a)
    return Rule("TensorE", Sequent(rest, s.conclusion), (con, t))


def iter_nodes(t: ProofTree, path: tuple[int, ...] = ()):
    """Yield ``(path, node)`` in pre-order."""
    yield path, t
    if isinstance(t, Rule):
        for i, p in enumerate(t.premises):
            yield from iter_nodes(p, path + (i,))


def replace_at(t: ProofTree, path: Sequence[int], new: ProofTree) -> ProofTree:
    if not path:
        return new
    i, *rest = path
    prems = list(t.premises)
    prems[i] = replace_at(prems[i], rest, new)
    return Rule(t.name, t.conclusion, tuple(prems))


def lemma_ids(t: ProofTree) -> list[str]:
    seen: list[str] = []
    for _, node in iter_nodes(t):
        if isinstance(node, LemmaRef) and node.lemma not in seen:
            seen.append(node.lemma)
    return seen


def tree_size(t: ProofTree) -> int:
    return sum(1 for _ in iter_nodes(t))
