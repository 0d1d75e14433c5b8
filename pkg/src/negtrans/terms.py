"""Linear lambda terms that elaborate into checkable proof trees.

Writing natural-deduction trees node by node is tedious, so corpus proofs
are authored as terms: hypotheses are variables, ``lam``/``app`` are the
implication rules, ``pair``/``split`` the tensor rules, and axioms and
lemmas are applied like functions. :func:`prove` elaborates a term into a
:class:`~negtrans.calculi.ProofTree`; hypotheses that a binder does not use
are absorbed with :func:`~negtrans.calculi.weaken_proof`.

Each hypothesis may be used at most once. Reusing one is caught here rather
than left for the checker, because the resulting error is far easier to read.
"""
from __future__ import annotations

import itertools
from dataclasses import replace
from typing import Mapping, Sequence

from .calculi import Axiom, LemmaRef, ProofTree, Rule, Sequent, weaken_proof
from .formula import BOT, Formula, Lolly, Tensor, substitute_many, to_text

_ids = itertools.count()


class TermError(TypeError):
    pass


class Term:
    type: Formula

    def __repr__(self) -> str:
        return f"<{type(self).__name__} : {to_text(self.type)}>"


class Hyp(Term):
    def __init__(self, formula: Formula, name: str | None = None):
        self.type = formula
        self.name = name or f"h{next(_ids)}"


class Lam(Term):
    def __init__(self, var: Hyp, body: Term):
        self.var, self.body = var, body
        self.type = Lolly(var.type, body.type)


class App(Term):
    def __init__(self, fn: Term, arg: Term):
        if not isinstance(fn.type, Lolly):
            raise TermError(f"applying a non-implication {to_text(fn.type)}")
        if fn.type.left != arg.type:
            raise TermError(f"argument {to_text(arg.type)} does not match "
                            f"premise of {to_text(fn.type)}")
        self.fn, self.arg = fn, arg
        self.type = fn.type.right


class Pair(Term):
    def __init__(self, left: Term, right: Term):
        self.left, self.right = left, right
        self.type = Tensor(left.type, right.type)


class Split(Term):
    def __init__(self, pair: Term, a: Hyp, b: Hyp, body: Term):
        if pair.type != Tensor(a.type, b.type):
            raise TermError(f"cannot split {to_text(pair.type)} into "
                            f"{to_text(a.type)} and {to_text(b.type)}")
        self.pair, self.a, self.b, self.body = pair, a, b, body
        self.type = body.type


class AxiomApp(Term):
    """An axiom instance ``args |- type`` with its premises supplied by terms."""

    def __init__(self, schema: str, args: Sequence[Term], conclusion: Formula):
        self.schema, self.args = schema, tuple(args)
        self.type = conclusion


class LemmaApp(Term):
    def __init__(self, lemma: str, sigma: Mapping[str, Formula], formula: Formula,
                 args: Sequence[Term]):
        self.lemma = lemma
        self.sigma = tuple(sorted(sigma.items()))
        self.instance = substitute_many(formula, dict(sigma))
        t = self.instance
        for a in args:
            if not isinstance(t, Lolly) or t.left != a.type:
                raise TermError(f"lemma {lemma}: argument {to_text(a.type)} does not fit "
                                f"{to_text(t)}")
            t = t.right
        self.args = tuple(args)
        self.type = t


# ---------------------------------------------------------------------------
# Constructors

def hyp(formula: Formula, name: str | None = None) -> Hyp:
    return Hyp(formula, name)


def lam(var: Hyp, body: Term) -> Lam:
    return Lam(var, body)


def app(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


def pair(left: Term, right: Term) -> Pair:
    return Pair(left, right)


def split(p: Term, body_fn) -> Split:
    """``split(p, lambda a, b: body)`` destructures a tensor."""
    if not isinstance(p.type, Tensor):
        raise TermError(f"cannot split non-tensor {to_text(p.type)}")
    a, b = Hyp(p.type.left), Hyp(p.type.right)
    return Split(p, a, b, body_fn(a, b))


def fn(premise: Formula, body_fn) -> Lam:
    """``fn(A, lambda x: body)`` is ``lam(x:A, body)``."""
    x = Hyp(premise)
    return Lam(x, body_fn(x))


def cwc(a: Term, f: Term) -> AxiomApp:
    """From ``A`` and ``A -> B`` obtain ``B * (B -> A)``."""
    if not (isinstance(f.type, Lolly) and f.type.left == a.type):
        raise TermError(f"cwc: {to_text(f.type)} is not an implication from {to_text(a.type)}")
    b = f.type.right
    return AxiomApp("CWC", (a, f), Tensor(b, Lolly(b, a.type)))


def efq(t: Term, goal: Formula) -> AxiomApp:
    if t.type != BOT:
        raise TermError(f"efq needs bot, got {to_text(t.type)}")
    return AxiomApp("EFQ", (t,), goal)


def dne(t: Term) -> AxiomApp:
    f = t.type
    if not (isinstance(f, Lolly) and f.right == BOT and isinstance(f.left, Lolly)
            and f.left.right == BOT):
        raise TermError(f"dne needs a double negation, got {to_text(f)}")
    return AxiomApp("DNE", (t,), f.left.left)


def con(t: Term) -> AxiomApp:
    return AxiomApp("CON", (t,), Tensor(t.type, t.type))


# ---------------------------------------------------------------------------
# Elaboration

def _ctx(used: list[Hyp]) -> list[Formula]:
    return [h.type for h in used]


def _remove(used: list[Hyp], h: Hyp) -> bool:
    for i, u in enumerate(used):
        if u is h:
            del used[i]
            return True
    return False


def _merge(*parts: list[Hyp]) -> list[Hyp]:
    out: list[Hyp] = []
    for part in parts:
        for h in part:
            if any(h is u for u in out):
                raise TermError(f"hypothesis {h.name} : {to_text(h.type)} used twice")
            out.append(h)
    return out


def elaborate(t: Term) -> tuple[ProofTree, list[Hyp]]:
    if isinstance(t, Hyp):
        return Axiom("ASM", Sequent([t.type], t.type)), [t]
    if isinstance(t, Lam):
        tree, used = elaborate(t.body)
        used = list(used)
        if not _remove(used, t.var):
            tree = weaken_proof(tree, t.var.type)
        return Rule("LollyI", Sequent(_ctx(used), t.type), (tree,)), used
    if isinstance(t, App):
        ta, ua = elaborate(t.arg)
        tf, uf = elaborate(t.fn)
        used = _merge(ua, uf)
        return Rule("LollyE", Sequent(_ctx(used), t.type), (ta, tf)), used
    if isinstance(t, Pair):
        tl, ul = elaborate(t.left)
        tr, ur = elaborate(t.right)
        used = _merge(ul, ur)
        return Rule("TensorI", Sequent(_ctx(used), t.type), (tl, tr)), used
    if isinstance(t, Split):
        tp, up = elaborate(t.pair)
        tb, ub = elaborate(t.body)
        ub = list(ub)
        for h in (t.a, t.b):
            if not _remove(ub, h):
                tb = weaken_proof(tb, h.type)
        used = _merge(up, ub)
        return Rule("TensorE", Sequent(_ctx(used), t.type), (tp, tb)), used
    if isinstance(t, AxiomApp):
        direct = [a for a in t.args if isinstance(a, Hyp)]
        plugged = [a for a in t.args if not isinstance(a, Hyp)]
        tree: ProofTree = Axiom(t.schema, Sequent([a.type for a in t.args], t.type))
        ctx = [a.type for a in t.args]
        for a in reversed(plugged):
            ctx.remove(a.type)
            tree = Rule("LollyI", Sequent(ctx, Lolly(a.type, tree.conclusion.conclusion)), (tree,))
        used = _merge(direct)
        return _apply(tree, plugged, used)
    if isinstance(t, LemmaApp):
        tree = LemmaRef(t.lemma, t.sigma, Sequent([], t.instance))
        return _apply(tree, t.args, [])
    raise TermError(f"not a term: {t!r}")


def _apply(tree: ProofTree, args: Sequence[Term], used: list[Hyp]):
    for a in args:
        ta, ua = elaborate(a)
        used = _merge(ua, used)
        goal = tree.conclusion.conclusion.right
        tree = Rule("LollyE", Sequent(_ctx(used), goal), (ta, tree))
    return tree, used


def prove(term: Term, givens: Sequence[Hyp] = ()) -> ProofTree:
    """Elaborate ``term`` into a proof of ``givens |- term.type``."""
    tree, used = elaborate(term)
    used = list(used)
    for g in givens:
        if not _remove(used, g):
            tree = weaken_proof(tree, g.type)
    if used:
        names = ", ".join(f"{h.name} : {to_text(h.type)}" for h in used)
        raise TermError(f"free hypotheses not among the givens: {names}")
    return replace(tree, conclusion=Sequent([g.type for g in givens], term.type))
