"""The shipped derivations, authored as linear terms.

Every ``@entry`` parses its statement, binds one hypothesis per context
formula (in the order written), elaborates the returned term into a proof
tree and banks the closed form of the statement so later entries can cite
it with :func:`use`. Steps that a line proof waves through as routine are
spelled out inline as sub-terms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from ..calculi import Calculus, ProofTree, Sequent, lemma_ids, parse_sequent, sequent_to_formula
from ..formula import BOT, Formula, neg, parse_core, to_text
from ..terms import (
    LemmaApp, Term, TermError, app, con, cwc, efq, fn, hyp, pair, prove, split,
)


@dataclass(frozen=True)
class Authored:
    id: str
    calculus: Calculus
    statement: str
    sequent: Sequent
    ref: str
    tree: ProofTree
    depends_on: tuple[str, ...]


ENTRIES: list[Authored] = []
_BANK: dict[str, Formula] = {}


def F(text: str) -> Formula:
    return parse_core(text)


def entry(id: str, calculus: str, statement: str, ref: str):
    def register(build: Callable[..., Term]) -> Callable[..., Term]:
        seq = parse_sequent(statement)
        givens = [hyp(f) for f in seq.context]
        term = build(*givens)
        if term.type != seq.conclusion:
            raise TermError(f"{id}: term proves {to_text(term.type)}, "
                            f"statement needs {to_text(seq.conclusion)}")
        tree = prove(term, givens)
        _BANK[id] = sequent_to_formula(seq)
        ENTRIES.append(Authored(id, Calculus.parse(calculus), statement, seq, ref, tree,
                                tuple(lemma_ids(tree))))
        return build
    return register


def use(lemma: str, sigma: Mapping[str, str | Formula] | None = None, *args: Term) -> Term:
    """Cite a banked entry under a substitution and apply it to ``args``."""
    if lemma not in _BANK:
        raise TermError(f"lemma {lemma!r} is not banked yet")
    s = {v: F(g) if isinstance(g, str) else g for v, g in (sigma or {}).items()}
    return LemmaApp(lemma, s, _BANK[lemma], args)


def dn(t: Term) -> Term:
    """``A |- A^^``."""
    return fn(neg(t.type), lambda n: app(n, t))


def const(a: Formula, b: Formula) -> Term:
    """The closed term ``A -> B -> A``."""
    return fn(a, lambda x: fn(b, lambda _: x))


def absurd(goal: Formula) -> Term:
    """``bot -> goal``."""
    return fn(BOT, lambda z: efq(z, goal))


A, B, C = F("A"), F("B"), F("C")

# ---------------------------------------------------------------------------
# Weakest common strengthening


@entry("cwc-lub", "LLi", "C -> A, C -> B, C |- A * (A -> B)", "Lemma cwc-lub")
def _cwc_lub(g1, g2, c):
    return split(cwc(c, g1), lambda a, k: pair(a, fn(A, lambda x: app(g2, app(k, x)))))


# ---------------------------------------------------------------------------
# Basic affine facts

@entry("ali-basic-i", "ALi", "A |- B | A", "Lemma ali-basic-lemma (i)")
def _ali_i(a):
    return fn(F("A -> B"), lambda f: app(f, a))


@entry("ali-basic-i-bot", "ALi", "A |- A^^", "Lemma ali-basic-lemma (i), case B = bot")
def _ali_i_bot(a):
    return use("ali-basic-i", {"B": "bot"}, a)


@entry("ali-basic-ii", "ALi", "A |- B => A", "Lemma ali-basic-lemma (ii)")
def _ali_ii(a):
    return fn(B, lambda b: pair(b, a))


@entry("ali-basic-iii-lr", "ALi", "A * B |- A * (A => B)", "Lemma ali-basic-lemma (iii)")
def _ali_iii_lr(p):
    return split(p, lambda a, b: pair(a, fn(A, lambda a2: pair(a2, b))))


@entry("ali-basic-iii-rl", "ALi", "A * (A => B) |- A * B", "Lemma ali-basic-lemma (iii)")
def _ali_iii_rl(p):
    return split(p, lambda a, f: app(f, a))


@entry("ali-basic-iv", "ALi", "C | (A -> B) |- (C | A) -> (C | B)", "Lemma ali-basic-lemma (iv)")
def _ali_iv(h):
    return fn(F("(A -> C) -> C"), lambda g: fn(F("B -> C"), lambda k: app(
        h, fn(F("A -> B"), lambda f: app(g, fn(A, lambda a: app(k, app(f, a))))))))


@entry("ali-basic-v-lr", "ALi", "(A^ -> B^)^^ |- A^ -> B^", "Lemma ali-basic-lemma (v)")
def _ali_v_lr(h):
    return fn(F("A^"), lambda na: fn(B, lambda b: app(
        h, fn(F("A^ -> B^"), lambda f: app(f, na, b)))))


@entry("ali-basic-v-rl", "ALi", "A^ -> B^ |- (A^ -> B^)^^", "Lemma ali-basic-lemma (v)")
def _ali_v_rl(g):
    return dn(g)


@entry("ali-basic-vi-lr", "ALi", "A^^ -> B^^ |- A -> B^^", "Lemma ali-basic-lemma (vi)")
def _ali_vi_lr(g):
    return fn(A, lambda a: app(g, dn(a)))


@entry("ali-basic-vi-rl", "ALi", "A -> B^^ |- A^^ -> B^^", "Lemma ali-basic-lemma (vi)")
def _ali_vi_rl(g):
    return fn(F("A^^"), lambda h: fn(F("B^"), lambda nb: app(
        h, fn(A, lambda a: app(g, a, nb)))))


@entry("ali-basic-vii-lr", "ALi", "(A^^ * B^^)^ |- (A * B)^", "Lemma ali-basic-lemma (vii)")
def _ali_vii_lr(h):
    return fn(F("A * B"), lambda p: split(p, lambda a, b: app(h, pair(dn(a), dn(b)))))


@entry("ali-basic-vii-rl", "ALi", "(A * B)^ |- (A^^ * B^^)^", "Lemma ali-basic-lemma (vii)")
def _ali_vii_rl(g):
    return fn(F("A^^ * B^^"), lambda p: split(p, lambda x, y: app(
        x, fn(A, lambda a: app(y, fn(B, lambda b: app(g, pair(a, b))))))))


@entry("ali-basic-viii-lr", "ALi", "(A * B)^^ |- (A^^ -> B^)^", "Lemma ali-basic-lemma (viii)")
def _ali_viii_lr(h):
    return fn(F("A^^ -> B^"), lambda f: app(
        h, fn(F("A * B"), lambda p: split(p, lambda a, b: app(f, dn(a), b)))))


@entry("ali-basic-viii-rl", "ALi", "(A^^ -> B^)^ |- (A * B)^^", "Lemma ali-basic-lemma (viii)")
def _ali_viii_rl(g):
    return fn(F("(A * B)^"), lambda k: app(g, fn(F("A^^"), lambda x: fn(B, lambda b: app(
        x, fn(A, lambda a: app(k, pair(a, b))))))))


# ---------------------------------------------------------------------------
# Contraction and its relatives

@entry("con-contraction", "IL", "A -> A -> B |- A -> B",
       "Contraction rule from CON (contraction discussion)")
def _con_contraction(g):
    return fn(A, lambda a: split(con(a), lambda x, y: app(g, x, y)))


@entry("contraction-con", "IL", "(A -> A -> A * A) -> A -> A * A |- A -> A * A",
       "CON from the contraction rule (contraction discussion)")
def _contraction_con(h):
    return app(h, fn(A, lambda x: fn(A, lambda y: pair(x, y))))


@entry("cwc-from-con", "IL", "A, A -> B |- B * (B -> A)", "CON entails CWC (introduction)")
def _cwc_from_con(a, f):
    return split(con(a), lambda a1, a2: pair(app(f, a1), fn(B, lambda _: a2)))


# ---------------------------------------------------------------------------
# Pre-conjunction as the additive conjunction

@entry("and-lc-proj-left", "ALi", "A & B |- A", "(&, l_c) discussion: left projection")
def _and_proj_left(m):
    return split(m, lambda a, _: a)


@entry("and-lc-proj-right", "ALi", "A & B |- B", "(&, l_c) discussion: right projection")
def _and_proj_right(m):
    return split(m, lambda a, f: app(f, a))


@entry("and-lc-from-cwc", "LLi", "B & A |- A & B",
       "(&, l_c) discussion: the rule follows from CWC via cwc-lub")
def _and_lc_from_cwc(m):
    return use("cwc-lub", {"C": "B & A"},
               use("and-lc-proj-right", {"A": "B", "B": "A"}),
               use("and-lc-proj-left", {"A": "B", "B": "A"}),
               m)


@entry("cwc-from-and-lc", "LLi", "A, A -> B |- B * (B -> A)",
       "(&, l_c) discussion: CWC follows from the rule")
def _cwc_from_and_lc(a, f):
    return use("and-lc-from-cwc", {"A": "B", "B": "A"}, pair(a, f))


# ---------------------------------------------------------------------------
# Identities on the derived connectives

@entry("lemma156", "LLi", "B | (A => B) |- A => B", "Lemma lemma156")
def _lemma156(h):
    M = F("A => B")

    def body(a):
        d1 = fn(A, lambda a1: fn(M, lambda x: split(app(x, a1), lambda _, b: b)))
        return split(cwc(a, d1), lambda k, r: split(
            cwc(app(h, k), use("ali-basic-ii", {"A": "B", "B": "A"})),
            lambda x, k2: app(x, app(r, k2))))
    return fn(A, body)


@entry("guess", "LLi", "A -> C, C -> B |- (A -> B) * (A & B -> C)", "Lemma guess")
def _guess(g1, g2):
    d1 = fn(F("A -> C"), lambda f: fn(A, lambda a: app(g2, app(f, a))))
    return split(cwc(g1, d1), lambda p, q: pair(
        p, fn(F("A & B"), lambda m: split(m, lambda a, f: app(q, f, a)))))


@entry("lemma165", "LLi", "B | A |- A^ => B", "Lemma lemma165")
def _lemma165(h):
    d1 = fn(A, lambda a: fn(F("A^"), lambda na: efq(app(na, a), F("A^ * B"))))
    d2 = fn(F("(A^ => B) -> B"), lambda k: app(h, fn(A, lambda a: app(k, app(d1, a)))))
    return use("lemma156", {"A": "A^"}, d2)


@entry("c-demorgan-rl", "LLi", "A => B^ |- (A & B)^", "Theorem c-demorgan, easy direction")
def _c_demorgan_rl(g):
    return fn(F("A & B"), lambda m: split(m, lambda a, f: split(
        app(g, a), lambda a2, nb: app(nb, app(f, a2)))))


@entry("c-demorgan-lr", "LLi", "(A & B)^ |- A => B^", "Theorem c-demorgan")
def _c_demorgan_lr(h):
    def not_b(f):
        return fn(B, lambda b: app(h, cwc(b, f)))

    def body(a):
        return split(cwc(a, const(A, B)), lambda f, x: split(
            app(use("lemma165", {"A": "B", "B": "A"}), x, not_b(f)),
            lambda nb, a2: pair(a2, nb)))
    return fn(A, body)


@entry("strong-imp-sym-lr", "LLi", "A => B^ |- B => A^", "Corollary lemma48459")
def _strong_imp_sym_lr(g):
    n = use("c-demorgan-rl", {}, g)
    swapped = fn(F("B & A"), lambda m: split(m, lambda b, f: app(n, cwc(b, f))))
    return use("c-demorgan-lr", {"A": "B", "B": "A"}, swapped)


@entry("strong-imp-sym-rl", "LLi", "B => A^ |- A => B^", "Corollary lemma48459")
def _strong_imp_sym_rl(g):
    return use("strong-imp-sym-lr", {"A": "B", "B": "A"}, g)


@entry("a-lolly-b-not-a", "LLi", "A # B |- B # A", "Theorem a-lolly-b-not-a")
def _a_lolly_b_not_a(h):
    to_imp = fn(F("A^"), lambda na: fn(A, lambda a: efq(app(na, a), B)))
    return split(h, lambda na, f: split(cwc(na, to_imp), lambda g, r: pair(
        fn(B, lambda b: split(cwc(b, f), lambda a, g2: app(r, g2, a))), g)))


@entry("thm139", "LLi", "|- (A^^ -> A)^^", "Corollary thm139")
def _thm139():
    X = F("A^ => A")
    XA = F("(A^ => A) -> A")
    to_x = fn(F("A^^"), lambda dd: fn(F("A^"), lambda na: efq(app(dd, na), F("A^ * A"))))

    def body(n):
        d1 = fn(XA, lambda k: app(n, fn(F("A^^"), lambda dd: app(k, app(to_x, dd)))))
        weak = fn(A, lambda a: fn(X, lambda _: a))
        nor = use("a-lolly-b-not-a", {"A": XA, "B": A}, pair(d1, weak))
        return split(nor, lambda na, y: split(
            app(use("lemma156", {"A": "A^", "B": "A"}, y), na),
            lambda na2, a: app(na2, a)))
    return fn(F("(A^^ -> A)^"), body)


@entry("k-negated-rl", "LLi", "A # B |- (A | B)^", "Theorem k-negated, easy direction")
def _k_negated_rl(h):
    return fn(F("A | B"), lambda k: split(h, lambda na, f: app(na, app(k, f))))


@entry("k-negated-lr", "LLi", "(A | B)^ |- A # B", "Theorem k-negated")
def _k_negated_lr(n):
    d2 = fn(F("(A | B)^"), lambda n1: fn(B, lambda b: efq(
        app(n1, fn(F("B -> A"), lambda f: app(f, b))), A)))
    return split(cwc(n, d2), lambda f, r: pair(
        fn(A, lambda a: split(cwc(a, const(A, B)), lambda f2, k: app(r, f2, k))), f))


@entry("k-comm-neg-lr", "LLi", "(A | B)^ |- (B | A)^", "Theorem on commutativity of | under negation")
def _k_comm_lr(n):
    return use("k-negated-rl", {"A": "B", "B": "A"},
               use("a-lolly-b-not-a", {}, use("k-negated-lr", {}, n)))


@entry("k-comm-neg-rl", "LLi", "(B | A)^ |- (A | B)^", "Theorem on commutativity of | under negation")
def _k_comm_rl(n):
    return use("k-comm-neg-lr", {"A": "B", "B": "A"}, n)


# ---------------------------------------------------------------------------
# Double negation as a homomorphism

@entry("thm-lolly-not-not-rl", "LLi", "(A -> B)^^ |- A^^ -> B^^",
       "Theorem thm-lolly-not-not, affine direction")
def _lnn_rl(h):
    return use("ali-basic-iv", {"C": "bot"}, h)


@entry("thm-lolly-not-not-lr", "LLi", "A^^ -> B^^ |- (A -> B)^^", "Theorem thm-lolly-not-not")
def _lnn_lr(g):
    def refute(n):
        d3 = fn(F("B^^ -> B"), lambda e: app(n, fn(A, lambda a: app(e, app(g, dn(a))))))
        return app(use("thm139", {"A": "B"}), d3)
    return fn(F("(A -> B)^"), refute)


@entry("guess-il-lr", "LLi", "A^ |- (A -> B) * (A & B)^", "Lemma guess-il")
def _guess_il_lr(na):
    return use("guess", {"C": "bot"}, na, absurd(B))


@entry("guess-il-rl", "LLi", "(A -> B) * (A & B)^ |- A^", "Lemma guess-il")
def _guess_il_rl(p):
    return split(p, lambda f, n: fn(A, lambda a: app(n, pair(a, f))))


@entry("lolly-plus-rl", "LLi", "A^ * B^ |- (A^ -> B)^", "Theorem lolly-plus, easy direction")
def _lolly_plus_rl(p):
    return fn(F("A^ -> B"), lambda g: split(p, lambda na, nb: app(nb, app(g, na))))


@entry("lolly-plus-lr", "LLi", "(A^ -> B)^ |- A^ * B^", "Theorem lolly-plus")
def _lolly_plus_lr(n):
    d0 = fn(F("A^^ => (A^ -> B)^"), lambda w: fn(A, lambda a: split(
        app(w, dn(a)), lambda dd, y: app(y, fn(F("A^"), lambda na: efq(app(dd, na), B))))))

    def finish(p, q):
        d2 = fn(F("A^ & B"), lambda m: split(m, lambda na, g: app(p, g, na)))
        d4 = use("c-demorgan-lr", {"A": "A^"}, d2)
        d5 = fn(F("A^^ & (A^ -> B)"), lambda m: split(m, lambda x, f: app(q, cwc(x, f))))
        d6 = use("c-demorgan-lr", {"A": "A^^", "B": "A^ -> B"}, d5)
        return app(d4, app(d0, d6))
    return split(use("guess-il-lr", {"A": "A^ -> B", "B": "A^^"}, n), finish)


@entry("main-thm-n-trans-lr", "LLi", "(A * B)^^ |- A^^ * B^^", "Theorem main-thm-n-trans")
def _main_lr(h):
    return use("lolly-plus-lr", {"A": "A^", "B": "B^"}, use("ali-basic-viii-lr", {}, h))


@entry("main-thm-n-trans-rl", "LLi", "A^^ * B^^ |- (A * B)^^", "Theorem main-thm-n-trans")
def _main_rl(p):
    return use("ali-basic-viii-rl", {}, use("lolly-plus-rl", {"A": "A^", "B": "B^"}, p))


# ---------------------------------------------------------------------------
# De Morgan dualities

@entry("demorgan-1-lr", "LLi", "(A * B)^ |- A -> B^", "Theorem thm-main-demorgan, row 1")
def _dm1_lr(n):
    return fn(A, lambda a: fn(B, lambda b: app(n, pair(a, b))))


@entry("demorgan-1-rl", "LLi", "A -> B^ |- (A * B)^", "Theorem thm-main-demorgan, row 1")
def _dm1_rl(g):
    return fn(F("A * B"), lambda p: split(p, lambda a, b: app(g, a, b)))


def _contra_dd(k: Term, x: str, y: str) -> Term:
    """From ``y^ -> x^`` build ``x^^ -> y^^``."""
    return fn(F(f"({x})^^"), lambda dd: fn(F(f"({y})^"), lambda ny: app(dd, app(k, ny))))


@entry("demorgan-2-lr", "LLi", "(A -> B)^ |- A^^ * B^", "Theorem thm-main-demorgan, row 2")
def _dm2_lr(n):
    refute = fn(F("B^ -> A^"), lambda k: app(use("thm-lolly-not-not-lr", {}, _contra_dd(k, "A", "B")), n))
    return split(use("lolly-plus-lr", {"A": "B", "B": "A^"}, refute),
                 lambda nb, dd: pair(dd, nb))


@entry("demorgan-2-rl", "LLi", "A^^ * B^ |- (A -> B)^", "Theorem thm-main-demorgan, row 2")
def _dm2_rl(p):
    return fn(F("A -> B"), lambda f: split(p, lambda dd, nb: app(
        dd, fn(A, lambda a: app(nb, app(f, a))))))


@entry("demorgan-3-lr", "LLi", "(A & B)^ |- A => B^", "Theorem thm-main-demorgan, row 3")
def _dm3_lr(n):
    return use("c-demorgan-lr", {}, n)


@entry("demorgan-3-rl", "LLi", "A => B^ |- (A & B)^", "Theorem thm-main-demorgan, row 3")
def _dm3_rl(g):
    return use("c-demorgan-rl", {}, g)


@entry("demorgan-4-lr", "LLi", "(A => B)^ |- A^^ & B^", "Theorem thm-main-demorgan, row 4")
def _dm4_lr(n):
    return split(use("demorgan-2-lr", {"B": "A * B"}, n), lambda dd, m: pair(
        dd, fn(F("A^^"), lambda d2: fn(B, lambda b: app(d2, fn(A, lambda a: app(m, pair(a, b))))))))


@entry("demorgan-4-rl", "LLi", "A^^ & B^ |- (A => B)^", "Theorem thm-main-demorgan, row 4")
def _dm4_rl(p):
    return fn(F("A => B"), lambda f: split(p, lambda dd, g: app(dd, fn(A, lambda a: split(
        app(f, a), lambda a2, b: app(g, dn(a2), b))))))


@entry("demorgan-5-lr", "LLi", "(A & B)^ |- A^ | B^", "Theorem thm-main-demorgan, row 5")
def _dm5_lr(n):
    return fn(F("B^ -> A^"), lambda k: fn(A, lambda a: app(
        use("thm-lolly-not-not-lr", {}, _contra_dd(k, "A", "B")),
        fn(F("A -> B"), lambda f: app(n, pair(a, f))))))


@entry("demorgan-5-rl", "LLi", "A^ | B^ |- (A & B)^", "Theorem thm-main-demorgan, row 5")
def _dm5_rl(g):
    return fn(F("A & B"), lambda m: split(m, lambda a, f: app(
        g, fn(F("B^"), lambda nb: fn(A, lambda a2: app(nb, app(f, a2)))), a)))


@entry("demorgan-6-lr", "LLi", "(A | B)^ |- A^ & B^", "Theorem thm-main-demorgan, row 6")
def _dm6_lr(n):
    return split(use("k-negated-lr", {}, n), lambda na, f: pair(
        na, fn(F("A^"), lambda na2: fn(B, lambda b: app(na2, app(f, b))))))


@entry("demorgan-6-rl", "LLi", "A^ & B^ |- (A | B)^", "Theorem thm-main-demorgan, row 6")
def _dm6_rl(p):
    def body(na, g):
        dd = use("thm-lolly-not-not-lr", {"A": "B", "B": "A"}, _contra_dd(g, "B", "A"))
        return use("demorgan-2-rl", {"A": "B -> A", "B": "A"}, pair(dd, na))
    return split(p, body)


@entry("demorgan-7-lr", "LLi", "(A # B)^ |- A^ => B^^", "Theorem thm-main-demorgan, row 7")
def _dm7_lr(n):
    meet = fn(F("A^ & B^"), lambda m: app(
        n, use("k-negated-lr", {}, use("demorgan-6-rl", {}, m))))
    return use("c-demorgan-lr", {"A": "A^", "B": "B^"}, meet)


@entry("demorgan-7-rl", "LLi", "A^ => B^^ |- (A # B)^", "Theorem thm-main-demorgan, row 7")
def _dm7_rl(g):
    n = use("c-demorgan-rl", {"A": "A^", "B": "B^"}, g)
    return fn(F("A # B"), lambda x: app(n, use("demorgan-6-lr", {}, use("k-negated-rl", {}, x))))

