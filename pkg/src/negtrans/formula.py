"""Formula language: core and surface ASTs, parser, printer, substitution.

The core language has atoms, ``bot``, tensor (``*``) and linear implication
(``->``). The surface language adds the derived forms: postfix negation
``^``, ``top``, pre-conjunction ``&``, pre-disjunction ``|``, strong
implication ``=>`` and NOR ``#``. :func:`desugar` maps surface to core.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence


class Formula:
    """Base class of all formula nodes (core and surface)."""

    __slots__ = ()

    # Authoring conveniences: a * b is tensor, a >> b is implication.
    def __mul__(self, other: "Formula") -> "Tensor":
        return Tensor(self, other)

    def __rshift__(self, other: "Formula") -> "Lolly":
        return Lolly(self, other)

    @property
    def perp(self) -> "Lolly":
        """``self -> bot`` as a core formula."""
        return Lolly(self, BOT)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    def __repr__(self) -> str:
        return "BOT"


@dataclass(frozen=True, slots=True)
class Tensor(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Lolly(Formula):
    left: Formula
    right: Formula


# Surface-only nodes.

@dataclass(frozen=True, slots=True)
class Neg(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class Top(Formula):
    def __repr__(self) -> str:
        return "TOP"


@dataclass(frozen=True, slots=True)
class Cap(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Cup(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class StrongImp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Nor(Formula):
    left: Formula
    right: Formula


BOT = Bottom()
TOP = Top()

CORE_TYPES = (Atom, Bottom, Tensor, Lolly)
BINARY_TYPES = (Tensor, Lolly, Cap, Cup, StrongImp, Nor)


class FormulaSyntaxError(ValueError):
    """Raised by :func:`parse`; ``pos`` is the character offset of the problem."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


def neg(a: Formula) -> Lolly:
    return Lolly(a, BOT)


def dneg(a: Formula) -> Lolly:
    return Lolly(Lolly(a, BOT), BOT)


def is_core(f: Formula) -> bool:
    if isinstance(f, (Atom, Bottom)):
        return True
    if isinstance(f, (Tensor, Lolly)):
        return is_core(f.left) and is_core(f.right)
    return False


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op>->|=>|\*|&|\||#|\^|\(|\))|(?P<ident>[A-Za-z][A-Za-z0-9_]*))"
)
_MID_OPS = {"&": Cap, "|": Cup, "#": Nor}
_IMP_OPS = {"->": Lolly, "=>": StrongImp}
RESERVED = frozenset({"bot", "top"})


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start("op") if m.group("op") else m.start("ident")
        if m.group("op"):
            tokens.append(("op", m.group("op"), start))
        else:
            tokens.append(("ident", m.group("ident"), start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise FormulaSyntaxError(message, tok[2], self.text)

    def formula(self) -> Formula:
        return self.imp()

    def imp(self) -> Formula:
        left = self.mid()
        kind, val, _ = self.peek()
        if kind == "op" and val in _IMP_OPS:
            self.take()
            return _IMP_OPS[val](left, self.imp())
        return left

    def mid(self) -> Formula:
        left = self.ten()
        kind, val, _ = self.peek()
        if kind == "op" and val in _MID_OPS:
            self.take()
            right = self.ten()
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] in _MID_OPS:
                self.fail(f"operator {nxt[1]!r} cannot follow {val!r} without parentheses", nxt)
            return _MID_OPS[val](left, right)
        return left

    def ten(self) -> Formula:
        left = self.post()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            left = Tensor(left, self.post())
        return left

    def post(self) -> Formula:
        f = self.atom()
        while self.peek()[:2] == ("op", "^"):
            self.take()
            f = Neg(f)
        return f

    def atom(self) -> Formula:
        tok = self.take()
        kind, val, _ = tok
        if kind == "ident":
            if val == "bot":
                return BOT
            if val == "top":
                return TOP
            return Atom(val)
        if kind == "op" and val == "(":
            f = self.formula()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.fail("expected ')'", close)
            return f
        if kind == "eof":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected token {val!r}", tok)


def parse(text: str) -> Formula:
    """Parse ``text`` into a surface formula.

    >>> parse("A * B^ -> C -> D * F")
    Lolly(left=Tensor(left=Atom('A'), right=Neg(body=Atom('B'))), right=Lolly(left=Atom('C'), right=Tensor(left=Atom('D'), right=Atom('F'))))
    """
    p = _Parser(text)
    f = p.formula()
    if p.peek()[0] != "eof":
        p.fail(f"unexpected token {p.peek()[1]!r}")
    return f


def parse_core(text: str) -> Formula:
    return desugar(parse(text))


# ---------------------------------------------------------------------------
# Printing

_LEVEL_IMP, _LEVEL_MID, _LEVEL_TEN, _LEVEL_POST, _LEVEL_ATOM = 1, 2, 3, 4, 5
_SYMBOL = {
    Tensor: "*", Lolly: "->", StrongImp: "=>", Cap: "&", Cup: "|", Nor: "#",
}


def _level(f: Formula, neg_sugar: bool) -> int:
    if isinstance(f, (Atom, Bottom, Top)):
        return _LEVEL_ATOM
    if isinstance(f, Neg):
        return _LEVEL_POST
    if isinstance(f, Lolly) and neg_sugar and f.right == BOT:
        return _LEVEL_POST
    if isinstance(f, (Lolly, StrongImp)):
        return _LEVEL_IMP
    if isinstance(f, (Cap, Cup, Nor)):
        return _LEVEL_MID
    if isinstance(f, Tensor):
        return _LEVEL_TEN
    raise TypeError(f"not a formula: {f!r}")


def to_text(f: Formula, full_parens: bool = False, neg_sugar: bool = True) -> str:
    """Render ``f`` in the ASCII grammar.

    With ``neg_sugar`` a core ``X -> bot`` is written ``X^``; turn it off to
    keep surface :class:`Neg` and core ``X -> bot`` apart when round-tripping.
    """
    if full_parens:
        return _full(f, neg_sugar)
    return _minimal(f, neg_sugar)


def _full(f: Formula, neg_sugar: bool) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Neg):
        return _full(f.body, neg_sugar) + "^"
    if isinstance(f, Lolly) and neg_sugar and f.right == BOT:
        return _full(f.left, neg_sugar) + "^"
    return f"({_full(f.left, neg_sugar)} {_SYMBOL[type(f)]} {_full(f.right, neg_sugar)})"


def _minimal(f: Formula, neg_sugar: bool) -> str:
    def wrap(g: Formula, need: int) -> str:
        s = _minimal(g, neg_sugar)
        return s if _level(g, neg_sugar) >= need else f"({s})"

    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Neg):
        return wrap(f.body, _LEVEL_POST) + "^"
    if isinstance(f, Lolly) and neg_sugar and f.right == BOT:
        return wrap(f.left, _LEVEL_POST) + "^"
    if isinstance(f, (Lolly, StrongImp)):
        return f"{wrap(f.left, _LEVEL_MID)} {_SYMBOL[type(f)]} {wrap(f.right, _LEVEL_IMP)}"
    if isinstance(f, (Cap, Cup, Nor)):
        return f"{wrap(f.left, _LEVEL_TEN)} {_SYMBOL[type(f)]} {wrap(f.right, _LEVEL_TEN)}"
    if isinstance(f, Tensor):
        return f"{wrap(f.left, _LEVEL_TEN)} * {wrap(f.right, _LEVEL_POST)}"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Desugaring and substitution

def desugar(f: Formula) -> Formula:
    """Rewrite every derived connective into ``{atoms, bot, *, ->}``."""
    if isinstance(f, (Atom, Bottom)):
        return f
    if isinstance(f, Top):
        return Lolly(BOT, BOT)
    if isinstance(f, Neg):
        return Lolly(desugar(f.body), BOT)
    a, b = desugar(f.left), desugar(f.right)
    if isinstance(f, Tensor):
        return Tensor(a, b)
    if isinstance(f, Lolly):
        return Lolly(a, b)
    if isinstance(f, Cap):
        return Tensor(a, Lolly(a, b))
    if isinstance(f, Cup):
        return Lolly(Lolly(b, a), a)
    if isinstance(f, StrongImp):
        return Lolly(a, Tensor(a, b))
    if isinstance(f, Nor):
        return Tensor(Lolly(a, BOT), Lolly(b, a))
    raise TypeError(f"not a formula: {f!r}")


def substitute(f: Formula, var: str, g: Formula) -> Formula:
    return substitute_many(f, {var: g})


def substitute_many(f: Formula, sigma: Mapping[str, Formula]) -> Formula:
    """Simultaneous substitution of formulas for atoms."""
    if not sigma:
        return f
    if isinstance(f, Atom):
        return sigma.get(f.name, f)
    if isinstance(f, (Bottom, Top)):
        return f
    if isinstance(f, Neg):
        return Neg(substitute_many(f.body, sigma))
    return type(f)(substitute_many(f.left, sigma), substitute_many(f.right, sigma))


def atoms(f: Formula) -> list[str]:
    """Atom names of ``f`` in sorted order."""
    found: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            found.add(g.name)
        elif isinstance(g, Neg):
            stack.append(g.body)
        elif isinstance(g, BINARY_TYPES):
            stack.append(g.left)
            stack.append(g.right)
    return sorted(found)


def connectives(f: Formula) -> int:
    if isinstance(f, (Atom, Bottom, Top)):
        return 0
    if isinstance(f, Neg):
        return 1 + connectives(f.body)
    return 1 + connectives(f.left) + connectives(f.right)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Neg):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY_TYPES):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


# ---------------------------------------------------------------------------
# Negative formulas

@dataclass(frozen=True)
class NegativeWitness:
    """Derivation of membership in the negative class.

    ``clause`` is ``"bot"``, ``"tensor"`` or ``"lolly"``; ``parts`` holds the
    witnesses for the negative operands (two for tensor, one for lolly).
    """

    formula: Formula
    clause: str
    parts: tuple["NegativeWitness", ...] = ()

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.parts), default=0)


def is_negative(f: Formula) -> NegativeWitness | None:
    """Return a membership witness for core ``f``, or ``None``."""
    if isinstance(f, Bottom):
        return NegativeWitness(f, "bot")
    if isinstance(f, Tensor):
        left = is_negative(f.left)
        if left is None:
            return None
        right = is_negative(f.right)
        if right is None:
            return None
        return NegativeWitness(f, "tensor", (left, right))
    if isinstance(f, Lolly):
        right = is_negative(f.right)
        if right is None:
            return None
        return NegativeWitness(f, "lolly", (right,))
    return None


# ---------------------------------------------------------------------------
# Random formulas

def random_formula(seed: int | random.Random, max_connectives: int,
                   vars: Sequence[str] = ("P", "Q", "R")) -> Formula:
    """Deterministic pseudo-random core formula.

    Distribution: the connective count ``n`` is uniform on
    ``0..max_connectives``; a tree with ``n`` binary nodes is grown by
    choosing ``*`` or ``->`` with equal probability at each node and
    splitting the remaining ``n - 1`` nodes uniformly between the two
    sides. Each leaf is ``bot`` with probability ``1/(len(vars)+1)``,
    otherwise a uniformly chosen variable.
    """
    if max_connectives < 0:
        raise ValueError("max_connectives must be >= 0")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = rng.randint(0, max_connectives)
    return _grow(rng, n, list(vars))


def _leaf(rng: random.Random, vars: list[str]) -> Formula:
    k = rng.randrange(len(vars) + 1)
    return BOT if k == len(vars) else Atom(vars[k])


def _grow(rng: random.Random, n: int, vars: list[str]) -> Formula:
    if n == 0:
        return _leaf(rng, vars)
    k = rng.randrange(n)
    op = Tensor if rng.random() < 0.5 else Lolly
    return op(_grow(rng, k, vars), _grow(rng, n - 1 - k, vars))


def random_negative_formula(seed: int | random.Random, max_connectives: int,
                            vars: Sequence[str] = ("P", "Q", "R")) -> Formula:
    """Random member of the negative class with at most ``max_connectives``.

    Grown like :func:`random_formula` except that the negative positions
    (both sides of ``*``, the right side of ``->``) bottom out in ``bot`` and
    the left side of ``->`` is an unrestricted random formula.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = rng.randint(0, max_connectives)
    return _grow_negative(rng, n, list(vars))


def _grow_negative(rng: random.Random, n: int, vars: list[str]) -> Formula:
    if n == 0:
        return BOT
    k = rng.randrange(n)
    if rng.random() < 0.5:
        return Tensor(_grow_negative(rng, k, vars), _grow_negative(rng, n - 1 - k, vars))
    return Lolly(_grow(rng, k, vars), _grow_negative(rng, n - 1 - k, vars))
