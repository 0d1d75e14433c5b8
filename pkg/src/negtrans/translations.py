"""Negative translations as formula-to-formula maps."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .formula import (
    BOT, Atom, Bottom, Formula, Lolly, NegativeWitness, Tensor, desugar, is_core,
    is_negative, neg,
)

TOP_CORE = Lolly(BOT, BOT)


class Scheme(enum.Enum):
    KOLMOGOROV = "kolmogorov"
    GOEDEL_PRE = "goedel-pre"
    GOEDEL = "goedel"
    GOEDEL_SIMPLIFIED = "goedel-simplified"
    GENTZEN = "gentzen"
    GLIVENKO = "glivenko"
    KRIVINE_PRE = "krivine-pre"
    KRIVINE = "krivine"

    @classmethod
    def parse(cls, name: str) -> "Scheme":
        key = name.strip().lower().replace("_", "-")
        key = _ALIASES.get(key, key)
        try:
            return cls(key)
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown translation {name!r} (choose from {names})") from None


_ALIASES = {
    "k": "kolmogorov",
    "godel": "goedel",
    "gödel": "goedel",
    "godel-pre": "goedel-pre",
    "godel-simplified": "goedel-simplified",
    "gentzen-pre": "gentzen",
}

# The schemes that are full translations (as opposed to their inner maps).
FULL_SCHEMES = (Scheme.KOLMOGOROV, Scheme.GOEDEL, Scheme.GOEDEL_SIMPLIFIED,
                Scheme.GENTZEN, Scheme.GLIVENKO, Scheme.KRIVINE)


def _dn(f: Formula) -> Formula:
    return neg(neg(f))


@lru_cache(maxsize=None)
def kolmogorov(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return _dn(f)
    if isinstance(f, Bottom):
        return f
    return _dn(type(f)(kolmogorov(f.left), kolmogorov(f.right)))


@lru_cache(maxsize=None)
def goedel_pre(f: Formula) -> Formula:
    if isinstance(f, (Atom, Bottom)):
        return f
    if isinstance(f, Tensor):
        return Tensor(goedel_pre(f.left), goedel_pre(f.right))
    return Lolly(goedel_pre(f.left), _dn(goedel_pre(f.right)))


@lru_cache(maxsize=None)
def _goedel_simplified_pre(f: Formula) -> Formula:
    if isinstance(f, (Atom, Bottom)):
        return f
    if isinstance(f, Tensor):
        return Tensor(_goedel_simplified_pre(f.left), _goedel_simplified_pre(f.right))
    return Lolly(f.left, _dn(_goedel_simplified_pre(f.right)))


@lru_cache(maxsize=None)
def gentzen(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return _dn(f)
    if isinstance(f, Bottom):
        return f
    return type(f)(gentzen(f.left), gentzen(f.right))


@lru_cache(maxsize=None)
def krivine_pre(f: Formula) -> Formula:
    """Inner Krivine map, a formula equivalent to the negation of ``f``.

    The compound clauses negate the left image: ``A * B`` goes to
    ``A'^ -> B'`` and ``A -> B`` to ``A'^ * B'``. With the negation on the
    right image instead (see :func:`krivine_pre_right`) the outer negation
    is not classically equivalent to ``f``.
    """
    if isinstance(f, Atom):
        return neg(f)
    if isinstance(f, Bottom):
        return TOP_CORE
    a, b = krivine_pre(f.left), krivine_pre(f.right)
    if isinstance(f, Tensor):
        return Lolly(neg(a), b)
    return Tensor(neg(a), b)


@lru_cache(maxsize=None)
def krivine_pre_right(f: Formula) -> Formula:
    """Variant negating the right image: ``A' -> B'^`` and ``A' * B'^``."""
    if isinstance(f, Atom):
        return neg(f)
    if isinstance(f, Bottom):
        return TOP_CORE
    a, b = krivine_pre_right(f.left), krivine_pre_right(f.right)
    if isinstance(f, Tensor):
        return Lolly(a, neg(b))
    return Tensor(a, neg(b))


def translate(scheme: Scheme | str, f: Formula) -> Formula:
    """Apply ``scheme`` to ``f``; surface connectives are desugared first."""
    if isinstance(scheme, str):
        scheme = Scheme.parse(scheme)
    if not is_core(f):
        f = desugar(f)
    if scheme is Scheme.KOLMOGOROV:
        return kolmogorov(f)
    if scheme is Scheme.GOEDEL_PRE:
        return goedel_pre(f)
    if scheme is Scheme.GOEDEL:
        return _dn(goedel_pre(f))
    if scheme is Scheme.GOEDEL_SIMPLIFIED:
        return _dn(_goedel_simplified_pre(f))
    if scheme is Scheme.GENTZEN:
        return gentzen(f)
    if scheme is Scheme.GLIVENKO:
        return _dn(f)
    if scheme is Scheme.KRIVINE_PRE:
        return krivine_pre(f)
    return neg(krivine_pre(f))


def nt1_witness(scheme: Scheme | str, f: Formula) -> NegativeWitness | None:
    """Membership witness for ``translate(scheme, f)`` in the negative class.

    ``None`` means the output is not syntactically negative; of the built-in
    schemes only the inner Goedel map can produce that (e.g. on an atom).
    """
    return is_negative(translate(scheme, f))


@dataclass(frozen=True)
class CommuteReport:
    formula: Formula
    lhs: Formula
    rhs: Formula

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def gentzen_neg_commutes(f: Formula) -> CommuteReport:
    """Compare the Gentzen image of ``f^`` with the negated Gentzen image of ``f``."""
    if not is_core(f):
        f = desugar(f)
    return CommuteReport(f, gentzen(neg(f)), neg(gentzen(f)))
