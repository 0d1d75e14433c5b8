"""Enumeration of small pocrims up to isomorphism and countermodel search."""
from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import (
    PocrimTable, Verdict, is_hoop, is_idempotent, is_involutive, satisfies, validate_pocrim,
)
from .formula import Formula, random_formula
from .translations import Scheme, translate

DEFAULT_ORDER_BOUND = 5

_CLASS_TESTS = {
    "pocrim": lambda m: True,
    "hoop": is_hoop,
    "involutive": is_involutive,
    "idempotent": is_idempotent,
}
CLASS_NAMES = ("pocrim", "hoop", "involutive-pocrim", "involutive-hoop", "idempotent",
               "involutive", "non-hoop", "non-involutive", "non-idempotent")


def parse_classes(spec: str | Sequence[str]) -> tuple[str, ...]:
    """Split a conjunctive class filter like ``"hoop,non-idempotent"`` into atoms."""
    parts = spec.replace("+", ",").split(",") if isinstance(spec, str) else list(spec)
    out: list[str] = []
    for p in parts:
        p = p.strip().lower()
        if not p:
            continue
        neg = p.startswith("non-")
        base = p[4:] if neg else p
        if base in ("involutive-pocrim", "involutive-hoop"):
            if neg:
                raise ValueError(f"cannot negate compound class {base!r}")
            out.extend(["involutive", base.split("-")[1]])
            continue
        if base not in _CLASS_TESTS or (neg and base == "pocrim"):
            raise ValueError(f"unknown model class {p!r} (choose from {', '.join(CLASS_NAMES)})")
        out.append(p)
    return tuple(out) or ("pocrim",)


def in_class(m: PocrimTable, classes: str | Sequence[str]) -> bool:
    for c in parse_classes(classes):
        if c.startswith("non-"):
            if _CLASS_TESTS[c[4:]](m):
                return False
        elif not _CLASS_TESTS[c](m):
            return False
    return True


# ---------------------------------------------------------------------------
# Posets

def _labelled_posets(k: int) -> list[np.ndarray]:
    """All partial orders on ``k`` labelled points as boolean matrices."""
    pairs = list(itertools.combinations(range(k), 2))
    out = []
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        r = np.eye(k, dtype=bool)
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                r[i, j] = True
            elif c == 2:
                r[j, i] = True
        # transitive iff composing adds nothing
        if not (((r.astype(np.int32) @ r.astype(np.int32)) > 0) & ~r).any():
            out.append(r)
    return out


def _bounded(middle: np.ndarray) -> np.ndarray:
    """Add a top (index 0) and a bottom (last index) around a poset on the middle."""
    k = middle.shape[0]
    n = k + 2
    leq = np.zeros((n, n), dtype=bool)
    leq[1:n - 1, 1:n - 1] = middle
    leq[:, 0] = True
    leq[n - 1, :] = True
    return leq


@lru_cache(maxsize=None)
def bounded_posets(n: int, up_to_iso: bool = True) -> tuple[np.ndarray, ...]:
    """Bounded posets of order ``n`` with top at index 0 and bottom at ``n - 1``."""
    if n == 1:
        return (np.ones((1, 1), dtype=bool),)
    k = n - 2
    mids = _labelled_posets(k)
    if up_to_iso:
        seen, keep = set(), []
        for r in mids:
            key = min(r[np.ix_(p, p)].tobytes() for p in map(list, itertools.permutations(range(k))))
            if key not in seen:
                seen.add(key)
                keep.append(r)
        mids = keep
    return tuple(_bounded(r) for r in mids)


# ---------------------------------------------------------------------------
# Canonical forms

def _middle_perms(n: int):
    for p in itertools.permutations(range(1, n - 1)):
        yield np.array((0, *p, n - 1), dtype=np.int64) if n > 1 else np.array([0])


def canonical_form(leq: np.ndarray, mult: np.ndarray) -> tuple[bytes, np.ndarray]:
    """Lexicographically least ``(leq, mult)`` over relabellings fixing top and bottom.

    Returns the key and the permutation ``perm`` such that new element ``i``
    is old element ``perm[i]``.
    """
    n = leq.shape[0]
    best_key, best_perm = None, None
    for perm in _middle_perms(n):
        inv = np.empty_like(perm)
        inv[perm] = np.arange(n)
        L = leq[np.ix_(perm, perm)].astype(np.int32)
        M = inv[mult[np.ix_(perm, perm)]]
        key = np.concatenate([L.ravel(), M.ravel()]).astype(np.int8).tobytes()
        if best_key is None or key < best_key:
            best_key, best_perm = key, perm
    return best_key, best_perm


def element_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("1",)
    mids = [chr(ord("a") + i) for i in range(n - 2)]
    return ("1", *mids, "0")


def _table(name: str, leq: np.ndarray, mult: np.ndarray) -> PocrimTable:
    names = element_names(leq.shape[0])
    return validate_pocrim(name, names, names[0], names[-1], leq, mult)


# ---------------------------------------------------------------------------
# Enumeration

def _check_order(order: int, bound: int) -> None:
    if order < 1:
        raise ValueError("order must be at least 1")
    if order <= bound:
        return
    if order == 6:
        warnings.warn("enumerating order 6 takes a while", RuntimeWarning, stacklevel=3)
        return
    raise ValueError(f"order {order} exceeds the enumeration bound {bound}")


def raw_pocrims(order: int, up_to_iso_posets: bool = True, backend=None) -> list[tuple]:
    """``(leq, mult)`` for every pocrim structure the search finds at ``order``."""
    search = (backend or kernels).search_monoids
    out = []
    for leq in bounded_posets(order, up_to_iso_posets):
        for mult in search(leq):
            out.append((leq, np.asarray(mult, dtype=np.int32)))
    return out


@lru_cache(maxsize=None)
def _canonical_models(order: int) -> tuple[PocrimTable, ...]:
    found = {}
    for leq, mult in raw_pocrims(order):
        key, perm = canonical_form(leq, mult)
        if key in found:
            continue
        inv = np.empty_like(perm)
        inv[perm] = np.arange(order)
        found[key] = (leq[np.ix_(perm, perm)], inv[mult[np.ix_(perm, perm)]])
    models = []
    for k, key in enumerate(sorted(found), 1):
        leq, mult = found[key]
        models.append(_table(f"M{order}_{k}", leq, mult))
    return tuple(models)


def enumerate_pocrims(order: int, classes: str | Sequence[str] = "pocrim", dedup: bool = True,
                      bound: int = DEFAULT_ORDER_BOUND) -> list[PocrimTable]:
    """All pocrims of ``order`` in the given classes.

    With ``dedup`` the result has one model per isomorphism class, relabelled
    to its canonical form and sorted by canonical key; names are ``M<order>_<k>``
    with ``k`` counting over all pocrims of that order, so a model keeps its
    name under any filter. Without ``dedup`` every labelled structure (top at
    index 0, bottom last) is returned.
    """
    _check_order(order, bound)
    parsed = parse_classes(classes)
    if dedup:
        models = list(_canonical_models(order))
    else:
        models = [_table(f"R{order}_{k}", leq, mult)
                  for k, (leq, mult) in enumerate(raw_pocrims(order, False), 1)]
    return [m for m in models if in_class(m, parsed)]


def enumerate_up_to(max_order: int, classes: str | Sequence[str] = "pocrim",
                    min_order: int = 1, bound: int = DEFAULT_ORDER_BOUND) -> list[PocrimTable]:
    out = []
    for n in range(min_order, max_order + 1):
        out.extend(enumerate_pocrims(n, classes, bound=bound))
    return out


# ---------------------------------------------------------------------------
# Isomorphism

def is_isomorphic(m1: PocrimTable, m2: PocrimTable) -> dict[str, str] | None:
    """A bijection fixing unit and zero that preserves order and product, or ``None``."""
    if m1.order != m2.order:
        return None
    n = m1.order
    rest1 = [i for i in range(n) if i not in (m1.unit, m1.zero)]
    rest2 = [i for i in range(n) if i not in (m2.unit, m2.zero)]
    for p in itertools.permutations(rest2):
        f = np.empty(n, dtype=np.int64)
        f[m1.unit], f[m1.zero] = m2.unit, m2.zero
        f[rest1] = p
        if (m2.leq[np.ix_(f, f)] == m1.leq).all() and (f[m1.mult] == m2.mult[np.ix_(f, f)]).all():
            return {m1.elements[i]: m2.elements[f[i]] for i in range(n)}
    return None


# ---------------------------------------------------------------------------
# Countermodels

@dataclass(frozen=True)
class Countermodel:
    model: PocrimTable
    assignment: dict
    value: str

    def describe(self) -> str:
        asg = ", ".join(f"{k}={v}" for k, v in self.assignment.items()) or "(no variables)"
        return f"{self.model.name}: {asg} gives {self.value}"


def find_countermodel(goal: Formula, classes: str | Sequence[str] = "pocrim",
                      max_order: int = 4, bank: Iterable[PocrimTable] | None = None,
                      bound: int = DEFAULT_ORDER_BOUND) -> Countermodel | None:
    """First model refuting ``goal``, scanning ``bank`` or the enumeration from order 2."""
    if bank is None:
        models: Iterable[PocrimTable] = (m for n in range(2, max_order + 1)
                                         for m in enumerate_pocrims(n, classes, bound=bound))
    else:
        parsed = parse_classes(classes)
        models = (m for m in bank if in_class(m, parsed))
    for m in models:
        v = satisfies(m, goal)
        if not v.valid:
            return Countermodel(m, v.assignment, v.value)
    return None


# ---------------------------------------------------------------------------
# Finite theory checks

@dataclass
class TheoryReport:
    premise: str
    goal: str
    scheme: str
    checked: int = 0
    premise_valid: int = 0
    violations: list[tuple[Formula, Verdict]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def random_stream(seed: int, count: int, max_connectives: int = 8,
                  vars: Sequence[str] = ("P", "Q", "R")) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, max_connectives, vars) for _ in range(count)]


def theory_implication_check(premise_model: PocrimTable, goal_model: PocrimTable,
                             scheme: Scheme | str, sample: Iterable[Formula]) -> TheoryReport:
    """For each ``f``: if the premise model validates ``f``, the goal model must validate its translation."""
    if isinstance(scheme, str):
        scheme = Scheme.parse(scheme)
    rep = TheoryReport(premise_model.name, goal_model.name, scheme.value)
    for f in sample:
        rep.checked += 1
        if not satisfies(premise_model, f).valid:
            continue
        rep.premise_valid += 1
        v = satisfies(goal_model, translate(scheme, f))
        if not v.valid:
            rep.violations.append((f, v))
    return rep
