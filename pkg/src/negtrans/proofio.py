"""Reading and writing proof files.

A proof file is one s-expression::

    (proof id "cwc-lub" calculus LLi (concl "C -> A, C -> B, C |- A * (A -> B)")
      (rule TensorE (concl "...") <node> <node>))

with nodes ``(rule NAME (concl "SEQ") node...)``, ``(axiom SCHEMA (concl
"SEQ"))`` and ``(lemma "ID" ((VAR "FORMULA") ...) (concl "SEQ"))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .calculi import (
    Axiom, Calculus, LemmaRef, ProofTree, Rule, Sequent, parse_sequent, to_sequent_text,
)
from .formula import FormulaSyntaxError, parse_core, to_text


class ProofFileError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ProofFile:
    id: str
    calculus: Calculus
    statement: Sequent
    tree: ProofTree


# ---------------------------------------------------------------------------
# s-expressions

class _Str(str):
    """A quoted string token, kept distinct from bare symbols."""


def _tokenize(text: str) -> list:
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            out.append(c)
            i += 1
        elif c == '"':
            i += 1
            buf = []
            while i < n and text[i] != '"':
                if text[i] == "\\" and i + 1 < n:
                    i += 1
                buf.append(text[i])
                i += 1
            if i >= n:
                raise ProofFileError("unterminated string")
            out.append(_Str("".join(buf)))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '()";':
                j += 1
            out.append(text[i:j])
            i = j
    return out


def _read(tokens: list, pos: int):
    tok = tokens[pos]
    if tok == "(" and not isinstance(tok, _Str):
        items = []
        pos += 1
        while True:
            if pos >= len(tokens):
                raise ProofFileError("unbalanced parentheses")
            if tokens[pos] == ")" and not isinstance(tokens[pos], _Str):
                return items, pos + 1
            item, pos = _read(tokens, pos)
            items.append(item)
    if tok == ")" and not isinstance(tok, _Str):
        raise ProofFileError("unexpected ')'")
    return tok, pos + 1


def read_sexpr(text: str):
    tokens = _tokenize(text)
    if not tokens:
        raise ProofFileError("empty proof file")
    expr, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise ProofFileError("trailing input after proof")
    return expr


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


# ---------------------------------------------------------------------------
# Proof files

def _concl(item) -> Sequent:
    if not (isinstance(item, list) and len(item) == 2 and item[0] == "concl"
            and isinstance(item[1], _Str)):
        raise ProofFileError(f"expected (concl \"...\"), got {item!r}")
    try:
        return parse_sequent(item[1])
    except (FormulaSyntaxError, ValueError) as e:
        raise ProofFileError(f"bad sequent {item[1]!r}: {e}") from None


def _node(expr) -> ProofTree:
    if not isinstance(expr, list) or not expr:
        raise ProofFileError(f"expected a proof node, got {expr!r}")
    head = expr[0]
    if head == "rule":
        if len(expr) < 3:
            raise ProofFileError("rule node needs a name and a conclusion")
        return Rule(expr[1], _concl(expr[2]), tuple(_node(e) for e in expr[3:]))
    if head == "axiom":
        if len(expr) != 3:
            raise ProofFileError("axiom node takes a schema and a conclusion")
        return Axiom(expr[1], _concl(expr[2]))
    if head == "lemma":
        if len(expr) != 4 or not isinstance(expr[1], _Str) or not isinstance(expr[2], list):
            raise ProofFileError("lemma node takes an id, a substitution and a conclusion")
        sigma = []
        for pair in expr[2]:
            if not (isinstance(pair, list) and len(pair) == 2 and isinstance(pair[1], _Str)):
                raise ProofFileError(f"bad substitution entry {pair!r}")
            try:
                sigma.append((str(pair[0]), parse_core(pair[1])))
            except FormulaSyntaxError as e:
                raise ProofFileError(f"bad formula {pair[1]!r}: {e}") from None
        return LemmaRef(str(expr[1]), tuple(sigma), _concl(expr[3]))
    raise ProofFileError(f"unknown node kind {head!r}")


def loads(text: str) -> ProofFile:
    expr = read_sexpr(text)
    if not (isinstance(expr, list) and len(expr) == 7 and expr[0] == "proof"
            and expr[1] == "id" and isinstance(expr[2], _Str) and expr[3] == "calculus"):
        raise ProofFileError("expected (proof id \"...\" calculus C (concl \"...\") node)")
    try:
        calc = Calculus.parse(expr[4])
    except ValueError as e:
        raise ProofFileError(str(e)) from None
    return ProofFile(str(expr[2]), calc, _concl(expr[5]), _node(expr[6]))


def load(path: str | Path) -> ProofFile:
    return loads(Path(path).read_text())


def _dump_node(t: ProofTree, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    concl = f"(concl {_quote(to_sequent_text(t.conclusion))})"
    if isinstance(t, Axiom):
        out.append(f"{pad}(axiom {t.schema} {concl})")
    elif isinstance(t, LemmaRef):
        sigma = " ".join(f"({v} {_quote(to_text(g))})" for v, g in t.substitution)
        out.append(f"{pad}(lemma {_quote(t.lemma)} ({sigma}) {concl})")
    else:
        out.append(f"{pad}(rule {t.name} {concl}")
        for p in t.premises:
            _dump_node(p, indent + 1, out)
        out[-1] += ")"


def dumps(pf: ProofFile) -> str:
    out = [f"(proof id {_quote(pf.id)} calculus {pf.calculus.value} "
           f"(concl {_quote(to_sequent_text(pf.statement))})"]
    _dump_node(pf.tree, 1, out)
    out[-1] += ")"
    return "\n".join(out) + "\n"


def dump(pf: ProofFile, path: str | Path) -> None:
    Path(path).write_text(dumps(pf))
