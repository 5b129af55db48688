"""Formulas of the three-valued modal language and their concrete syntax.

The language has exactly four connectives: negation, conjunction,
disjunction and a single box modality.  Formulas without a box form the
propositional fragment.

Concrete grammar (ASCII, Unicode aliases accepted on input only)::

    formula := disj
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '~' unary | '[]' unary | atom | '(' formula ')'
    atom    := [a-z][a-zA-Z0-9_]*

``&`` and ``|`` associate to the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

__all__ = [
    "Formula",
    "Atom",
    "Not",
    "And",
    "Or",
    "Box",
    "FormulaSyntaxError",
    "ImplicationError",
    "parse",
    "render",
    "atoms_of",
    "is_modal",
    "depth",
    "subformulas",
]

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")


@dataclass(frozen=True, slots=True)
class Atom:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.name, str) or not ATOM_RE.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        object.__setattr__(self, "_hash", hash(("atom", self.name)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Not:
    child: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("not", self.child)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("and", self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("or", self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Box:
    child: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("box", self.child)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return render(self)


Formula = Union[Atom, Not, And, Or, Box]


class FormulaSyntaxError(ValueError):
    """Raised by :func:`parse`; ``offset`` is the 0-based character index."""

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset
        self.text = text


class ImplicationError(FormulaSyntaxError):
    pass


# --------------------------------------------------------------------------
# tokenizer

_SYMBOLS = {
    "~": "NOT",
    "¬": "NOT",
    "&": "AND",
    "∧": "AND",
    "|": "OR",
    "∨": "OR",
    "□": "BOX",
    "(": "LPAREN",
    ")": "RPAREN",
}

_DESCRIBE = {
    "NOT": "'~'",
    "AND": "'&'",
    "OR": "'|'",
    "BOX": "'[]'",
    "LPAREN": "'('",
    "RPAREN": "')'",
    "ATOM": "atom",
    "EOF": "end of input",
}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("->", i) or ch == "→":
            raise ImplicationError("implication is not part of the language", i, text)
        if text.startswith("[]", i):
            tokens.append(("BOX", "[]", i))
            i += 2
            continue
        if ch in _SYMBOLS:
            tokens.append((_SYMBOLS[ch], ch, i))
            i += 1
            continue
        m = ATOM_RE.match(text, i)
        if m:
            tokens.append(("ATOM", m.group(), i))
            i = m.end()
            continue
        raise FormulaSyntaxError(f"unexpected character {ch!r}", i, text)
    tokens.append(("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: str):
        kind, value, offset = self.peek()
        found = _DESCRIBE[kind] if kind != "ATOM" else f"atom {value!r}"
        raise FormulaSyntaxError(f"expected {expected}, found {found}", offset, self.text)

    def formula(self) -> Formula:
        left = self.conj()
        while self.peek()[0] == "OR":
            self.advance()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek()[0] == "AND":
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        # prefix chains are collected iteratively so '~~~~p' cannot blow the stack
        prefixes = []
        while self.peek()[0] in ("NOT", "BOX"):
            prefixes.append(self.advance()[0])
        kind, value, _ = self.peek()
        if kind == "ATOM":
            self.advance()
            f: Formula = Atom(value)
        elif kind == "LPAREN":
            self.advance()
            f = self.formula()
            if self.peek()[0] != "RPAREN":
                self.fail("')'")
            self.advance()
        else:
            self.fail("atom, '(', '~' or '[]'")
        for op in reversed(prefixes):
            f = Not(f) if op == "NOT" else Box(f)
        return f


def parse(text: str | bytes) -> Formula:
    """Parse ``text`` into a formula.

    Raises :class:`FormulaSyntaxError` (or its subclass
    :class:`ImplicationError` for ``->``) carrying the offending offset.
    """
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8", errors="replace")
    p = _Parser(text)
    try:
        f = p.formula()
    except RecursionError:
        raise FormulaSyntaxError("formula nested too deeply", 0, text) from None
    if p.peek()[0] != "EOF":
        p.fail("'&', '|' or end of input")
    return f


# --------------------------------------------------------------------------
# printing

_PREC = {Or: 1, And: 2}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 3)


def render(f: Formula) -> str:
    """Canonical ASCII text with the fewest parentheses that still round-trip."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, (Not, Box)):
        inner = render(f.child)
        if _prec(f.child) < 3:
            inner = f"({inner})"
        return ("~" if isinstance(f, Not) else "[]") + inner
    op = " & " if isinstance(f, And) else " | "
    p = _prec(f)
    left, right = render(f.left), render(f.right)
    if _prec(f.left) < p:
        left = f"({left})"
    if _prec(f.right) <= p:
        right = f"({right})"
    return left + op + right


# --------------------------------------------------------------------------
# structural helpers


def subformulas(f: Formula) -> Iterator[Formula]:
    """Yield every subformula of ``f`` (with repetition), children first."""
    stack = [(f, False)]
    while stack:
        g, expanded = stack.pop()
        if expanded or isinstance(g, Atom):
            yield g
            continue
        stack.append((g, True))
        if isinstance(g, (Not, Box)):
            stack.append((g.child, False))
        else:
            stack.append((g.right, False))
            stack.append((g.left, False))


def atoms_of(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def is_modal(f: Formula) -> bool:
    return any(isinstance(g, Box) for g in subformulas(f))


def depth(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, (Not, Box)):
        return 1 + depth(f.child)
    return 1 + max(depth(f.left), depth(f.right))
