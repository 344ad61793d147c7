"""Formula AST, parser, printer and structural utilities.

Concrete syntax (ASCII, Unicode accepted on input)::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | "[]" unary | "<>" unary | atomterm
    atomterm:= ident | "bot" | "top" | "{" rational "}" | "(" formula ")"
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

from gkml.algebra import AlgebraError, format_rational, parse_rational


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: Fraction


@dataclass(frozen=True, slots=True)
class Not(Formula):
    sub: Formula

    def children(self):
        return (self.sub,)


@dataclass(frozen=True, slots=True)
class Box(Formula):
    sub: Formula

    def children(self):
        return (self.sub,)


@dataclass(frozen=True, slots=True)
class Diamond(Formula):
    sub: Formula

    def children(self):
        return (self.sub,)


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


UNARY = (Not, Box, Diamond)
BINARY = (And, Or, Implies, Iff)
LEAVES = (Atom, Bottom, Top, Const)
SUGAR = (Or, Not, Top, Iff)


def const(value) -> Formula:
    """Truth constant node; 0 and 1 normalise to bottom and top."""
    v = Fraction(value)
    if not 0 <= v <= 1:
        raise AlgebraError(f"constant {v} outside [0,1]")
    if v == 0:
        return Bottom()
    if v == 1:
        return Top()
    return Const(v)


def rebuild(f: Formula, kids: tuple[Formula, ...]) -> Formula:
    """Return a node of the same kind as ``f`` over new children."""
    if isinstance(f, UNARY):
        return type(f)(kids[0])
    if isinstance(f, BINARY):
        return type(f)(kids[0], kids[1])
    return f


# --------------------------------------------------------------------------
# Parsing

class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int,
                 expected: frozenset[str] = frozenset()):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")


_UNICODE = {
    "□": "[]", "◇": "<>", "◊": "<>", "∧": "&", "∨": "|", "→": "->",
    "↔": "<->", "¬": "~", "⊥": "bot", "⊤": "top",
}
_SYMBOLS = ("<->", "->", "[]", "<>", "&", "|", "~", "(", ")")
_IDENT = re.compile(r"[a-z][a-z0-9_]*")
_RATIONAL = re.compile(r"\{\s*([0-9]+(?:/[0-9]+)?)\s*\}")


@dataclass(frozen=True)
class _Token:
    kind: str  # symbol text, "ident", "rational" or "eof"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch in _UNICODE:
            sym = _UNICODE[ch]
            kind = "ident" if sym in ("bot", "top") else sym
            tokens.append(_Token(kind, sym, line, col))
            i, col = i + 1, col + 1
            continue
        if ch == "{":
            m = _RATIONAL.match(text, i)
            if not m:
                raise FormulaSyntaxError("malformed truth constant", line, col,
                                         frozenset({"{p/q}"}))
            tokens.append(_Token("rational", m.group(1), line, col))
            col += m.end() - i
            i = m.end()
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(_Token(sym, sym, line, col))
                i, col = i + len(sym), col + len(sym)
                break
        else:
            m = _IDENT.match(text, i)
            if not m:
                raise FormulaSyntaxError(f"unexpected character {ch!r}", line, col)
            tokens.append(_Token("ident", m.group(), line, col))
            col += m.end() - i
            i = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


_ATOMTERM_START = frozenset({"identifier", "bot", "top", "{p/q}", "("})
_UNARY_START = _ATOMTERM_START | {"~", "[]", "<>"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: frozenset[str]):
        tok = self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise FormulaSyntaxError(f"unexpected {found}", tok.line, tok.column, expected)

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek().kind != "eof":
            self.fail(frozenset({"<->", "->", "|", "&", "end of input"}))
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.peek().kind == "<->":
            self.advance()
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.peek().kind == "->":
            self.advance()
            return Implies(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek().kind == "|":
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "&":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.peek().kind
        if kind == "~":
            self.advance()
            return Not(self.unary())
        if kind == "[]":
            self.advance()
            return Box(self.unary())
        if kind == "<>":
            self.advance()
            return Diamond(self.unary())
        return self.atomterm()

    def atomterm(self) -> Formula:
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            if tok.text == "bot":
                return Bottom()
            if tok.text == "top":
                return Top()
            return Atom(tok.text)
        if tok.kind == "rational":
            self.advance()
            try:
                return const(parse_rational(tok.text))
            except AlgebraError as exc:
                raise FormulaSyntaxError(str(exc), tok.line, tok.column) from None
        if tok.kind == "(":
            self.advance()
            f = self.iff()
            if self.peek().kind != ")":
                self.fail(frozenset({")", "<->", "->", "|", "&"}))
            self.advance()
            return f
        self.fail(_UNARY_START)


def parse(text: str) -> Formula:
    """Parse concrete syntax into a :class:`Formula`."""
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# Printing

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_ASCII = {Iff: " <-> ", Implies: " -> ", Or: " | ", And: " & ",
          Not: "~", Box: "[]", Diamond: "<>", Bottom: "bot", Top: "top"}
_PRETTY = {Iff: " ↔ ", Implies: " → ", Or: " ∨ ", And: " ∧ ",
           Not: "¬", Box: "□", Diamond: "◇", Bottom: "⊥", Top: "⊤"}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 5)


def to_text(f: Formula, unicode: bool = False) -> str:
    """Canonical rendering with minimal parentheses.

    ``->`` is printed right-associatively, ``&``, ``|`` and ``<->``
    left-associatively, so ``parse(to_text(f)) == f``.
    """
    sym = _PRETTY if unicode else _ASCII

    def wrap(g: Formula, ok: bool) -> str:
        s = go(g)
        return s if ok else f"({s})"

    def go(g: Formula) -> str:
        if isinstance(g, Atom):
            return g.name
        if isinstance(g, (Bottom, Top)):
            return sym[type(g)]
        if isinstance(g, Const):
            return "{" + format_rational(g.value) + "}"
        if isinstance(g, UNARY):
            return sym[type(g)] + wrap(g.sub, _prec(g.sub) == 5)
        p = _prec(g)
        if isinstance(g, Implies):
            left_ok, right_ok = _prec(g.left) > p, _prec(g.right) >= p
        else:
            left_ok, right_ok = _prec(g.left) >= p, _prec(g.right) > p
        return wrap(g.left, left_ok) + sym[type(g)] + wrap(g.right, right_ok)

    return go(f)


# --------------------------------------------------------------------------
# Structure

class Fragment(enum.Enum):
    PROPOSITIONAL = "Propositional"
    BOX_ONLY = "BoxOnly"
    DIAMOND_ONLY = "DiamondOnly"
    BIMODAL = "Bimodal"


def iter_nodes(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def subformulas(f: Formula) -> set[Formula]:
    return set(iter_nodes(f))


def atoms(f: Formula) -> set[str]:
    return {g.name for g in iter_nodes(f) if isinstance(g, Atom)}


def constants(f: Formula) -> set[Fraction]:
    return {g.value for g in iter_nodes(f) if isinstance(g, Const)}


def size(f: Formula) -> int:
    return sum(1 for _ in iter_nodes(f))


@lru_cache(maxsize=65536)
def nesting_degree(f: Formula) -> int:
    """Length of the longest chain of modal operators (both kinds count)."""
    kids = f.children()
    inner = max((nesting_degree(k) for k in kids), default=0)
    return inner + 1 if isinstance(f, (Box, Diamond)) else inner


def fragment_of(f: Formula) -> Fragment:
    has_box = has_dia = False
    for g in iter_nodes(f):
        has_box |= isinstance(g, Box)
        has_dia |= isinstance(g, Diamond)
    if has_box and has_dia:
        return Fragment.BIMODAL
    if has_box:
        return Fragment.BOX_ONLY
    if has_dia:
        return Fragment.DIAMOND_ONLY
    return Fragment.PROPOSITIONAL


@lru_cache(maxsize=65536)
def expand_derived(f: Formula) -> Formula:
    """Rewrite the defined connectives into {atom, bot, const, &, ->, [], <>}."""
    if isinstance(f, Top):
        return Implies(Bottom(), Bottom())
    if isinstance(f, LEAVES):
        return f
    kids = tuple(expand_derived(k) for k in f.children())
    if isinstance(f, Not):
        return Implies(kids[0], Bottom())
    if isinstance(f, Or):
        a, b = kids
        return And(Implies(Implies(a, b), b), Implies(Implies(b, a), a))
    if isinstance(f, Iff):
        a, b = kids
        return And(Implies(a, b), Implies(b, a))
    return rebuild(f, kids)


def subformulas_by_rank(f: Formula, j: int) -> set[Formula]:
    """Subformulas of the sugar-free form of ``f`` with nesting degree <= j."""
    return {g for g in subformulas(expand_derived(f)) if nesting_degree(g) <= j}


def substitute(f: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Simultaneously replace atoms named in ``mapping``."""
    if isinstance(f, Atom):
        return mapping.get(f.name, f)
    kids = f.children()
    if not kids:
        return f
    return rebuild(f, tuple(substitute(k, mapping) for k in kids))


def share_subterms(formulas: Iterable[Formula]) -> list[Formula]:
    """Rebuild ``formulas`` so structurally equal subterms are one object.

    Evaluators that memoise by object identity then reuse work across
    formulas (e.g. across the steps of a proof).
    """
    table: dict[tuple, Formula] = {}

    def go(f: Formula) -> Formula:
        kids = tuple(go(k) for k in f.children())
        key = (type(f), *map(id, kids)) if kids else (type(f), f)
        hit = table.get(key)
        if hit is None:
            hit = table[key] = rebuild(f, kids) if kids else f
        return hit

    return [go(f) for f in formulas]


def map_nodes(f: Formula, fn: Callable[[Formula], Formula]) -> Formula:
    """Bottom-up rewrite: ``fn`` receives each node with rewritten children."""
    kids = f.children()
    if kids:
        f = rebuild(f, tuple(map_nodes(k, fn) for k in kids))
    return fn(f)


def positions(f: Formula, prefix: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
    """Paths (child-index tuples) of every node, preorder."""
    yield prefix
    for i, k in enumerate(f.children()):
        yield from positions(k, prefix + (i,))


def subterm(f: Formula, path: tuple[int, ...]) -> Formula:
    for i in path:
        f = f.children()[i]
    return f


def replace_at(f: Formula, path: tuple[int, ...], new: Formula) -> Formula:
    if not path:
        return new
    kids = list(f.children())
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return rebuild(f, tuple(kids))
