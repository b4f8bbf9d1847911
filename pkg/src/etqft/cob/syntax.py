"""
Words for 2-dimensional cobordisms.

Grammar (whitespace is ignored)::

    term := par { "." par }
    par  := atom { "*" atom }
    atom := "cap" | "cup" | "pants" | "copants" | "twist"
          | "id" "(" nat ")" | "(" term ")"

``a . b`` is composition with ``b`` applied first (so ``cup . cap`` is the
sphere) and ``a * b`` is disjoint union.  ``*`` binds tighter than ``.``;
both associate to the left.  Arities count circles: ``cap: 0 -> 1``,
``cup: 1 -> 0``, ``pants: 2 -> 1``, ``copants: 1 -> 2``, ``twist: 2 -> 2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from etqft.errors import CobTypeError, ParseError

GENERATORS = {
    "cap": (0, 1),
    "cup": (1, 0),
    "pants": (2, 1),
    "copants": (1, 2),
    "twist": (2, 2),
}


@dataclass(frozen=True)
class Gen:
    name: str
    pos: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Id:
    n: int
    pos: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Seq:
    """``left . right``: ``right`` first, then ``left``."""
    left: "CobTerm"
    right: "CobTerm"
    pos: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Par:
    left: "CobTerm"
    right: "CobTerm"
    pos: tuple | None = field(default=None, compare=False, repr=False)


CobTerm = Union[Gen, Id, Seq, Par]

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<num>\d+)|(?P<sym>[().*]))")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i, line, line_start = 0, 1, 0
    while True:
        # skip whitespace, counting lines
        while i < len(text) and text[i].isspace():
            if text[i] == "\n":
                line += 1
                line_start = i + 1
            i += 1
        if i >= len(text):
            break
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), line, start - line_start + 1))
        i = m.end()
    toks.append(_Tok("eof", "", line, i - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def _fail(self, expected: str):
        tok = self.cur
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"expected {expected}, found {found}", tok.line, tok.col)

    def _eat(self, text: str) -> _Tok:
        if self.cur.text != text or self.cur.kind == "eof":
            self._fail(repr(text))
        tok = self.cur
        self.k += 1
        return tok

    def parse(self) -> CobTerm:
        term = self.term()
        if self.cur.kind != "eof":
            self._fail("'.', '*' or end of input")
        return term

    def term(self) -> CobTerm:
        left = self.par()
        while self.cur.text == "." and self.cur.kind == "sym":
            tok = self._eat(".")
            left = Seq(left, self.par(), pos=(tok.line, tok.col))
        return left

    def par(self) -> CobTerm:
        left = self.atom()
        while self.cur.text == "*" and self.cur.kind == "sym":
            tok = self._eat("*")
            left = Par(left, self.atom(), pos=(tok.line, tok.col))
        return left

    def atom(self) -> CobTerm:
        tok = self.cur
        where = (tok.line, tok.col)
        if tok.kind == "name":
            if tok.text in GENERATORS:
                self.k += 1
                return Gen(tok.text, pos=where)
            if tok.text == "id":
                self.k += 1
                self._eat("(")
                if self.cur.kind != "num":
                    self._fail("a circle count")
                n = int(self.cur.text)
                self.k += 1
                self._eat(")")
                return Id(n, pos=where)
            raise ParseError(f"unknown generator {tok.text!r}", tok.line, tok.col)
        if tok.kind == "sym" and tok.text == "(":
            self.k += 1
            inner = self.term()
            self._eat(")")
            return inner
        self._fail("a generator, 'id(n)' or '('")


def parse_cob(text: str) -> CobTerm:
    return _Parser(text).parse()


def to_text(term: CobTerm) -> str:
    """Canonical text: single spaces around operators, minimal parentheses."""
    if isinstance(term, Gen):
        return term.name
    if isinstance(term, Id):
        return f"id({term.n})"
    if isinstance(term, Seq):
        right = to_text(term.right)
        if isinstance(term.right, Seq):
            right = f"({right})"
        return f"{to_text(term.left)} . {right}"
    if isinstance(term, Par):
        left, right = to_text(term.left), to_text(term.right)
        if isinstance(term.left, Seq):
            left = f"({left})"
        if isinstance(term.right, (Seq, Par)):
            right = f"({right})"
        return f"{left} * {right}"
    raise TypeError(f"not a cobordism term: {term!r}")


def normalize(text: str) -> str:
    return to_text(parse_cob(text))


def typecheck(term: CobTerm) -> tuple[int, int]:
    """``(source, target)`` circle counts."""
    if isinstance(term, Gen):
        return GENERATORS[term.name]
    if isinstance(term, Id):
        return term.n, term.n
    if isinstance(term, Seq):
        ls, lt = typecheck(term.left)
        rs, rt = typecheck(term.right)
        if ls != rt:
            line, col = term.pos if term.pos else (None, None)
            raise CobTypeError(
                f"cannot compose: '{to_text(term.left)}' expects {ls} circle(s) but "
                f"'{to_text(term.right)}' produces {rt}", line, col)
        return rs, lt
    if isinstance(term, Par):
        ls, lt = typecheck(term.left)
        rs, rt = typecheck(term.right)
        return ls + rs, lt + rt
    raise TypeError(f"not a cobordism term: {term!r}")


def depth(term: CobTerm) -> int:
    if isinstance(term, (Seq, Par)):
        return 1 + max(depth(term.left), depth(term.right))
    return 0


def random_ast(rng, depth: int = 5) -> CobTerm:
    """Any AST, well-typed or not; for round-trip testing of the printer."""
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.2:
            return Id(rng.randint(0, 12))
        return Gen(rng.choice(sorted(GENERATORS)))
    node = Seq if rng.random() < 0.5 else Par
    return node(random_ast(rng, depth - 1), random_ast(rng, depth - 1))
