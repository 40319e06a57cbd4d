"""Recursive-descent parser for the textual CTL syntax.

Grammar (lowest precedence first)::

    formula := disj ('->' formula)?
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '!' unary | OP unary | Q '[' formula 'U' formula ']'
             | '(' formula ')' | 't' '[' INT ']' '[' INT ']' '[' INT ']'
             | 'true' | 'false' | MACRO
    OP      := EX | AX | EF | AF | EG | AG
    Q       := E | A
"""
from __future__ import annotations

import re
from typing import Mapping, Optional

from .formula import FALSE, TEMPORAL_UNARY, TRUE, Atom, Formula, Implies, Not, Temporal, Until, conj, disj

_TOKEN = re.compile(r"\s*(?:(->)|([!&|()\[\]])|(\d+)|([A-Za-z_][A-Za-z0-9_']*))")


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at column {position + 1}")
        self.message = message
        self.position = position
        self.text = text


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastindex)
        kind = ("op", "punct", "int", "ident")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, macros: Mapping[str, Formula]):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.macros = macros

    def peek(self, offset: int = 0):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, val, where = self.take()
        if val != value or kind == "eof":
            found = "end of input" if kind == "eof" else repr(val)
            raise FormulaSyntaxError(f"expected {value!r}, found {found}", where, self.text)

    def parse(self) -> Formula:
        f = self.formula()
        kind, val, where = self.peek()
        if kind != "eof":
            raise FormulaSyntaxError(f"unexpected {val!r}", where, self.text)
        return f

    def formula(self) -> Formula:
        left = self.disj()
        if self.peek()[1] == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        items = [self.conj()]
        while self.peek()[1] == "|":
            self.take()
            items.append(self.conj())
        return disj(items)

    def conj(self) -> Formula:
        items = [self.unary()]
        while self.peek()[1] == "&":
            self.take()
            items.append(self.unary())
        return conj(items)

    def integer(self) -> int:
        kind, val, where = self.take()
        if kind != "int":
            raise FormulaSyntaxError("expected an integer", where, self.text)
        return int(val)

    def unary(self) -> Formula:
        kind, val, where = self.peek()
        if val == "!" and kind == "punct":
            self.take()
            return Not(self.unary())
        if val == "(" and kind == "punct":
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        if kind == "ident":
            if val in TEMPORAL_UNARY:
                self.take()
                return Temporal(val, self.unary())
            if val in ("E", "A") and self.peek(1)[1] == "[":
                self.take()
                self.take()
                left = self.formula()
                self.expect("U")
                right = self.formula()
                self.expect("]")
                return Until(val, left, right)
            if val == "t" and self.peek(1)[1] == "[":
                self.take()
                idx = []
                for _ in range(3):
                    self.expect("[")
                    idx.append(self.integer())
                    self.expect("]")
                return Atom(*idx)
            if val == "true":
                self.take()
                return TRUE
            if val == "false":
                self.take()
                return FALSE
            if val in self.macros:
                self.take()
                return self.macros[val]
            raise FormulaSyntaxError(f"unknown identifier {val!r}", where, self.text)
        found = "end of input" if kind == "eof" else repr(val)
        raise FormulaSyntaxError(f"expected a formula, found {found}", where, self.text)


def parse_formula(text: str, macros: Optional[Mapping[str, Formula]] = None) -> Formula:
    """Parse ``text``; identifiers found in ``macros`` expand to their formulas."""
    return _Parser(text, macros or {}).parse()
