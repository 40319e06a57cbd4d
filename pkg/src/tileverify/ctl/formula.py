"""CTL formula trees.

Atoms are triples ``(m, i, j)``: tile type ``m`` (1-based; 0 = empty) at cell
``(i, j)``.  ``str(f)`` renders the textual syntax accepted by
:func:`tileverify.ctl.parser.parse_formula`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

TEMPORAL_UNARY = ("EX", "AX", "EF", "AF", "EG", "AG")


class Formula:
    def __and__(self, other: "Formula") -> "Formula":
        return conj([self, other])

    def __or__(self, other: "Formula") -> "Formula":
        return disj([self, other])

    def __invert__(self) -> "Formula":
        return Not(self)

    def implies(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def children(self) -> tuple["Formula", ...]:
        return ()

    def atoms(self) -> Iterator["Atom"]:
        stack = [self]
        while stack:
            f = stack.pop()
            if isinstance(f, Atom):
                yield f
            stack.extend(f.children())

    def size(self) -> int:
        count = 0
        stack = [self]
        while stack:
            f = stack.pop()
            count += 1
            stack.extend(f.children())
        return count


@dataclass(frozen=True)
class Atom(Formula):
    m: int
    i: int
    j: int

    def __iter__(self):
        return iter((self.m, self.i, self.j))

    def __str__(self):
        return f"t[{self.m}][{self.i}][{self.j}]"


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self):
        return f"!{_wrap(self.arg)}"


@dataclass(frozen=True)
class And(Formula):
    args: tuple[Formula, ...]

    def children(self):
        return self.args

    def __str__(self):
        return " & ".join(_wrap(a) for a in self.args)


@dataclass(frozen=True)
class Or(Formula):
    args: tuple[Formula, ...]

    def children(self):
        return self.args

    def __str__(self):
        return " | ".join(_wrap(a) for a in self.args)


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"{_wrap(self.left)} -> {_wrap(self.right)}"


@dataclass(frozen=True)
class Temporal(Formula):
    """One of EX, AX, EF, AF, EG, AG applied to ``arg``."""

    op: str
    arg: Formula

    def __post_init__(self):
        if self.op not in TEMPORAL_UNARY:
            raise ValueError(f"unknown temporal operator {self.op!r}")

    def children(self):
        return (self.arg,)

    def __str__(self):
        return f"{self.op} {_wrap(self.arg)}"


@dataclass(frozen=True)
class Until(Formula):
    quantifier: str  # "E" or "A"
    left: Formula
    right: Formula

    def __post_init__(self):
        if self.quantifier not in ("E", "A"):
            raise ValueError(f"unknown path quantifier {self.quantifier!r}")

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"{self.quantifier}[{self.left} U {self.right}]"


def _wrap(f: Formula) -> str:
    if isinstance(f, (Atom, Const, Until)):
        return str(f)
    if isinstance(f, (Not, Temporal)):
        return str(f)
    return f"({f})"


def conj(items: Iterable[Formula]) -> Formula:
    items = tuple(items)
    if not items:
        return TRUE
    if len(items) == 1:
        return items[0]
    return And(items)


def disj(items: Iterable[Formula]) -> Formula:
    items = tuple(items)
    if not items:
        return FALSE
    if len(items) == 1:
        return items[0]
    return Or(items)


def EX(f): return Temporal("EX", f)
def AX(f): return Temporal("AX", f)
def EF(f): return Temporal("EF", f)
def AF(f): return Temporal("AF", f)
def EG(f): return Temporal("EG", f)
def AG(f): return Temporal("AG", f)
def EU(a, b): return Until("E", a, b)
def AU(a, b): return Until("A", a, b)
