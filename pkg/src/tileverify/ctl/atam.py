"""CTL encodings of tile assembly: axioms, shape and terminal formulas,
local-determinism formulas and the unique-terminal-assembly query."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..core import (
    OFFSETS, Configuration, Loc, SurfaceTooSmall, TileAssemblySystem, binding_rules, frontier, in_surface,
)
from ..transition import (
    DEFAULT_STATE_BUDGET, AssemblySequence, PerimeterReport, TransitionSystem, build,
    is_terminal_beyond_surface, terminal_states,
)
from .checker import check
from .formula import AF, AG, EX, Atom, Formula, Implies, Not, conj, disj


def cell_atom(sys: TileAssemblySystem, name: Optional[str], loc: Loc) -> Atom:
    m = 0 if name is None else sys.index[name] + 1
    return Atom(m, loc[0], loc[1])


def _cells(n: int):
    return [(i, j) for i in range(n) for j in range(n)]


@dataclass(frozen=True)
class Rule:
    """A transition rule at one location: ``antecedent`` enables placing ``tile``."""

    loc: Loc
    tile: int
    pattern: tuple[tuple[int, int], ...]  # (side index, neighbor tile index)
    antecedent: Formula
    consequent: Formula


def location_rules(sys: TileAssemblySystem, n: int, loc: Loc) -> list[Rule]:
    """Every minimal neighbor pattern that lets some tile attach at ``loc``."""
    i, j = loc
    empty = Atom(0, i, j)
    out = []
    for t, patterns in enumerate(binding_rules(sys)):
        for pattern in patterns:
            cells = [(i + OFFSETS[d][0], j + OFFSETS[d][1], u) for d, u in pattern]
            if not all(in_surface((x, y), n) for x, y, _ in cells):
                continue
            antecedent = conj([empty] + [Atom(u + 1, x, y) for x, y, u in cells])
            consequent = conj([Not(empty), Atom(t + 1, i, j)])
            out.append(Rule(loc, t, pattern, antecedent, consequent))
    return out


def seed_formula(sys: TileAssemblySystem, n: int) -> Formula:
    return shape_formula(sys.seed_configuration(n), n, sys)


def axiom_groups(sys: TileAssemblySystem, n: int) -> dict[str, list[Formula]]:
    k = sys.k
    groups: dict[str, list[Formula]] = {"empty": [], "exclusive": [], "permanent": [], "binding": [], "seed": []}
    for i, j in _cells(n):
        tiles = [Atom(m, i, j) for m in range(1, k + 1)]
        groups["empty"].append(Implies(Atom(0, i, j), Not(disj(tiles))))
        for m in range(1, k + 1):
            others = [a for a in tiles if a.m != m]
            groups["exclusive"].append(Implies(Atom(m, i, j), Not(disj(others))))
            groups["permanent"].append(Implies(Atom(m, i, j), AG(Atom(m, i, j))))
        for rule in location_rules(sys, n, (i, j)):
            # realised on the transition relation: an enabled rule has a successor applying it
            groups["binding"].append(Implies(rule.antecedent, EX(rule.consequent)))
    groups["seed"].append(seed_formula(sys, n))
    return groups


def axioms(sys: TileAssemblySystem, n: int) -> list[Formula]:
    return [f for group in axiom_groups(sys, n).values() for f in group]


def shape_formula(S: Configuration, n: int, sys: TileAssemblySystem) -> Formula:
    """Conjunction fixing the content of every surface cell, empty cells included."""
    for loc in S.tiles:
        if not in_surface(loc, n):
            raise SurfaceTooSmall(f"shape cell {loc} does not fit on the {n}x{n} surface")
    return conj(cell_atom(sys, S.get(loc), loc) for loc in _cells(n))


def terminal_formula(sys: TileAssemblySystem, n: int) -> Formula:
    """True exactly at configurations where no tile can be added."""
    return conj(Implies(Atom(0, i, j), AG(Atom(0, i, j))) for i, j in _cells(n))


@dataclass(frozen=True)
class Eta:
    rule: Rule
    formula: Formula


def eta_formulas(sys: TileAssemblySystem, n: int) -> list[Eta]:
    """Per location and rule: if the rule is enabled it eventually fires and no rival rule is enabled."""
    out = []
    for loc in _cells(n):
        rules = location_rules(sys, n, loc)
        for rule in rules:
            rivals = [r.antecedent for r in rules if r.tile != rule.tile]
            body = conj([AF(rule.consequent)] + [Not(a) for a in rivals])
            out.append(Eta(rule, Implies(rule.antecedent, body)))
    return out


def local_determinism_formulas(sys: TileAssemblySystem, n: int) -> list[Formula]:
    return [e.formula for e in eta_formulas(sys, n)]


def local_determinism_failures(ts: TransitionSystem) -> list[Eta]:
    """The eta formulas that fail somewhere in the reachable state space."""
    return [e for e in eta_formulas(ts.sys, ts.n) if not check(ts, AG(e.formula)).holds]


class QueryVerdict(str, Enum):
    UNIQUE = "Unique"
    NON_UNIQUE = "NonUnique"
    NOT_TERMINAL = "NotTerminal"


@dataclass(frozen=True)
class QueryResult:
    verdict: QueryVerdict
    surface: int
    terminal_count: Optional[int]
    witnesses: tuple[AssemblySequence, ...] = ()
    terminal: Optional[Configuration] = None
    perimeter: Optional[PerimeterReport] = None
    surfaces_tried: tuple[int, ...] = field(default=())

    @property
    def extends_beyond(self) -> Optional[bool]:
        return None if self.perimeter is None else not self.perimeter.terminal


def next_surface(n: int) -> int:
    """Growth schedule when the lone terminal assembly can extend past the surface: double it."""
    return 2 * n


def unique_terminal_assembly_query(
    sys: TileAssemblySystem,
    n: int,
    S: Optional[Configuration] = None,
    *,
    state_budget: int = DEFAULT_STATE_BUDGET,
    max_growth_retries: int = 1,
) -> QueryResult:
    """Decide, by model checking M(T, n), whether the system has a unique terminal assembly.

    With a candidate ``S``: short-circuit to NotTerminal unless S satisfies the
    terminal formula, then ask whether AF(psi_S) holds at the seed.  Without a
    candidate: collect the deadlocks; a lone deadlock whose perimeter still
    admits growth triggers a retry on a larger surface.
    """
    if S is not None:
        ts = build(sys, n, state_budget)
        return _query_candidate(ts, S)
    tried = []
    size = n
    while True:
        tried.append(size)
        ts = build(sys, size, state_budget)
        result = _query_open(ts)
        if result.verdict != QueryVerdict.UNIQUE or result.perimeter.terminal or len(tried) > max_growth_retries:
            return QueryResult(result.verdict, result.surface, result.terminal_count, result.witnesses,
                               result.terminal, result.perimeter, tuple(tried))
        size = next_surface(size)


def _query_candidate(ts: TransitionSystem, S: Configuration) -> QueryResult:
    sys, n = ts.sys, ts.n
    S = Configuration(n, S.tiles)
    state = ts.state_of(S)
    if state is None:
        if frontier(S, sys):
            return QueryResult(QueryVerdict.NOT_TERMINAL, n, None)
        # terminal but never assembled from the seed: the seed cannot be forced there
        deadlocks = terminal_states(ts)
        witness = ts.sequence_for(ts.path_to(deadlocks[0]))
        return QueryResult(QueryVerdict.NON_UNIQUE, n, len(deadlocks), (witness,), ts.states[deadlocks[0]])
    if not check(ts, terminal_formula(sys, n), state).holds:
        return QueryResult(QueryVerdict.NOT_TERMINAL, n, None)
    res = check(ts, AF(shape_formula(S, n, sys)))
    count = len(terminal_states(ts))
    if res.holds:
        return QueryResult(QueryVerdict.UNIQUE, n, count, (), S, is_terminal_beyond_surface(S, sys))
    other = ts.sequence_for(res.path)
    target = ts.sequence_for(ts.path_to(state))
    return QueryResult(QueryVerdict.NON_UNIQUE, n, count, (target, other), S)


def _query_open(ts: TransitionSystem) -> QueryResult:
    sys, n = ts.sys, ts.n
    deadlocks = terminal_states(ts)
    if len(deadlocks) >= 2:
        witnesses = tuple(ts.sequence_for(ts.path_to(d)) for d in deadlocks[:2])
        return QueryResult(QueryVerdict.NON_UNIQUE, n, len(deadlocks), witnesses)
    only = ts.states[deadlocks[0]]
    res = check(ts, AF(shape_formula(only, n, sys)))
    assert res.holds, "a lone deadlock must be inevitable"
    return QueryResult(QueryVerdict.UNIQUE, n, 1, (), only, is_terminal_beyond_surface(only, sys))
