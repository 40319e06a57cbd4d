"""Guarded Petri-net encoding of a tile assembly system and a token-game explorer.

Places: ``empty[i][j]`` for every cell, then ``tile[k][i][j]`` for every tile
type and cell, (|T|+1) n^2 in all.  Transition ``bond[k][i][j]`` moves the
token of cell (i, j) from ``empty`` to ``tile[k]`` when its guard holds.
Guards are disjunctions of neighbor-presence terms drawn from one rule table
per tile type, shared by every location; a location's guard drops the terms
that would look off the surface.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .core import OFFSETS, Configuration, TileAssemblySystem, in_surface
from .transition import DEFAULT_STATE_BUDGET, StateBudgetExceeded

Term = tuple[int, ...]  # place indices that must all hold a token


@dataclass(frozen=True, eq=False)
class GuardedPetriNet:
    sys: TileAssemblySystem
    n: int

    @property
    def k(self) -> int:
        return self.sys.k

    @property
    def num_places(self) -> int:
        return (self.k + 1) * self.n ** 2

    @property
    def num_transitions(self) -> int:
        return self.k * self.n ** 2

    def empty_place(self, i: int, j: int) -> int:
        return i * self.n + j

    def tile_place(self, k: int, i: int, j: int) -> int:
        n = self.n
        return n * n + k * n * n + i * n + j

    def transition(self, k: int, i: int, j: int) -> int:
        n = self.n
        return k * n * n + i * n + j

    def transition_coords(self, index: int) -> tuple[int, int, int]:
        n2 = self.n * self.n
        k, rest = divmod(index, n2)
        i, j = divmod(rest, self.n)
        return k, i, j

    def place_name(self, p: int) -> str:
        n2 = self.n * self.n
        if p < n2:
            i, j = divmod(p, self.n)
            return f"empty[{i}][{j}]"
        k, rest = divmod(p - n2, n2)
        i, j = divmod(rest, self.n)
        return f"tile[{k}][{i}][{j}]"

    def place_names(self) -> list[str]:
        return [self.place_name(p) for p in range(self.num_places)]

    def arcs(self, t: int) -> tuple[int, int]:
        """(input place, output place) of transition ``t``; both arcs have weight 1."""
        k, i, j = self.transition_coords(t)
        return self.empty_place(i, j), self.tile_place(k, i, j)

    @cached_property
    def rule_table(self) -> tuple[tuple[tuple[tuple[int, int, int], ...], ...], ...]:
        """Per tile type: guard terms as tuples of (dx, dy, neighbor tile)."""
        table = []
        for patterns in self.sys.rules:
            terms = []
            for pattern in patterns:
                terms.append(tuple((OFFSETS[d][0], OFFSETS[d][1], u) for d, u in pattern))
            table.append(tuple(terms))
        return tuple(table)

    def guard_terms(self, t: int) -> tuple[Term, ...]:
        k, i, j = self.transition_coords(t)
        out = []
        for term in self.rule_table[k]:
            cells = [(i + dx, j + dy, u) for dx, dy, u in term]
            if all(in_surface((x, y), self.n) for x, y, _ in cells):
                out.append(tuple(self.tile_place(u, x, y) for x, y, u in cells))
        return tuple(out)

    @cached_property
    def guards(self) -> tuple[tuple[Term, ...], ...]:
        return tuple(self.guard_terms(t) for t in range(self.num_transitions))

    @cached_property
    def initial_marking(self) -> bytes:
        m = bytearray(self.num_places)
        seed = self.sys.seed_configuration(self.n)
        for i in range(self.n):
            for j in range(self.n):
                name = seed.get((i, j))
                if name is None:
                    m[self.empty_place(i, j)] = 1
                else:
                    m[self.tile_place(self.sys.index[name], i, j)] = 1
        return bytes(m)

    def guard_holds(self, t: int, marking: bytes) -> bool:
        return any(all(marking[p] > 0 for p in term) for term in self.guards[t])

    def enabled(self, marking: bytes) -> list[int]:
        out = []
        n2 = self.n * self.n
        for cell in range(n2):
            if marking[cell] == 0:
                continue
            i, j = divmod(cell, self.n)
            for k in range(self.k):
                t = self.transition(k, i, j)
                if self.guard_holds(t, marking):
                    out.append(t)
        return out

    def fire(self, marking: bytes, t: int) -> bytes:
        src, dst = self.arcs(t)
        if marking[src] < 1:
            raise ValueError(f"transition {t} is not enabled")
        m = bytearray(marking)
        m[src] -= 1
        m[dst] += 1
        return bytes(m)

    def marking_to_configuration(self, marking: bytes) -> Configuration:
        tiles = {}
        n2 = self.n * self.n
        for p in range(n2, self.num_places):
            if marking[p]:
                k, rest = divmod(p - n2, n2)
                tiles[divmod(rest, self.n)] = self.sys.names[k]
        return Configuration(self.n, tiles)

    def configuration_to_marking(self, c: Configuration) -> bytes:
        m = bytearray(self.num_places)
        for i in range(self.n):
            for j in range(self.n):
                name = c.get((i, j))
                if name is None:
                    m[self.empty_place(i, j)] = 1
                else:
                    m[self.tile_place(self.sys.index[name], i, j)] = 1
        return bytes(m)


def translate(sys: TileAssemblySystem, n: int) -> GuardedPetriNet:
    sys.seed_configuration(n)  # raises if the seed does not fit
    return GuardedPetriNet(sys, n)


@dataclass
class ExploreResult:
    reachable: int
    terminal: int
    edges: int
    markings: Optional[list[bytes]] = None
    graph: Optional[list[list[tuple[int, int]]]] = field(default=None, repr=False)  # (target, transition)


def explore(net: GuardedPetriNet, state_budget: int = DEFAULT_STATE_BUDGET, keep_graph: bool = False) -> ExploreResult:
    """Breadth-first token game; terminal markings are those enabling no transition."""
    start = net.initial_marking
    index = {start: 0}
    order = [start]
    graph: list[list[tuple[int, int]]] = []
    terminal = edges = 0
    head = 0
    while head < len(order):
        m = order[head]
        head += 1
        out = []
        for t in net.enabled(m):
            nxt = net.fire(m, t)
            j = index.get(nxt)
            if j is None:
                if len(order) >= state_budget:
                    raise StateBudgetExceeded(state_budget)
                j = len(order)
                index[nxt] = j
                order.append(nxt)
            out.append((j, t))
        edges += len(out)
        if not out:
            terminal += 1
        if keep_graph:
            graph.append(out)
    return ExploreResult(len(order), terminal, edges, order if keep_graph else None, graph if keep_graph else None)
