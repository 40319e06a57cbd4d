"""Explicit construction of the canonical transition system M(T, n)."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import (
    OFFSETS, SIDES, Configuration, Loc, SurfaceTooSmall, TileAssemblySystem,
    attachable, can_attach, config_lookup, frontier, in_surface, row_major,
)

DEFAULT_STATE_BUDGET = 10_000_000


class StateBudgetExceeded(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"explicit exploration exceeded the state budget of {limit}")
        self.limit = limit


class IllegalStep(ValueError):
    def __init__(self, index: int, tile: str, loc: Loc, reason: str):
        super().__init__(f"step {index}: {tile} @ {loc} is illegal ({reason})")
        self.index = index
        self.tile = tile
        self.loc = loc


@dataclass(frozen=True)
class AssemblySequence:
    """Single-tile additions applied in order to the seed configuration."""

    steps: tuple[tuple[str, Loc], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((t, tuple(l)) for t, l in self.steps))

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def then(self, *steps: tuple[str, Loc]) -> "AssemblySequence":
        return AssemblySequence(self.steps + tuple(steps))

    def replay(self, sys: TileAssemblySystem, n: int) -> Configuration:
        """Apply every step, raising :class:`IllegalStep` on the first one that cannot attach."""
        c = sys.seed_configuration(n)
        for i, (tile, loc) in enumerate(self.steps, start=1):
            if tile not in sys.index:
                raise IllegalStep(i, tile, loc, "unknown tile type")
            if not in_surface(loc, n):
                raise IllegalStep(i, tile, loc, "outside the surface")
            if not can_attach(tile, loc, c, sys):
                raise IllegalStep(i, tile, loc, "insufficient binding strength" if loc not in c else "occupied")
            c = c.with_tile(loc, tile)
        return c

    def is_legal(self, sys: TileAssemblySystem, n: int) -> bool:
        try:
            self.replay(sys, n)
        except IllegalStep:
            return False
        return True


@dataclass(frozen=True)
class Edge:
    target: int
    tile: str
    loc: Loc


@dataclass
class TransitionSystem:
    """Pointed graph of configurations; state 0 is the seed configuration.

    Atomic propositions ``(m, i, j)`` are read off each state's configuration:
    m = 0 means cell (i, j) is empty, m >= 1 means tile type ``m - 1`` sits there.
    """

    sys: TileAssemblySystem
    n: int
    states: list[Configuration]
    edges: list[list[Edge]]
    initial: int = 0
    _index: dict = field(default_factory=dict, repr=False)
    _preds: Optional[list[list[int]]] = field(default=None, repr=False)

    def __len__(self):
        return len(self.states)

    @property
    def num_states(self) -> int:
        return len(self.states)

    @property
    def num_edges(self) -> int:
        return sum(len(e) for e in self.edges)

    @property
    def successors(self) -> list[list[int]]:
        return [[e.target for e in out] for out in self.edges]

    @property
    def predecessors(self) -> list[list[int]]:
        if self._preds is None:
            preds: list[list[int]] = [[] for _ in self.states]
            for s, out in enumerate(self.edges):
                for e in out:
                    preds[e.target].append(s)
            self._preds = preds
        return self._preds

    def state_of(self, c: Configuration) -> Optional[int]:
        if not self._index:
            self._index.update({cfg: i for i, cfg in enumerate(self.states)})
        return self._index.get(c)

    def atom_range(self) -> tuple[int, int]:
        return self.sys.k, self.n

    def holds_atom(self, state: int, atom) -> bool:
        m, i, j = atom
        name = self.states[state].get((i, j))
        if m == 0:
            return name is None
        return name is not None and self.sys.index[name] == m - 1

    def sequence_for(self, path: Iterable[int]) -> AssemblySequence:
        """Convert a state path starting at the initial state to an assembly sequence."""
        path = list(path)
        steps = []
        for a, b in zip(path, path[1:]):
            edge = next(e for e in self.edges[a] if e.target == b)
            steps.append((edge.tile, edge.loc))
        return AssemblySequence(tuple(steps))

    def path_to(self, target: int) -> list[int]:
        """Shortest state path from the initial state to ``target``."""
        parent = {self.initial: None}
        queue = deque([self.initial])
        while queue:
            s = queue.popleft()
            if s == target:
                break
            for e in self.edges[s]:
                if e.target not in parent:
                    parent[e.target] = s
                    queue.append(e.target)
        if target not in parent:
            raise ValueError(f"state {target} is unreachable")
        path = [target]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path[::-1]

    def to_edge_list(self) -> str:
        """One edge per line: ``src dst tile x y``."""
        lines = [f"# states {self.num_states} edges {self.num_edges} initial {self.initial}"]
        for s, out in enumerate(self.edges):
            for e in out:
                lines.append(f"{s} {e.target} {e.tile} {e.loc[0]} {e.loc[1]}")
        return "\n".join(lines) + "\n"


def build(sys: TileAssemblySystem, n: int, state_budget: int = DEFAULT_STATE_BUDGET) -> TransitionSystem:
    """Breadth-first closure of the seed configuration under legal single-tile additions.

    States are numbered in discovery order; successors are expanded in the
    frontier's row-major/name order, so numbering is reproducible.
    """
    seed = sys.seed_configuration(n)
    states = [seed]
    index = {seed: 0}
    edges: list[list[Edge]] = []
    head = 0
    while head < len(states):
        c = states[head]
        out = []
        for loc, tile in frontier(c, sys):
            nxt = c.with_tile(loc, tile)
            j = index.get(nxt)
            if j is None:
                if len(states) >= state_budget:
                    raise StateBudgetExceeded(state_budget)
                j = len(states)
                index[nxt] = j
                states.append(nxt)
            out.append(Edge(j, tile, loc))
        edges.append(out)
        head += 1
    return TransitionSystem(sys, n, states, edges, 0, index)


def terminal_states(ts: TransitionSystem) -> list[int]:
    return [s for s, out in enumerate(ts.edges) if not out]


@dataclass(frozen=True)
class PerimeterReport:
    terminal: bool
    cell: Optional[Loc] = None
    tile: Optional[str] = None


def is_terminal_beyond_surface(c: Configuration, sys: TileAssemblySystem) -> PerimeterReport:
    """Scan the perimeter of ``c`` for a glue that would let growth leave the surface.

    Only the north and east edges face unbounded space (the surface sits in
    the first quadrant).  A cell just outside the surface has exactly one
    neighbor inside it, so growth there needs a single glue reaching the
    temperature on its own.
    """
    n = c.surface_size
    get = config_lookup(c, sys)
    perimeter = sorted({(x, y) for x in range(n) for y in range(n) if x in (0, n - 1) or y in (0, n - 1)},
                       key=row_major)
    for loc in perimeter:
        if get(loc) is None:
            continue
        for d, (dx, dy) in enumerate(OFFSETS):
            outside = (loc[0] + dx, loc[1] + dy)
            if outside[0] < 0 or outside[1] < 0 or in_surface(outside, n):
                continue
            ts = attachable(sys, outside, get)
            if ts:
                return PerimeterReport(False, loc, sys.names[ts[0]])
    return PerimeterReport(True)


def _grow(sys: TileAssemblySystem, n: int, grid: dict, pick) -> list[tuple[str, Loc]]:
    """Add tiles until nothing attaches; ``pick`` chooses among the current frontier."""
    get = grid.get
    pending: dict[Loc, list[int]] = {}

    def refresh(loc):
        if not in_surface(loc, n) or loc in grid:
            pending.pop(loc, None)
            return
        cands = attachable(sys, loc, get)
        if cands:
            pending[loc] = cands
        else:
            pending.pop(loc, None)

    for loc in list(grid):
        for side in SIDES:
            refresh(side.step(loc))
    steps = []
    while pending:
        options = [(loc, t) for loc in sorted(pending, key=row_major) for t in pending[loc]]
        loc, t = pick(options)
        grid[loc] = t
        steps.append((sys.names[t], loc))
        pending.pop(loc)
        for side in SIDES:
            refresh(side.step(loc))
    return steps


def extend_to_terminal(sys: TileAssemblySystem, n: int, seq: AssemblySequence) -> AssemblySequence:
    """Replay ``seq`` then keep adding the first frontier element until the assembly is terminal."""
    c = seq.replay(sys, n)
    grid = {loc: sys.index[name] for loc, name in c.items()}
    return seq.then(*_grow(sys, n, grid, lambda options: options[0]))


def random_assembly_sequence(sys: TileAssemblySystem, n: int, rng_seed: int = 0) -> AssemblySequence:
    """Uniformly sample a frontier element at every step until the frontier is empty."""
    rng = random.Random(rng_seed)
    c = sys.seed_configuration(n)
    grid = {loc: sys.index[name] for loc, name in c.items()}
    return AssemblySequence(tuple(_grow(sys, n, grid, rng.choice)))


__all__ = [
    "AssemblySequence", "DEFAULT_STATE_BUDGET", "Edge", "IllegalStep", "PerimeterReport", "StateBudgetExceeded",
    "SurfaceTooSmall", "TransitionSystem", "build", "extend_to_terminal", "is_terminal_beyond_surface",
    "random_assembly_sequence", "terminal_states",
]
