"""Domain types and single-tile attachment semantics of the aTAM.

Coordinates: x grows east, y grows north, the surface is ``{0..n-1}^2``.
Everywhere a deterministic order is needed, locations are ordered row-major
(``(y, x)``) and tile types by name.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Optional

import networkx as nx

Loc = tuple[int, int]

DEFAULT_TEMPERATURE = 2
MAX_STRENGTH = 2


class Side(Enum):
    N = 0
    E = 1
    S = 2
    W = 3

    @property
    def opposite(self) -> "Side":
        return SIDES[(self.value + 2) % 4]

    @property
    def offset(self) -> Loc:
        return OFFSETS[self.value]

    def step(self, loc: Loc) -> Loc:
        dx, dy = OFFSETS[self.value]
        return loc[0] + dx, loc[1] + dy


SIDES = (Side.N, Side.E, Side.S, Side.W)
OFFSETS = ((0, 1), (1, 0), (0, -1), (-1, 0))


class TileError(Exception):
    """Base class for errors raised by the attachment semantics."""


class OccupiedLocation(TileError):
    pass


class OutOfBounds(TileError):
    pass


class SurfaceTooSmall(TileError):
    pass


def row_major(loc: Loc) -> tuple[int, int]:
    return loc[1], loc[0]


@dataclass(frozen=True)
class Glue:
    label: str = ""
    strength: int = 0

    def __post_init__(self):
        if not isinstance(self.strength, int) or isinstance(self.strength, bool):
            raise TypeError(f"glue strength must be an int, got {self.strength!r}")
        if not 0 <= self.strength <= MAX_STRENGTH:
            raise ValueError(f"glue strength {self.strength} outside {{0,1,2}}")


NULL_GLUE = Glue()


@dataclass(frozen=True)
class TileType:
    name: str
    north: Glue = NULL_GLUE
    east: Glue = NULL_GLUE
    south: Glue = NULL_GLUE
    west: Glue = NULL_GLUE
    display_label: str = ""

    def __post_init__(self):
        if not self.name:
            raise ValueError("tile name must be nonempty")

    def glue(self, side: Side) -> Glue:
        return (self.north, self.east, self.south, self.west)[side.value]

    @property
    def glues(self) -> tuple[Glue, Glue, Glue, Glue]:
        return (self.north, self.east, self.south, self.west)


@dataclass(frozen=True)
class GlueRelation:
    """Which glue labels bind.

    ``diagonal=True`` is the ISU-TAS convention: two glues bind iff both label
    and strength are equal.  Otherwise ``pairs`` lists the label pairs that
    bind, and a bound pair contributes the smaller of the two strengths.
    """

    pairs: frozenset = frozenset()
    diagonal: bool = True

    def __post_init__(self):
        pairs = frozenset(tuple(p) for p in self.pairs)
        pairs = pairs | {(b, a) for a, b in pairs}
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def explicit(cls, pairs: Iterable[tuple[str, str]]) -> "GlueRelation":
        return cls(pairs=frozenset(pairs), diagonal=False)

    def binds(self, a: str, b: str) -> bool:
        if self.diagonal:
            return a == b
        return (a, b) in self.pairs


DIAGONAL = GlueRelation()


def interaction_strength(a: Glue, b: Glue, rel: GlueRelation = DIAGONAL) -> int:
    if a.strength <= 0 or b.strength <= 0:
        return 0
    if rel.diagonal:
        if a.label == b.label and a.strength == b.strength:
            return a.strength
        return 0
    if (a.label, b.label) in rel.pairs:
        return min(a.strength, b.strength)
    return 0


@dataclass(frozen=True)
class SeedAssembly:
    placements: Mapping[Loc, str]

    def __post_init__(self):
        object.__setattr__(self, "placements", dict(sorted(self.placements.items(), key=lambda kv: row_major(kv[0]))))

    def __hash__(self):
        return hash(tuple(self.placements.items()))

    def __eq__(self, other):
        if not isinstance(other, SeedAssembly):
            return NotImplemented
        return self.placements == other.placements

    def __len__(self):
        return len(self.placements)

    @property
    def extent(self) -> int:
        """Smallest n such that the seed fits on the n x n surface."""
        if not self.placements:
            return 0
        return max(max(x, y) for x, y in self.placements) + 1

    def is_connected(self) -> bool:
        return _connected(self.placements.keys())

    def rooted(self) -> "SeedAssembly":
        """Translate so the bounding box's lower-left corner is (0,0)."""
        if not self.placements:
            return self
        mx = min(x for x, _ in self.placements)
        my = min(y for _, y in self.placements)
        return SeedAssembly({(x - mx, y - my): t for (x, y), t in self.placements.items()})


def _connected(locs: Iterable[Loc]) -> bool:
    locs = set(locs)
    if not locs:
        return True
    start = next(iter(locs))
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for side in SIDES:
            nb = side.step(cur)
            if nb in locs and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(locs)


@dataclass(frozen=True, eq=False)
class TileAssemblySystem:
    tile_types: tuple[TileType, ...]
    seed: SeedAssembly
    glue_relation: GlueRelation = DIAGONAL
    temperature: int = DEFAULT_TEMPERATURE

    def __post_init__(self):
        object.__setattr__(self, "tile_types", tuple(self.tile_types))
        names = [t.name for t in self.tile_types]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate tile names: {dupes}")
        missing = sorted(set(self.seed.placements.values()) - set(names))
        if missing:
            raise ValueError(f"seed references unknown tile types: {missing}")
        if self.temperature < 1:
            raise ValueError("temperature must be positive")

    def __eq__(self, other):
        if not isinstance(other, TileAssemblySystem):
            return NotImplemented
        return (self.tile_types == other.tile_types and self.seed == other.seed
                and self.glue_relation == other.glue_relation
                and self.temperature == other.temperature)

    def __hash__(self):
        return hash((self.tile_types, self.seed, self.glue_relation, self.temperature))

    @property
    def k(self) -> int:
        return len(self.tile_types)

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.tile_types)

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def name_rank(self) -> tuple[int, ...]:
        order = sorted(range(self.k), key=lambda i: self.names[i])
        rank = [0] * self.k
        for r, i in enumerate(order):
            rank[i] = r
        return tuple(rank)

    @cached_property
    def contrib(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """``contrib[d][t][u]``: strength tile t gets from a neighbor u on its side d."""
        rel = self.glue_relation
        return tuple(
            tuple(
                tuple(interaction_strength(t.glue(side), u.glue(side.opposite), rel) for u in self.tile_types)
                for t in self.tile_types
            )
            for side in SIDES
        )

    @cached_property
    def partners(self) -> tuple[tuple[tuple[tuple[int, int], ...], ...], ...]:
        """``partners[d][u]``: (t, strength) pairs for tiles t bound by a neighbor u on t's side d."""
        out = []
        for d in range(4):
            per_u = []
            for u in range(self.k):
                per_u.append(tuple((t, self.contrib[d][t][u]) for t in range(self.k) if self.contrib[d][t][u] > 0))
            out.append(tuple(per_u))
        return tuple(out)

    @cached_property
    def rules(self) -> tuple[tuple[tuple[tuple[int, int], ...], ...], ...]:
        """Per tile: the minimal neighbor patterns reaching the temperature.

        A pattern is a tuple of ``(side index, neighbor tile index)``; it is
        minimal when dropping any one neighbor falls below the temperature.
        """
        out = []
        for t in range(self.k):
            options = [[(u, s) for u, s in enumerate(self.contrib[d][t]) if s > 0] for d in range(4)]
            found = []
            for mask in range(1, 16):
                dirs = [d for d in range(4) if mask >> d & 1]
                for combo in product(*(options[d] for d in dirs)):
                    strengths = [s for _, s in combo]
                    total = sum(strengths)
                    if total >= self.temperature and total - min(strengths) < self.temperature:
                        found.append(tuple((d, u) for d, (u, _) in zip(dirs, combo)))
            found.sort(key=lambda p: (len(p), p))
            out.append(tuple(found))
        return tuple(out)

    def seed_configuration(self, n: int) -> "Configuration":
        if self.seed.extent > n:
            raise SurfaceTooSmall(f"seed needs a {self.seed.extent}x{self.seed.extent} surface, got n={n}")
        return Configuration(n, self.seed.placements)

    def tile(self, name: str) -> TileType:
        return self.tile_types[self.index[name]]


class Configuration:
    """Immutable partial map from surface cells to tile-type names."""

    __slots__ = ("surface_size", "_cells", "_key")

    def __init__(self, surface_size: int, tiles: Mapping[Loc, str] | Iterable[tuple[Loc, str]] = ()):
        if surface_size < 1:
            raise ValueError("surface size must be >= 1")
        cells = dict(tiles)
        for loc in cells:
            if not in_surface(loc, surface_size):
                raise OutOfBounds(f"{loc} outside the {surface_size}x{surface_size} surface")
        self.surface_size = surface_size
        self._cells = cells
        self._key = frozenset(cells.items())

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.surface_size == other.surface_size and self._key == other._key

    def __hash__(self):
        return hash((self.surface_size, self._key))

    def __len__(self):
        return len(self._cells)

    def __contains__(self, loc):
        return loc in self._cells

    def __iter__(self) -> Iterator[Loc]:
        return iter(sorted(self._cells, key=row_major))

    def __repr__(self):
        body = ", ".join(f"{loc}:{self._cells[loc]}" for loc in self)
        return f"Configuration(n={self.surface_size}, {{{body}}})"

    def get(self, loc: Loc) -> Optional[str]:
        return self._cells.get(loc)

    def items(self) -> list[tuple[Loc, str]]:
        return [(loc, self._cells[loc]) for loc in self]

    @property
    def tiles(self) -> dict[Loc, str]:
        return dict(self._cells)

    def with_tile(self, loc: Loc, name: str) -> "Configuration":
        if loc in self._cells:
            raise OccupiedLocation(f"{loc} already holds {self._cells[loc]}")
        cells = dict(self._cells)
        cells[loc] = name
        return Configuration(self.surface_size, cells)

    def without(self, locs: Iterable[Loc]) -> "Configuration":
        drop = set(locs)
        return Configuration(self.surface_size, {l: t for l, t in self._cells.items() if l not in drop})

    def empty_cells(self) -> list[Loc]:
        n = self.surface_size
        return [(x, y) for y in range(n) for x in range(n) if (x, y) not in self._cells]

    def is_full(self) -> bool:
        return len(self._cells) == self.surface_size ** 2


def in_surface(loc: Loc, n: int) -> bool:
    return 0 <= loc[0] < n and 0 <= loc[1] < n


# Internal kernels operate on tile indices through a lookup ``get(loc) -> int | None``
# so both Configuration and the verifier's dense grid can share them.
Lookup = Callable[[Loc], Optional[int]]


def config_lookup(c: Configuration, sys: TileAssemblySystem) -> Lookup:
    index = sys.index
    cells = c._cells

    def get(loc):
        name = cells.get(loc)
        return None if name is None else index[name]

    return get


def side_contributions(sys: TileAssemblySystem, t: int, loc: Loc, get: Lookup) -> list[int]:
    """Strength tile ``t`` would receive from each side (N, E, S, W) at ``loc``."""
    out = [0, 0, 0, 0]
    x, y = loc
    for d, (dx, dy) in enumerate(OFFSETS):
        u = get((x + dx, y + dy))
        if u is not None:
            out[d] = sys.contrib[d][t][u]
    return out


def candidate_strengths(sys: TileAssemblySystem, loc: Loc, get: Lookup) -> dict[int, int]:
    """Total binding strength per tile index with a positive interaction at ``loc``."""
    acc: dict[int, int] = defaultdict(int)
    x, y = loc
    partners = sys.partners
    for d, (dx, dy) in enumerate(OFFSETS):
        u = get((x + dx, y + dy))
        if u is not None:
            for t, s in partners[d][u]:
                acc[t] += s
    return acc


def attachable(sys: TileAssemblySystem, loc: Loc, get: Lookup) -> list[int]:
    """Tile indices that can attach at the (empty) ``loc``, sorted by name."""
    temp = sys.temperature
    rank = sys.name_rank
    return sorted((t for t, s in candidate_strengths(sys, loc, get).items() if s >= temp), key=rank.__getitem__)


def _check_target(loc: Loc, c: Configuration):
    if not in_surface(loc, c.surface_size):
        raise OutOfBounds(f"{loc} outside the {c.surface_size}x{c.surface_size} surface")
    if loc in c:
        raise OccupiedLocation(f"{loc} already holds {c.get(loc)}")


def binding_strength(t: TileType | str, loc: Loc, c: Configuration, sys: TileAssemblySystem) -> int:
    _check_target(loc, c)
    ti = sys.index[t if isinstance(t, str) else t.name]
    return sum(side_contributions(sys, ti, loc, config_lookup(c, sys)))


def can_attach(t: TileType | str, loc: Loc, c: Configuration, sys: TileAssemblySystem) -> bool:
    if not in_surface(loc, c.surface_size):
        raise OutOfBounds(f"{loc} outside the {c.surface_size}x{c.surface_size} surface")
    if loc in c:
        return False
    return binding_strength(t, loc, c, sys) >= sys.temperature


def frontier_cells(c: Configuration) -> list[Loc]:
    """Empty in-surface cells with at least one occupied neighbor, row-major."""
    n = c.surface_size
    cells = set()
    for loc in c.tiles:
        for side in SIDES:
            nb = side.step(loc)
            if in_surface(nb, n) and nb not in c:
                cells.add(nb)
    return sorted(cells, key=row_major)


def frontier(c: Configuration, sys: TileAssemblySystem) -> list[tuple[Loc, str]]:
    """All legal single-tile additions, row-major by location then by tile name."""
    get = config_lookup(c, sys)
    out = []
    for loc in frontier_cells(c):
        for t in attachable(sys, loc, get):
            out.append((loc, sys.names[t]))
    return out


def adjacency_graph(c: Configuration, sys: TileAssemblySystem) -> nx.Graph:
    """Tiles as nodes, 4-adjacent pairs as edges weighted by their glue strength."""
    g = nx.Graph()
    get = config_lookup(c, sys)
    for loc in c.tiles:
        g.add_node(loc)
    for loc, name in c.tiles.items():
        t = sys.index[name]
        for d in (Side.E, Side.N):
            nb = d.step(loc)
            u = get(nb)
            if u is not None:
                g.add_edge(loc, nb, weight=sys.contrib[d.value][t][u])
    return g


def is_stable(c: Configuration, sys: TileAssemblySystem, contract_seed: bool = True) -> bool:
    """True iff every cut of ``c`` into two nonempty parts severs strength >= temperature.

    With ``contract_seed`` the seed tiles present in ``c`` act as one rigid
    unit, since the seed is stable by fiat.
    """
    if len(c) <= 1:
        return True
    g = adjacency_graph(c, sys)
    if contract_seed:
        seed_locs = [loc for loc, name in sys.seed.placements.items() if c.get(loc) == name]
        if len(seed_locs) > 1:
            anchor = seed_locs[0]
            for other in seed_locs[1:]:
                g = nx.contracted_nodes(g, anchor, other, self_loops=False)
            # contracted_nodes keeps one of the parallel edge weights; recompute sums
            g = _resum(g, c, sys, anchor, set(seed_locs))
    if g.number_of_nodes() <= 1:
        return True
    if not nx.is_connected(g):
        return False
    cut, _ = nx.stoer_wagner(g)
    return cut >= sys.temperature


def _resum(g: nx.Graph, c: Configuration, sys: TileAssemblySystem, anchor: Loc, seed_locs: set) -> nx.Graph:
    get = config_lookup(c, sys)
    totals: dict[Loc, int] = defaultdict(int)
    for loc in seed_locs:
        t = get(loc)
        for d in SIDES:
            nb = d.step(loc)
            u = get(nb)
            if u is not None and nb not in seed_locs:
                totals[nb] += sys.contrib[d.value][t][u]
    for nb, w in totals.items():
        g.add_edge(anchor, nb, weight=w)
    return g


def binding_rules(sys: TileAssemblySystem):
    return sys.rules


__all__ = [
    "Configuration", "DIAGONAL", "Glue", "GlueRelation", "Loc", "NULL_GLUE", "OccupiedLocation",
    "OutOfBounds", "SeedAssembly", "Side", "SIDES", "SurfaceTooSmall", "TileAssemblySystem",
    "TileError", "TileType", "attachable", "binding_rules", "binding_strength", "can_attach", "candidate_strengths",
    "config_lookup", "frontier", "frontier_cells", "in_surface", "interaction_strength", "is_stable",
    "row_major", "side_contributions",
]
