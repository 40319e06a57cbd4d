"""Polynomial-time verification of rectilinear tile assembly systems.

A rectilinear system grows only northward and eastward, each tile binding
with exactly the temperature through its south and/or west sides.  A tile's
binding at (x, y) is then independent of anything strictly north-west or
strictly south-east of it, so one representative interleaving suffices
everywhere except on the diagonal band, where the three cells
``(k-1, k), (k, k-1), (k, k)`` are explored in all four distinguishable
arrival orders.  The surface is processed in L-shaped layers
``max(x, y) = k``; each layer places its off-diagonal cells once and then
explores its diagonal region, for ``n^2 + n - 1`` configurations in total.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

from .core import (
    OFFSETS, SIDES, Configuration, Loc, Side, SurfaceTooSmall, TileAssemblySystem, attachable,
    candidate_strengths, config_lookup, in_surface, side_contributions,
)
from .transition import AssemblySequence, extend_to_terminal


class Verdict(str, Enum):
    UNIQUE_TERMINAL = "UniqueTerminal"
    NOT_RECTILINEAR = "NotRectilinear"
    NON_UNIQUE_TERMINAL = "NonUniqueTerminal"
    NOT_LOCALLY_DETERMINISTIC = "NotLocallyDeterministic"


class SeedNotSingleton(ValueError):
    pass


@dataclass(frozen=True)
class RectilinearityViolation:
    loc: Loc
    direction: Side
    kind: str  # "bound" (attached through N/E) or "exposed" (forbidden free strength-2 glue)

    def describe(self) -> str:
        if self.kind == "bound":
            return f"tile at {self.loc} binds through its {self.direction.name} side"
        return f"tile at {self.loc} exposes a free strength-2 {self.direction.name} glue"


@dataclass(frozen=True)
class LocalDeterminismViolation:
    loc: Loc
    kind: str  # "over-binding" or "ambiguous"
    strength: int = 0
    rivals: tuple[str, ...] = ()

    def describe(self) -> str:
        if self.kind == "over-binding":
            return f"tile at {self.loc} binds with strength {self.strength}"
        return f"{len(self.rivals)} tile types fit at {self.loc}: {', '.join(self.rivals)}"


def budget(n: int) -> int:
    return n * n + n - 1


@dataclass
class VerificationReport:
    verdict: Verdict
    surface: int
    configurations_evaluated: int
    witnesses: tuple[AssemblySequence, ...] = ()
    reason: str = ""
    location: Optional[Loc] = None
    assembly: Optional[Configuration] = None
    local_determinism: Optional[LocalDeterminismViolation] = None

    @property
    def budget(self) -> int:
        return budget(self.surface)


def _exposure_violation(sys, t: int, loc: Loc, get, n: int, strict: bool) -> Optional[RectilinearityViolation]:
    x, y = loc
    tile = sys.tile_types[t]
    for side in SIDES:
        if tile.glue(side).strength < 2:
            continue
        nb = side.step(loc)
        if not in_surface(nb, n) or get(nb) is not None:
            continue
        if side is Side.N:
            bad = x > 0
        elif side is Side.E:
            bad = (not strict) and y > 0
        elif side is Side.W:
            bad = (not strict) or y > 0
        else:
            bad = True
        if bad:
            return RectilinearityViolation(loc, side, "exposed")
    return None


def _placement_violation(sys, t: int, loc: Loc, get, n: int, strict: bool) -> Optional[RectilinearityViolation]:
    contrib = side_contributions(sys, t, loc, get)
    for side in (Side.N, Side.E):
        if contrib[side.value] > 0:
            return RectilinearityViolation(loc, side, "bound")
    return _exposure_violation(sys, t, loc, get, n, strict)


def rectilinearity_check(c: Configuration, last_placed: Loc, sys: TileAssemblySystem,
                         strict: bool = False) -> Optional[RectilinearityViolation]:
    """Check the tile most recently placed at ``last_placed`` in ``c``.

    Flags a tile that received strength through its north or east side, a
    free strength-2 north glue away from the west edge, and a free
    strength-2 east glue away from the south edge; free strength-2 south or
    west glues always point growth backwards.  ``strict`` swaps the
    east rule for the literal west-edge wording (west glue only on the
    south edge, east glue unchecked).  Glues facing off the surface or an
    occupied cell are not free.
    """
    name = c.get(last_placed)
    if name is None:
        raise ValueError(f"no tile at {last_placed}")
    get = config_lookup(c, sys)
    t = sys.index[name]

    def without_self(loc):
        return None if loc == last_placed else get(loc)

    contrib = side_contributions(sys, t, last_placed, without_self)
    for side in (Side.N, Side.E):
        if contrib[side.value] > 0:
            return RectilinearityViolation(last_placed, side, "bound")
    return _exposure_violation(sys, t, last_placed, get, c.surface_size, strict)


def local_determinism_online(placement: tuple[str, Loc], c: Configuration,
                             sys: TileAssemblySystem) -> Optional[LocalDeterminismViolation]:
    """Check a legal placement into ``c`` binds with exactly the temperature and has no rival."""
    tile, loc = placement
    return _ld_check(sys, sys.index[tile], loc, config_lookup(c, sys))


def _ld_check(sys, t: int, loc: Loc, get) -> Optional[LocalDeterminismViolation]:
    strengths = candidate_strengths(sys, loc, get)
    total = strengths.get(t, 0)
    if total > sys.temperature:
        return LocalDeterminismViolation(loc, "over-binding", total)
    rivals = [u for u, s in strengths.items() if s >= sys.temperature]
    if len(rivals) > 1:
        names = tuple(sorted(sys.names[u] for u in rivals))
        return LocalDeterminismViolation(loc, "ambiguous", total, names)
    return None


def schedule(n: int) -> Iterator[tuple[str, tuple[Loc, ...]]]:
    """The verification order: ("cell", (loc,)) or ("region", (west, south, corner))."""
    yield "cell", ((0, 0),)
    for k in range(1, n):
        for x in range(k - 1):
            yield "cell", ((x, k),)
        for y in range(k - 1):
            yield "cell", ((k, y),)
        yield "region", ((k - 1, k), (k, k - 1), (k, k))


class _Failure(Exception):
    def __init__(self, report_kwargs):
        super().__init__()
        self.kwargs = report_kwargs


@dataclass
class _Run:
    sys: TileAssemblySystem
    n: int
    strict: bool
    check_ld: bool
    grid: dict = field(default_factory=dict)
    steps: list = field(default_factory=list)
    evaluated: int = 0

    def get(self, loc):
        return self.grid.get(loc)

    def seq(self, *extra) -> AssemblySequence:
        return AssemblySequence(tuple(self.steps) + tuple(extra))

    def fail(self, verdict: Verdict, witnesses, reason: str, loc: Loc, ld=None):
        raise _Failure(dict(verdict=verdict, witnesses=tuple(witnesses), reason=reason, location=loc,
                            local_determinism=ld))

    def place(self, loc: Loc) -> Optional[int]:
        """Place the unique tile fitting at ``loc`` (if any) and run every per-placement check."""
        sys = self.sys
        if loc in self.grid:
            return self.grid[loc]
        cands = attachable(sys, loc, self.get)
        if not cands:
            return None
        if len(cands) > 1:
            a, b = (sys.names[c] for c in cands[:2])
            ld = _ld_check(sys, cands[0], loc, self.get) if self.check_ld else None
            w1 = extend_to_terminal(sys, self.n, self.seq((a, loc)))
            w2 = extend_to_terminal(sys, self.n, self.seq((b, loc)))
            self.fail(Verdict.NON_UNIQUE_TERMINAL, (w1, w2), f"both {a} and {b} fit at {loc}", loc, ld)
        t = cands[0]
        name = sys.names[t]
        ld = _ld_check(sys, t, loc, self.get) if self.check_ld else None
        self.grid[loc] = t
        self.steps.append((name, loc))
        viol = _placement_violation(sys, t, loc, self._before(loc), self.n, self.strict)
        if viol is not None:
            self.fail(Verdict.NOT_RECTILINEAR, (self.seq(),), viol.describe(), loc)
        if ld is not None:
            self.fail(Verdict.NOT_LOCALLY_DETERMINISTIC, (self.seq(),), ld.describe(), loc, ld)
        return t

    def _before(self, placed: Loc):
        grid = self.grid

        def get(loc):
            return None if loc == placed else grid.get(loc)

        return get

    def unplace(self, loc: Loc):
        if loc in self.grid and self.steps and self.steps[-1][1] == loc:
            del self.grid[loc]
            self.steps.pop()

    def lookahead(self, around: tuple[Loc, ...]):
        """Try every tile that could join next to ``around`` for rectilinearity violations."""
        sys, n = self.sys, self.n
        seen = set()
        for loc in around:
            if loc not in self.grid:
                continue
            for dx, dy in OFFSETS:
                nb = (loc[0] + dx, loc[1] + dy)
                if nb in seen or not in_surface(nb, n) or nb in self.grid:
                    continue
                seen.add(nb)
                for t in attachable(sys, nb, self.get):
                    self.grid[nb] = t
                    try:
                        viol = _placement_violation(sys, t, nb, self._before(nb), n, self.strict)
                    finally:
                        del self.grid[nb]
                    if viol is not None:
                        self.fail(Verdict.NOT_RECTILINEAR, (self.seq((sys.names[t], nb)),), viol.describe(), nb)

    def cell(self, loc: Loc):
        self.evaluated += 1
        self.place(loc)
        self.lookahead((loc,))

    def region(self, west: Loc, south: Loc, corner: Loc):
        # west precursor alone
        self.evaluated += 1
        self.place(west)
        self.lookahead((west,))
        self.unplace(west)
        # south precursor alone
        self.evaluated += 1
        self.place(south)
        self.lookahead((south,))
        self.unplace(south)
        # both precursors
        self.evaluated += 1
        self.place(west)
        self.place(south)
        self.lookahead((west, south))
        # corner fill
        self.evaluated += 1
        self.place(corner)
        self.lookahead((corner,))


def verify(sys: TileAssemblySystem, n: int, *, strict: bool = False, local_determinism: bool = True,
           allow_multi_tile_seed: bool = False) -> VerificationReport:
    """Verify that ``sys`` is rectilinear with a unique terminal assembly on the n x n surface.

    Returns UniqueTerminal, or the first failure found along the schedule with
    replayable witness sequences: one for NotRectilinear and
    NotLocallyDeterministic, two (extended to terminal assemblies) for
    NonUniqueTerminal.  A multi-tile seed is rejected unless
    ``allow_multi_tile_seed``, in which case it is treated as one pre-placed
    block whose cells count as evaluated.
    """
    if n < 1:
        raise SurfaceTooSmall("surface size must be >= 1")
    if len(sys.seed) != 1 and not allow_multi_tile_seed:
        raise SeedNotSingleton(f"seed has {len(sys.seed)} tiles; verification assumes a single seed tile")
    seed = sys.seed_configuration(n)
    if (0, 0) not in seed:
        raise SeedNotSingleton("seed must occupy (0,0)")
    run = _Run(sys, n, strict, local_determinism)
    for loc, name in seed.items():
        run.grid[loc] = sys.index[name]
    try:
        for kind, locs in schedule(n):
            if kind == "cell":
                run.cell(locs[0])
            else:
                run.region(*locs)
    except _Failure as failure:
        return VerificationReport(surface=n, configurations_evaluated=run.evaluated, **failure.kwargs)
    assembly = Configuration(n, {loc: sys.names[t] for loc, t in run.grid.items()})
    return VerificationReport(Verdict.UNIQUE_TERMINAL, n, run.evaluated, (), "", None, assembly)


__all__ = [
    "LocalDeterminismViolation", "RectilinearityViolation", "SeedNotSingleton", "Verdict", "VerificationReport",
    "budget", "local_determinism_online", "rectilinearity_check", "schedule", "verify",
]
