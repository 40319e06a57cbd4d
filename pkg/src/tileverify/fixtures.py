"""Reference tile assembly systems used by the test-suite and the CLI.

``sierpinski`` is the classic seven-tile XOR system.  ``carpet_mod3`` is the
same construction over Z/3 (Pascal's triangle mod 3, a carpet-like fractal).
``ambiguous`` and ``drop`` are deliberately broken variants.
"""
from __future__ import annotations

from .core import Glue, SeedAssembly, TileAssemblySystem, TileType


def _rule_tiles(base: int) -> list[TileType]:
    tiles = []
    for w in range(base):
        for s in range(base):
            out = str((w + s) % base)
            tiles.append(TileType(
                name=f"{w}+{s}",
                north=Glue(out, 1), east=Glue(out, 1),
                south=Glue(str(s), 1), west=Glue(str(w), 1),
                display_label=out,
            ))
    return tiles


def _boundary(east_glue: Glue = Glue("1", 1)) -> list[TileType]:
    return [
        TileType("seed", north=Glue("v", 2), east=Glue("h", 2), display_label="S"),
        TileType("north", north=Glue("v", 2), south=Glue("v", 2), east=east_glue, display_label="1"),
        TileType("east", east=Glue("h", 2), west=Glue("h", 2), north=Glue("1", 1), display_label="1"),
    ]


def sierpinski() -> TileAssemblySystem:
    """Seven tiles: seed, west-column tile ``north``, south-row tile ``east``, four XOR rules."""
    return TileAssemblySystem(tuple(_boundary() + _rule_tiles(2)), SeedAssembly({(0, 0): "seed"}))


def carpet_mod3() -> TileAssemblySystem:
    return TileAssemblySystem(tuple(_boundary() + _rule_tiles(3)), SeedAssembly({(0, 0): "seed"}))


def ambiguous() -> TileAssemblySystem:
    """Sierpinski with a dedicated first south-row tile and a rival for that cell.

    ``first`` and ``stop`` have identical west/south glues, so (1,0) admits
    both; ``stop`` has no east glue, ending the south row.  Exactly two
    terminal assemblies exist on every surface with n >= 2.
    """
    seed, north, east = _boundary()
    seed = TileType("seed", north=seed.north, east=Glue("g", 2), display_label="S")
    first = TileType("first", west=Glue("g", 2), east=Glue("h", 2), north=Glue("1", 1), display_label="1")
    stop = TileType("stop", west=Glue("g", 2), north=Glue("1", 1), display_label="1")
    tiles = [seed, north, east, first, stop] + _rule_tiles(2)
    return TileAssemblySystem(tuple(tiles), SeedAssembly({(0, 0): "seed"}))


def drop() -> TileAssemblySystem:
    """Non-rectilinear: the west column exposes a strength-2 east glue to a
    ``hook`` tile whose strength-2 south glue lets ``drop`` grow downward."""
    tiles = _boundary(east_glue=Glue("p", 2)) + _rule_tiles(2) + [
        TileType("hook", west=Glue("p", 2), south=Glue("q", 2), display_label="K"),
        TileType("drop", north=Glue("q", 2), display_label="D"),
    ]
    return TileAssemblySystem(tuple(tiles), SeedAssembly({(0, 0): "seed"}))


def overbind() -> TileAssemblySystem:
    """Unique terminal assembly, but the corner tile binds with strength 3.

    The column tile exposes a strength-2 east glue above the south row, so the
    default rectilinearity rules reject it first; under the literal reading
    (east-facing glues unchecked) the over-binding is what surfaces.
    """
    tiles = [
        TileType("seed", north=Glue("v", 2), east=Glue("h", 2)),
        TileType("col", south=Glue("v", 2), east=Glue("a", 2)),
        TileType("row", west=Glue("h", 2), north=Glue("b", 1)),
        TileType("corner", west=Glue("a", 2), south=Glue("b", 1)),
    ]
    return TileAssemblySystem(tuple(tiles), SeedAssembly({(0, 0): "seed"}))


FIXTURES = {
    "sierpinski": sierpinski,
    "carpet": carpet_mod3,
    "ambiguous": ambiguous,
    "drop": drop,
    "overbind": overbind,
}
