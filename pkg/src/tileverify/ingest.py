"""Readers and writers for tile assembly system descriptions.

Three text formats are supported:

* ISU-TAS tileset files: one record per tile, ``TILENAME`` ... ``CREATE``,
  one ``KEY value`` pair per line.
* Seed files: ``<tile-name> <x> <y>`` per line, ``#`` starts a comment.
* A native single-file format with a ``TASV1`` header followed by
  ``key <json>`` lines, which also records the glue relation and temperature.

Parsers never raise anything but :class:`ParseError`, whose ``diagnostics``
carry 1-based line/column positions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import (
    DEFAULT_TEMPERATURE, MAX_STRENGTH, Configuration, Glue, GlueRelation, SeedAssembly, TileAssemblySystem,
    TileType, is_stable,
)

Text = Union[str, bytes, bytearray]

SIDE_KEYS = ("NORTH", "EAST", "SOUTH", "WEST")
KNOWN_KEYS = frozenset(
    ["TILENAME", "LABEL", "CREATE"]
    + [f"{s}BIND" for s in SIDE_KEYS]
    + [f"{s}LABEL" for s in SIDE_KEYS]
)
NATIVE_HEADER = "TASV1"


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    code: str
    message: str
    severity: str = "error"

    def __str__(self):
        return f"{self.line}:{self.column}: {self.severity}: {self.message} [{self.code}]"


class ParseError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics) or "parse error")


class ElaborationError(ValueError):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{message} [{code}]")


class EmptySystem(ValueError):
    pass


def _decode(text: Text) -> str:
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8", errors="replace")
    if text.startswith("\ufeff"):
        text = text[1:]
    return text


def _lines(text: str):
    # splitlines() would also break on form feeds etc.; only LF / CRLF / CR count here
    return text.replace("\r\n", "\n").replace("\r", "\n").split("\n")


# --------------------------------------------------------------------------- tilesets

@dataclass
class TileRecord:
    name: str
    fields: dict[str, str]
    line: int  # line of the TILENAME key
    positions: dict[str, tuple[int, int]] = field(default_factory=dict, repr=False)

    def strength(self, side: str) -> int:
        return int(self.fields.get(f"{side}BIND", "0"))

    def to_tile_type(self) -> TileType:
        glues = [Glue(self.fields.get(f"{s}LABEL", ""), self.strength(s)) for s in SIDE_KEYS]
        return TileType(self.name, *glues, display_label=self.fields.get("LABEL", ""))


@dataclass
class TilesetDocument:
    records: list[TileRecord]
    warnings: list[Diagnostic] = field(default_factory=list)

    def tile_types(self) -> tuple[TileType, ...]:
        return tuple(r.to_tile_type() for r in self.records)


def parse_tileset(text: Text) -> TilesetDocument:
    src = _decode(text)
    errors: list[Diagnostic] = []
    warnings: list[Diagnostic] = []
    records: list[TileRecord] = []
    seen: dict[str, int] = {}
    current: Optional[TileRecord] = None
    lines = _lines(src)
    for lineno, raw in enumerate(lines, 1):
        stripped = raw.strip()
        if not stripped:
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        parts = stripped.split(None, 1)
        key = parts[0]
        value = parts[1].strip() if len(parts) > 1 else ""
        value_col = raw.find(value, col - 1 + len(key)) + 1 if value else col + len(key)
        if key == "TILENAME":
            if current is not None:
                errors.append(Diagnostic(current.line, 1, "missing-create",
                                         f"record {current.name!r} is missing CREATE"))
            if not value:
                errors.append(Diagnostic(lineno, col, "missing-tilename", "TILENAME has no name"))
                current = TileRecord("", {}, lineno)
                continue
            current = TileRecord(value, {}, lineno, {"TILENAME": (lineno, value_col)})
            continue
        if current is None:
            if key == "CREATE":
                errors.append(Diagnostic(lineno, col, "missing-tilename", "CREATE without a preceding TILENAME"))
            elif key in KNOWN_KEYS:
                errors.append(Diagnostic(lineno, col, "missing-tilename", f"{key} outside a TILENAME record"))
            else:
                warnings.append(Diagnostic(lineno, col, "unknown-key", f"unknown key {key!r} ignored", "warning"))
            continue
        if key == "CREATE":
            if current.name:
                if current.name in seen:
                    errors.append(Diagnostic(current.line, current.positions["TILENAME"][1], "duplicate-name",
                                             f"duplicate tile name {current.name!r} (first defined on line "
                                             f"{seen[current.name]})"))
                else:
                    seen[current.name] = current.line
                    records.append(current)
            current = None
            continue
        if key not in KNOWN_KEYS:
            warnings.append(Diagnostic(lineno, col, "unknown-key", f"unknown key {key!r} ignored", "warning"))
            continue
        if key.endswith("BIND"):
            try:
                strength = int(value)
            except ValueError:
                errors.append(Diagnostic(lineno, value_col, "bad-strength",
                                         f"bind strength {value!r} is not an integer"))
                continue
            if not 0 <= strength <= MAX_STRENGTH:
                errors.append(Diagnostic(lineno, value_col, "strength-range",
                                         "bind strength out of range {0,1,2}"))
                continue
            value = str(strength)
        current.fields[key] = value
        current.positions[key] = (lineno, value_col)
    if current is not None:
        errors.append(Diagnostic(current.line, 1, "missing-create",
                                 f"record {current.name!r} is missing CREATE"))
    if errors:
        raise ParseError(sorted(errors, key=lambda d: (d.line, d.column)))
    return TilesetDocument(records, warnings)


def write_tileset(tiles) -> str:
    """ISU-TAS text for ``tiles`` (an iterable of TileType, or a system)."""
    if isinstance(tiles, TileAssemblySystem):
        tiles = tiles.tile_types
    out = []
    for t in tiles:
        out.append(f"TILENAME {t.name}")
        out.append(f"LABEL {t.display_label}".rstrip())
        for side, glue in zip(SIDE_KEYS, t.glues):
            out.append(f"{side}BIND {glue.strength}")
        for side, glue in zip(SIDE_KEYS, t.glues):
            out.append(f"{side}LABEL {glue.label}".rstrip())
        out.append("CREATE")
    return "\n".join(out) + ("\n" if out else "")


# --------------------------------------------------------------------------- seeds

@dataclass
class SeedDocument:
    entries: list[tuple[str, int, int]]

    def placements(self) -> dict[tuple[int, int], str]:
        return {(x, y): name for name, x, y in self.entries}


def parse_seed(text: Text) -> SeedDocument:
    src = _decode(text)
    entries = []
    errors = []
    where: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(_lines(src), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        col = len(body) - len(body.lstrip()) + 1
        parts = body.split()
        if len(parts) != 3:
            errors.append(Diagnostic(lineno, col, "malformed-seed-line",
                                     f"expected '<name> <x> <y>', got {len(parts)} fields"))
            continue
        name, xs, ys = parts
        try:
            x, y = int(xs), int(ys)
        except ValueError:
            errors.append(Diagnostic(lineno, col, "malformed-seed-line", "coordinates must be integers"))
            continue
        if x < 0 or y < 0:
            errors.append(Diagnostic(lineno, col, "malformed-seed-line", "coordinates must be non-negative"))
            continue
        if (x, y) in where:
            errors.append(Diagnostic(lineno, col, "duplicate-location", f"duplicate location ({x},{y})"))
            continue
        where[(x, y)] = lineno
        entries.append((name, x, y))
    if errors:
        raise ParseError(errors)
    return SeedDocument(entries)


def write_seed(seed: Union[SeedAssembly, TileAssemblySystem]) -> str:
    if isinstance(seed, TileAssemblySystem):
        seed = seed.seed
    return "".join(f"{name} {x} {y}\n" for (x, y), name in seed.placements.items())


# --------------------------------------------------------------------------- elaboration

def elaborate(tileset: TilesetDocument, seed: SeedDocument, temperature: int = DEFAULT_TEMPERATURE,
              glue_relation: GlueRelation = GlueRelation()) -> TileAssemblySystem:
    tiles = tileset.tile_types()
    names = {t.name for t in tiles}
    for name, x, y in seed.entries:
        if name not in names:
            raise ElaborationError("unknown-tile-name", f"seed tile {name!r} at ({x},{y}) is not in the tileset")
    if not seed.entries:
        raise ElaborationError("empty-seed", "seed has no tiles")
    placed = SeedAssembly(seed.placements()).rooted()
    if not placed.is_connected():
        raise ElaborationError("disconnected-seed", "seed tiles are not 4-connected")
    sys = TileAssemblySystem(tiles, placed, glue_relation, temperature)
    config = Configuration(placed.extent, placed.placements)
    if not is_stable(config, sys, contract_seed=False):
        raise ElaborationError("unstable-seed", "seed can be split by a cut below the temperature")
    return sys


def load_system(tileset_text: Text, seed_text: Text, temperature: int = DEFAULT_TEMPERATURE) -> TileAssemblySystem:
    return elaborate(parse_tileset(tileset_text), parse_seed(seed_text), temperature)


# --------------------------------------------------------------------------- native format

def _glue_json(g: Glue) -> list:
    return [g.label, g.strength]


def write_native(sys: TileAssemblySystem) -> str:
    if not sys.tile_types:
        raise EmptySystem("cannot write a system with no tile types")
    dump = lambda v: json.dumps(v, ensure_ascii=False, separators=(",", ":"))  # noqa: E731
    out = [NATIVE_HEADER, f"temperature {sys.temperature}"]
    rel = sys.glue_relation
    out.append("relation " + dump({"diagonal": rel.diagonal, "pairs": sorted(list(p) for p in rel.pairs)}))
    for t in sys.tile_types:
        out.append("tile " + dump({"name": t.name, "label": t.display_label,
                                   "glues": [_glue_json(g) for g in t.glues]}))
    for (x, y), name in sys.seed.placements.items():
        out.append("seed " + dump([name, x, y]))
    return "\n".join(out) + "\n"


def parse_native(text: Text) -> TileAssemblySystem:
    src = _decode(text)
    lines = _lines(src)
    if not lines or lines[0].strip() != NATIVE_HEADER:
        raise ParseError([Diagnostic(1, 1, "bad-header", f"expected header {NATIVE_HEADER!r}")])
    temperature = None
    relation = GlueRelation()
    tiles: list[TileType] = []
    seed: dict[tuple[int, int], str] = {}
    errors = []
    for lineno, raw in enumerate(lines[1:], 2):
        if not raw.strip():
            continue
        key, _, payload = raw.partition(" ")
        try:
            value = json.loads(payload)
            if key == "temperature":
                if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                    raise ValueError("temperature must be a positive integer")
                temperature = value
            elif key == "relation":
                pairs = [tuple(p) for p in value["pairs"]]
                if not all(len(p) == 2 and all(isinstance(s, str) for s in p) for p in pairs):
                    raise ValueError("relation pairs must be label pairs")
                relation = GlueRelation(frozenset(pairs), bool(value["diagonal"]))
            elif key == "tile":
                glues = [Glue(str(label), strength) for label, strength in value["glues"]]
                if len(glues) != 4:
                    raise ValueError("a tile needs exactly four glues")
                tiles.append(TileType(str(value["name"]), *glues, display_label=str(value.get("label", ""))))
            elif key == "seed":
                name, x, y = value
                if not all(isinstance(v, int) and not isinstance(v, bool) for v in (x, y)):
                    raise ValueError("seed coordinates must be integers")
                if (x, y) in seed:
                    raise ValueError(f"duplicate location ({x},{y})")
                seed[(x, y)] = str(name)
            else:
                raise ValueError(f"unknown key {key!r}")
        except (ValueError, TypeError, KeyError, IndexError, AttributeError) as exc:
            errors.append(Diagnostic(lineno, 1, "bad-native-line", str(exc)))
    if temperature is None:
        errors.append(Diagnostic(1, 1, "missing-temperature", "no temperature line"))
    if errors:
        raise ParseError(errors)
    try:
        return TileAssemblySystem(tuple(tiles), SeedAssembly(seed), relation, temperature)
    except ValueError as exc:
        raise ParseError([Diagnostic(1, 1, "invalid-system", str(exc))]) from None


__all__ = [
    "Diagnostic", "ElaborationError", "EmptySystem", "ParseError", "SeedDocument", "TileRecord", "TilesetDocument",
    "elaborate", "load_system", "parse_native", "parse_seed", "parse_tileset", "write_native", "write_seed",
    "write_tileset",
]
