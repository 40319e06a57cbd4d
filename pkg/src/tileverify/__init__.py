"""Verification toolkit for tile assembly systems in the abstract Tile Assembly Model."""
from .core import (
    Configuration, Glue, GlueRelation, SeedAssembly, Side, TileAssemblySystem, TileType, can_attach, frontier,
    is_stable,
)
from .counting import diamond_enumeration, explicit_config_count, worst_case_config_count
from .transition import AssemblySequence, build
from .verify import Verdict, verify

__version__ = "0.1.0"
