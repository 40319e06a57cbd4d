"""Worst-case configuration counts for rectilinear, locally deterministic systems.

All arithmetic is exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import TileAssemblySystem
from .transition import DEFAULT_STATE_BUDGET, build


def _falling_product(lo: int, hi: int) -> int:
    """lo * (lo+1) * ... * hi, or 1 for an empty range."""
    out = 1
    for v in range(lo, hi + 1):
        out *= v
    return out


def worst_case_config_count(n: int) -> int:
    """2 (2n-1)! / (n! (n-1)!) - 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    numerator = 2 * _falling_product(1, 2 * n - 1)
    denominator = _falling_product(1, n) * _falling_product(1, n - 1)
    value, rem = divmod(numerator, denominator)
    assert rem == 0
    return value - 1


@dataclass(frozen=True)
class DiamondDecoration:
    """Decorated diamond, one list of node decorations per distance from the root."""

    n: int
    levels: tuple[tuple[int, ...], ...]
    total: int


def diamond_enumeration(n: int) -> DiamondDecoration:
    """Build the decorated diamond graph and sum its decorations.

    The root (seed alone) carries 1, as does every node on the two chains of
    length n-1 hanging off it (growing only the west column, or only the
    south row).  Each further node merges a pair of nodes at equal distance
    from the root and carries the sum of their decorations.  Node (a, b)
    stands for a tiles added up the west column and b along the south row.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    deco: dict[tuple[int, int], int] = {(0, 0): 1}
    for a in range(1, n):
        deco[(a, 0)] = 1
        deco[(0, a)] = 1
    # merge nodes become available once both parents exist, i.e. in order of distance
    for dist in range(2, 2 * n - 1):
        for a in range(max(1, dist - n + 1), min(dist, n)):
            b = dist - a
            if b < 1 or b >= n:
                continue
            deco[(a, b)] = deco[(a - 1, b)] + deco[(a, b - 1)]
    levels = []
    for dist in range(2 * n - 1):
        row = tuple(deco[(a, dist - a)] for a in range(n) if 0 <= dist - a < n)
        levels.append(row)
    return DiamondDecoration(n, tuple(levels), sum(deco.values()))


def explicit_config_count(sys: TileAssemblySystem, n: int, state_budget: int = DEFAULT_STATE_BUDGET,
                          require_verified: bool = True) -> int:
    """Number of states of the explicit transition system M(T, n).

    The closed form is only a bound for locally deterministic rectilinear
    systems with a one-tile seed; ``require_verified`` enforces that first.
    """
    if require_verified:
        from .verify import Verdict, verify

        report = verify(sys, n)
        if report.verdict is not Verdict.UNIQUE_TERMINAL:
            raise ValueError(f"system does not satisfy the counting hypotheses: {report.verdict.value}")
    return build(sys, n, state_budget).num_states
