"""Independent reference implementations used to cross-check the library.

Nothing here uses the library's precomputed tables (contrib/partners/rules),
its transition-system builder, or its CTL labeler.  Everything is computed
from raw glues and the plain definitions, as slowly as necessary.
"""
from __future__ import annotations

from math import comb

from tileverify.core import Configuration
from tileverify.ctl.formula import And, Atom, Const, Implies, Not, Or, Temporal, Until

# ----------------------------------------------------------------------------- aTAM

_NEIGHBORS = {"north": (0, 1), "east": (1, 0), "south": (0, -1), "west": (-1, 0)}
_FACING = {"north": "south", "east": "west", "south": "north", "west": "east"}


def naive_strengths(sys, tiles: dict, tile, loc):
    """Per-side strength a tile type would receive at ``loc``; side name -> strength."""
    out = {}
    for side, (dx, dy) in _NEIGHBORS.items():
        nb = tiles.get((loc[0] + dx, loc[1] + dy))
        if nb is None:
            out[side] = 0
            continue
        mine = getattr(tile, side)
        theirs = getattr(sys.tile(nb), _FACING[side])
        same = mine.label == theirs.label and mine.strength == theirs.strength
        out[side] = mine.strength if same and mine.strength > 0 else 0
    return out


def naive_moves(sys, n, tiles: dict):
    moves = []
    for x in range(n):
        for y in range(n):
            if (x, y) in tiles:
                continue
            for t in sys.tile_types:
                if sum(naive_strengths(sys, tiles, t, (x, y)).values()) >= sys.temperature:
                    moves.append((t.name, (x, y)))
    return moves


def naive_reachable(sys, n):
    """All reachable configurations (as frozensets of items) plus all labelled edges."""
    start = frozenset(sys.seed.placements.items())
    seen = {start}
    stack = [start]
    edges = []
    while stack:
        cur = stack.pop()
        tiles = dict(cur)
        for name, loc in naive_moves(sys, n, tiles):
            nxt = frozenset(cur | {(loc, name)})
            edges.append((cur, nxt, name, loc))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen, edges


def naive_terminals(sys, n):
    states, edges = naive_reachable(sys, n)
    has_out = {e[0] for e in edges}
    return [Configuration(n, dict(s)) for s in states if s not in has_out]


def naive_growth_violation(sys, n) -> bool:
    """True iff some legal step in M binds a tile through its north or east side."""
    _, edges = naive_reachable(sys, n)
    for cur, _, name, loc in edges:
        s = naive_strengths(sys, dict(cur), sys.tile(name), loc)
        if s["north"] > 0 or s["east"] > 0:
            return True
    return False


def naive_overbinding(sys, n) -> bool:
    _, edges = naive_reachable(sys, n)
    return any(sum(naive_strengths(sys, dict(cur), sys.tile(name), loc).values()) > sys.temperature
               for cur, _, name, loc in edges)


# ----------------------------------------------------------------------------- counting

def central_binomial_minus_one(n: int) -> int:
    """C(2n, n) - 1, an algebraically equivalent form of the closed-form count."""
    return comb(2 * n, n) - 1


def lattice_path_configs(n: int) -> int:
    """Brute-force state count of the worst-case rectilinear growth pattern.

    The west column and the south row each grow from a single neighbour;
    every other cell needs both its west and its south neighbour.  No tiles
    are involved, only cell occupancy.
    """
    start = frozenset({(0, 0)})
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for x in range(n):
            for y in range(n):
                if (x, y) in cur:
                    continue
                west = x == 0 or (x - 1, y) in cur
                south = y == 0 or (x, y - 1) in cur
                if x == 0 and y > 0:
                    ok = (0, y - 1) in cur
                elif y == 0 and x > 0:
                    ok = (x - 1, 0) in cur
                else:
                    ok = west and south
                if ok:
                    nxt = cur | {(x, y)}
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
    return len(seen)


# ----------------------------------------------------------------------------- CTL

class MaxPathOracle:
    """CTL semantics evaluated over explicitly enumerated maximal paths.

    Every maximal path from a state is represented by a simple prefix that
    either ends in a deadlock or closes into a loop (a lasso).  Any property
    of the temporal operators used here that holds on some maximal path also
    holds on some lasso/finite path of that shape, so enumerating them is
    enough.  Exponential, only for small systems.
    """

    def __init__(self, succ, labels, limit: int = 200_000):
        self.succ = [sorted(set(s)) for s in succ]
        self.labels = labels
        self.limit = limit
        self._paths = {}
        self._memo = {}

    def paths(self, s):
        """Each path as (states, loop) where loop is the index the last state steps back to, or None."""
        if s in self._paths:
            return self._paths[s]
        out = []
        stack = [(s,)]
        while stack:
            p = stack.pop()
            last = p[-1]
            nxt = self.succ[last]
            if not nxt:
                out.append((p, None))
            for t in nxt:
                if t in p:
                    out.append((p, p.index(t)))
                else:
                    stack.append(p + (t,))
            if len(out) > self.limit:
                raise RuntimeError("too many paths for the oracle")
        self._paths[s] = out
        return out

    def holds(self, f, s) -> bool:
        key = (f, s)
        if key not in self._memo:
            self._memo[key] = self._holds(f, s)
        return self._memo[key]

    def _holds(self, f, s) -> bool:
        if isinstance(f, Atom):
            return tuple(f) in self.labels[s]
        if isinstance(f, Const):
            return f.value
        if isinstance(f, Not):
            return not self.holds(f.arg, s)
        if isinstance(f, And):
            return all(self.holds(a, s) for a in f.args)
        if isinstance(f, Or):
            return any(self.holds(a, s) for a in f.args)
        if isinstance(f, Implies):
            return (not self.holds(f.left, s)) or self.holds(f.right, s)
        if isinstance(f, Temporal):
            q, op = f.op[0], f.op[1]
            if op == "X":
                vals = [self.holds(f.arg, t) for t in self.succ[s]]
                return any(vals) if q == "E" else all(vals)
            pred = (lambda p: self._eventually(p, f.arg)) if op == "F" else (lambda p: self._always(p, f.arg))
            results = (pred(p) for p, _ in self.paths(s))
            return any(results) if q == "E" else all(results)
        if isinstance(f, Until):
            results = (self._until(p, f.left, f.right) for p, _ in self.paths(s))
            return any(results) if f.quantifier == "E" else all(results)
        raise TypeError(f)

    # every state of a lasso (prefix + loop) is visited, so F/G/U only need the prefix in order
    def _eventually(self, p, g):
        return any(self.holds(g, t) for t in p)

    def _always(self, p, g):
        return all(self.holds(g, t) for t in p)

    def _until(self, p, left, right):
        for t in p:
            if self.holds(right, t):
                return True
            if not self.holds(left, t):
                return False
        return False
