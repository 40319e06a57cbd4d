"""Explicit-state CTL model checking by bottom-up fixpoint labeling.

Terminal (deadlock) states are treated as the ends of maximal paths: EX is
false and AX vacuously true there, AF/AU fail at a deadlock that does not
already satisfy the goal, and EG holds at a deadlock satisfying its argument.
This is the same as adding a self-loop to every deadlock for the U/F/G
operators while leaving X on the real successor relation.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Protocol, Sequence

from .formula import And, Atom, Const, Formula, Implies, Not, Or, Temporal, Until


class AtomOutOfRange(ValueError):
    pass


class PointedSystem(Protocol):
    initial: int

    @property
    def num_states(self) -> int: ...

    @property
    def successors(self) -> list[list[int]]: ...

    @property
    def predecessors(self) -> list[list[int]]: ...

    def holds_atom(self, state: int, atom) -> bool: ...


class Kripke:
    """A plain pointed transition system with explicit atom labels per state."""

    def __init__(self, successors: Sequence[Iterable[int]], labels: Sequence[Iterable], initial: int = 0):
        self._succ = [sorted(set(s)) for s in successors]
        self.labels = [frozenset(tuple(a) for a in lab) for lab in labels]
        if len(self.labels) != len(self._succ):
            raise ValueError("one label set per state required")
        self.initial = initial
        preds: list[list[int]] = [[] for _ in self._succ]
        for s, out in enumerate(self._succ):
            for t in out:
                preds[t].append(s)
        self._preds = preds

    @property
    def num_states(self) -> int:
        return len(self._succ)

    @property
    def successors(self) -> list[list[int]]:
        return self._succ

    @property
    def predecessors(self) -> list[list[int]]:
        return self._preds

    def holds_atom(self, state: int, atom) -> bool:
        return tuple(atom) in self.labels[state]


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    satisfying: frozenset
    path: Optional[tuple[int, ...]] = None
    path_kind: Optional[str] = None  # "witness" or "counterexample"


class _Labeler:
    def __init__(self, ts: PointedSystem):
        self.ts = ts
        self.succ = [list(dict.fromkeys(s)) for s in ts.successors]
        self.preds = ts.predecessors
        self.all = frozenset(range(ts.num_states))
        self.memo: dict[Formula, frozenset] = {}

    def sat(self, f: Formula) -> frozenset:
        hit = self.memo.get(f)
        if hit is not None:
            return hit
        out = self._sat(f)
        self.memo[f] = out
        return out

    def _sat(self, f: Formula) -> frozenset:
        if isinstance(f, Atom):
            return frozenset(s for s in range(self.ts.num_states) if self.ts.holds_atom(s, f))
        if isinstance(f, Const):
            return self.all if f.value else frozenset()
        if isinstance(f, Not):
            return self.all - self.sat(f.arg)
        if isinstance(f, And):
            out = self.all
            for a in f.args:
                out = out & self.sat(a)
                if not out:
                    break
            return out
        if isinstance(f, Or):
            out = frozenset()
            for a in f.args:
                out = out | self.sat(a)
            return out
        if isinstance(f, Implies):
            return (self.all - self.sat(f.left)) | self.sat(f.right)
        if isinstance(f, Temporal):
            arg = self.sat(f.arg)
            op = f.op
            if op == "EX":
                return self.ex(arg)
            if op == "AX":
                return self.ax(arg)
            if op == "EF":
                return self.eu(self.all, arg)
            if op == "AF":
                return self.au(self.all, arg)
            if op == "EG":
                return self.eg(arg)
            return self.all - self.eu(self.all, self.all - arg)  # AG
        if isinstance(f, Until):
            left, right = self.sat(f.left), self.sat(f.right)
            return self.eu(left, right) if f.quantifier == "E" else self.au(left, right)
        raise TypeError(f"not a formula: {f!r}")

    def ex(self, target: frozenset) -> frozenset:
        return frozenset(p for s in target for p in self.preds[s])

    def ax(self, target: frozenset) -> frozenset:
        return frozenset(s for s in range(len(self.succ)) if all(t in target for t in self.succ[s]))

    def eu(self, left: frozenset, right: frozenset) -> frozenset:
        z = set(right)
        work = deque(right)
        while work:
            s = work.popleft()
            for p in self.preds[s]:
                if p not in z and p in left:
                    z.add(p)
                    work.append(p)
        return frozenset(z)

    def au(self, left: frozenset, right: frozenset) -> frozenset:
        # least fixpoint of Z = right | (left & has-successor & all successors in Z)
        remaining = [len(out) for out in self.succ]
        z = set(right)
        work = deque(right)
        while work:
            s = work.popleft()
            for p in self.preds[s]:
                if p in z:
                    continue
                remaining[p] -= 1
                if remaining[p] == 0 and p in left and self.succ[p]:
                    z.add(p)
                    work.append(p)
        return frozenset(z)

    def eg(self, arg: frozenset) -> frozenset:
        # greatest fixpoint of Z = arg & (deadlock | some successor in Z)
        z = set(arg)
        count = {s: sum(1 for t in self.succ[s] if t in z) for s in z}
        work = deque(s for s in z if self.succ[s] and count[s] == 0)
        while work:
            s = work.popleft()
            if s not in z:
                continue
            z.discard(s)
            for p in self.preds[s]:
                if p in z:
                    count[p] -= 1
                    if count[p] == 0:
                        work.append(p)
        return frozenset(z)

    # -- paths ---------------------------------------------------------------

    def reach_path(self, start: int, inside: frozenset, goal: frozenset) -> tuple[int, ...]:
        """Shortest path from ``start`` through ``inside`` states to a ``goal`` state."""
        parent = {start: None}
        work = deque([start])
        while work:
            s = work.popleft()
            if s in goal:
                path = [s]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            if s not in inside:
                continue
            for t in self.succ[s]:
                if t not in parent:
                    parent[t] = s
                    work.append(t)
        raise AssertionError("no path; labeling is inconsistent")

    def stay_path(self, start: int, region: frozenset, stop: frozenset = frozenset()) -> tuple[int, ...]:
        """Follow successors inside ``region`` until a deadlock, a ``stop`` state or a repeat."""
        path = [start]
        seen = {start}
        s = start
        while s not in stop:
            nxt = next((t for t in self.succ[s] if t in region), None)
            if nxt is None:
                break
            path.append(nxt)
            if nxt in seen:
                break
            seen.add(nxt)
            s = nxt
        return tuple(path)


def _validate(ts: PointedSystem, f: Formula):
    bounds = getattr(ts, "atom_range", None)
    if bounds is None:
        return
    k, n = bounds()
    for a in f.atoms():
        if not (0 <= a.m <= k and 0 <= a.i < n and 0 <= a.j < n):
            raise AtomOutOfRange(f"{a} outside m in 0..{k}, i,j in 0..{n - 1}")


def check(ts: PointedSystem, f: Formula, state: Optional[int] = None) -> CheckResult:
    """Label every state with ``f`` and report its truth at ``state`` (default: the initial state).

    For a top-level EX/EF/EU/EG that holds, ``path`` is a witness; for a
    top-level AX/AF/AU/AG that fails, ``path`` is a counterexample.  A path
    whose last state repeats an earlier one is a lasso.
    """
    _validate(ts, f)
    lab = _Labeler(ts)
    sat = lab.sat(f)
    s0 = ts.initial if state is None else state
    holds = s0 in sat
    path = kind = None
    if isinstance(f, Temporal):
        arg = lab.sat(f.arg)
        if f.op == "EX" and holds:
            path, kind = (s0, next(t for t in lab.succ[s0] if t in arg)), "witness"
        elif f.op == "AX" and not holds:
            path, kind = (s0, next(t for t in lab.succ[s0] if t not in arg)), "counterexample"
        elif f.op == "EF" and holds:
            path, kind = lab.reach_path(s0, lab.all, arg), "witness"
        elif f.op == "AG" and not holds:
            path, kind = lab.reach_path(s0, lab.all, lab.all - arg), "counterexample"
        elif f.op == "EG" and holds:
            path, kind = lab.stay_path(s0, sat), "witness"
        elif f.op == "AF" and not holds:
            path, kind = lab.stay_path(s0, lab.all - sat), "counterexample"
    elif isinstance(f, Until):
        left, right = lab.sat(f.left), lab.sat(f.right)
        if f.quantifier == "E" and holds:
            path, kind = lab.reach_path(s0, left, right), "witness"
        elif f.quantifier == "A" and not holds:
            # stay among states failing the until that still satisfy the left side
            path, kind = lab.stay_path(s0, (lab.all - sat), stop=lab.all - left), "counterexample"
    return CheckResult(holds, sat, path, kind)


def satisfying_states(ts: PointedSystem, f: Formula) -> frozenset:
    _validate(ts, f)
    return _Labeler(ts).sat(f)
