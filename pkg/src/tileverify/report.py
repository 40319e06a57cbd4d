"""Structured run reports and figures.

A report is line-delimited text::

    tileverify-report 1
    command=verify
    verdict=UniqueTerminal
    trace 1
    step 1: north @ (0,1)
    end trace

``key=value`` lines keep their order; values are free text up to the end of
the line.  Trace blocks list assembly steps.  :func:`parse_report` reads the
format back.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import Configuration, TileAssemblySystem
from .transition import AssemblySequence

HEADER = "tileverify-report"
VERSION = 1

_STEP = re.compile(r"^step (\d+): (.+) @ \((-?\d+),(-?\d+)\)$")


class ReportFormatError(ValueError):
    pass


@dataclass
class Report:
    fields: dict[str, str] = field(default_factory=dict)
    traces: list[AssemblySequence] = field(default_factory=list)

    def add(self, key: str, value) -> "Report":
        if not key or "=" in key or any(ch.isspace() for ch in key):
            raise ValueError(f"bad report key {key!r}")
        text = _render_value(value)
        if "\n" in text:
            raise ValueError(f"report value for {key!r} spans lines")
        self.fields[key] = text
        return self

    def render(self) -> str:
        out = [f"{HEADER} {VERSION}"]
        out.extend(f"{k}={v}" for k, v in self.fields.items())
        for i, seq in enumerate(self.traces, 1):
            out.append(f"trace {i}")
            out.extend(format_steps(seq))
            out.append("end trace")
        return "\n".join(out) + "\n"


def _render_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, tuple) and len(value) == 2 and all(isinstance(v, int) for v in value):
        return f"({value[0]},{value[1]})"
    return str(value)


def format_steps(seq: Iterable[tuple[str, tuple[int, int]]]) -> list[str]:
    return [f"step {i}: {tile} @ ({x},{y})" for i, (tile, (x, y)) in enumerate(seq, 1)]


def parse_report(text: str) -> Report:
    lines = text.replace("\r\n", "\n").split("\n")
    if not lines or lines[0] != f"{HEADER} {VERSION}":
        raise ReportFormatError(f"missing '{HEADER} {VERSION}' header")
    report = Report()
    trace: Optional[list] = None
    for lineno, line in enumerate(lines[1:], 2):
        if not line:
            continue
        if trace is not None:
            if line == "end trace":
                report.traces.append(AssemblySequence(tuple(trace)))
                trace = None
                continue
            m = _STEP.match(line)
            if not m or int(m.group(1)) != len(trace) + 1:
                raise ReportFormatError(f"line {lineno}: bad trace step {line!r}")
            trace.append((m.group(2), (int(m.group(3)), int(m.group(4)))))
            continue
        if line.startswith("trace "):
            trace = []
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ReportFormatError(f"line {lineno}: expected key=value, got {line!r}")
        report.fields[key] = value
    if trace is not None:
        raise ReportFormatError("unterminated trace block")
    return report


# --------------------------------------------------------------------------- figures

def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_assembly(c: Configuration, sys: TileAssemblySystem, path: str, title: str = "") -> None:
    """Draw ``c`` as a grid of colored cells, one color per tile type, north up."""
    import numpy as np

    plt = _pyplot()
    n = c.surface_size
    grid = np.full((n, n), np.nan)
    for (x, y), name in c.items():
        grid[y, x] = sys.index[name]
    fig, ax = plt.subplots(figsize=(min(12, 2 + n * 0.35), min(12, 2 + n * 0.35)))
    cmap = plt.get_cmap("tab20", max(sys.k, 1)).copy()
    cmap.set_bad("white")
    ax.imshow(np.ma.masked_invalid(grid), origin="lower", cmap=cmap, vmin=-0.5, vmax=sys.k - 0.5,
              interpolation="nearest")
    if n <= 24:
        for (x, y), name in c.items():
            label = sys.tile(name).display_label or name
            ax.text(x, y, label, ha="center", va="center", fontsize=max(5, 12 - n // 3))
    ax.set_xticks(range(n))
    ax.set_yticks(range(n))
    if n > 24:
        ax.set_xticks(range(0, n, max(1, n // 10)))
        ax.set_yticks(range(0, n, max(1, n // 10)))
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(title or f"assembly on {n}x{n} surface")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_counts(rows: list[dict], path: str) -> None:
    """Plot configuration counts against surface size on a log axis.

    ``rows`` holds dicts with ``n`` and any of ``formula``/``diamond``/``explicit``/``budget``.
    """
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    for key, marker in (("formula", "o"), ("diamond", "x"), ("explicit", "s"), ("budget", "^")):
        pts = [(r["n"], r[key]) for r in rows if r.get(key) is not None]
        if pts:
            xs, ys = zip(*pts)
            ax.plot(xs, [float(y) for y in ys], marker=marker, label=key,
                    linestyle="-" if key != "explicit" else "none")
    ax.set_yscale("log")
    ax.set_xlabel("surface size n")
    ax.set_ylabel("configurations")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


__all__ = ["HEADER", "Report", "ReportFormatError", "VERSION", "format_steps", "parse_report", "render_assembly",
           "render_counts"]
