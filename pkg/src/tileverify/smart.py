"""Export a guarded Petri net in the SMART modelling language.

Output is deterministic: LF line endings, two-space indentation, guard terms
in canonical order.  Interior locations share one symbolic guard per tile
type inside a loop; boundary locations get explicit per-location guards.
"""
from __future__ import annotations

from .core import TileAssemblySystem, in_surface
from .petri import translate

_SYMBOLIC = {(0, 1): "[i][j+1]", (1, 0): "[i+1][j]", (0, -1): "[i][j-1]", (-1, 0): "[i-1][j]"}


def _term_text(cells: list[str]) -> str:
    if len(cells) == 1:
        return f"(tk({cells[0]}) > 0)"
    return "(" + " & ".join(f"tk({c}) > 0" for c in cells) + ")"


def _guard_text(terms: list[list[str]]) -> str:
    if not terms:
        return "false"
    return "|".join(_term_text(t) for t in terms)


def export_smart(sys: TileAssemblySystem, n: int, model_name: str = "TAS") -> str:
    if not model_name.isidentifier():
        raise ValueError(f"model name {model_name!r} is not an identifier")
    net = translate(sys, n)
    k = sys.k
    last = n - 1
    out: list[str] = []
    w = out.append

    w(f"pn {model_name} := {{")
    w("")
    w("// places: one per (cell, empty) and one per (tile type, cell)")
    w(f"for (int i in {{0..{last}}}) {{")
    w(f"  for (int j in {{0..{last}}}) {{")
    w("    place empty[i][j];")
    w("}}")
    w("")
    w(f"for (int k in {{0..{k - 1}}}) {{")
    w(f"  for (int i in {{0..{last}}}) {{")
    w(f"    for (int j in {{0..{last}}}) {{")
    w("      place tile[k][i][j];")
    w("}}}")
    w("")
    w("// transitions: bond[k][i][j] places tile type k at (i,j)")
    w(f"for (int k in {{0..{k - 1}}}) {{")
    w(f"  for (int i in {{0..{last}}}) {{")
    w(f"    for (int j in {{0..{last}}}) {{")
    w("      trans bond[k][i][j];")
    w("}}}")
    w("")
    w("// initial marking: seed tiles first, then every empty cell")
    seed = sys.seed_configuration(n)
    seed_tokens = [f"tile[{sys.index[name]}][{x}][{y}]:1" for (x, y), name in sorted(seed.items())]
    w(f"init({', '.join(seed_tokens)});")
    empties = [f"empty[{i}][{j}]:1" for i in range(n) for j in range(n) if (i, j) not in seed]
    if empties:
        w(f"init({', '.join(empties)});")
    w("")
    w("// arcs: empty[i][j] -> bond[k][i][j] -> tile[k][i][j]")
    w(f"for (int k in {{0..{k - 1}}}) {{")
    w(f"  for (int i in {{0..{last}}}) {{")
    w(f"    for (int j in {{0..{last}}}) {{")
    w("      arcs(empty[i][j]:bond[k][i][j], bond[k][i][j]:tile[k][i][j]);")
    w("}}}")
    w("// guards: bond[k][i][j] is enabled iff its neighbors bind tile k at the temperature")
    if n >= 3:
        w("// interior locations share one rule per tile type")
        w(f"for (int i in {{1..{n - 2}}}) {{")
        w(f"  for (int j in {{1..{n - 2}}}) {{")
        for kk in range(k):
            terms = [[f"tile[{u}]{_SYMBOLIC[(dx, dy)]}" for dx, dy, u in term] for term in net.rule_table[kk]]
            w(f"    guard(bond[{kk}][i][j]:{_guard_text(terms)});")
        w("}}")
    w("// boundary locations")
    boundary = sorted(((i, j) for i in range(n) for j in range(n) if i in (0, last) or j in (0, last)))
    for i, j in boundary:
        for kk in range(k):
            terms = []
            for term in net.rule_table[kk]:
                cells = [(i + dx, j + dy, u) for dx, dy, u in term]
                if all(in_surface((x, y), n) for x, y, _ in cells):
                    terms.append([f"tile[{u}][{x}][{y}]" for x, y, u in cells])
            w(f"guard(bond[{kk}][{i}][{j}]:{_guard_text(terms)});")
    w("")
    w("// state sets for counting reachable and terminal configurations")
    w("bigint numStates := card(reachable);")
    w("stateset nonTerminalStates := EX(potential(true));")
    w("stateset terminalStates := reachable \\ nonTerminalStates;")
    w("bigint numTerminalStates := card(terminalStates);")
    w("};")
    w("")
    w(f'print("Reachable states: ", {model_name}.numStates);')
    w(f'print("Terminal assemblies: ", {model_name}.numTerminalStates);')
    return "\n".join(out) + "\n"
