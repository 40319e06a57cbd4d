"""Command-line front end.

Exit codes: 0 unique terminal assembly (or success), 1 usage/parse error,
2 not rectilinear, 3 non-unique terminal assembly, 4 not locally
deterministic, 5 state budget exceeded.
"""
from __future__ import annotations

import argparse
import logging
import sys as _sys
from pathlib import Path
from typing import Optional

from . import counting, fixtures, ingest, report, smart, transition
from .core import SurfaceTooSmall, TileAssemblySystem
from .ctl import FormulaSyntaxError, check, parse_formula, seed_formula, terminal_formula
from .ctl.checker import AtomOutOfRange
from .verify import SeedNotSingleton, Verdict, budget, verify

log = logging.getLogger("tileverify")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 5
VERDICT_EXIT = {
    Verdict.UNIQUE_TERMINAL: 0,
    Verdict.NOT_RECTILINEAR: 2,
    Verdict.NON_UNIQUE_TERMINAL: 3,
    Verdict.NOT_LOCALLY_DETERMINISTIC: 4,
}


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("system")
    src.add_argument("--tileset", type=Path, help="ISU-TAS tileset file (.tds)")
    src.add_argument("--seed", type=Path, help="seed file: '<tile> <x> <y>' per line")
    src.add_argument("--native", type=Path, help="single-file native system description (TASV1)")
    src.add_argument("--fixture", choices=sorted(fixtures.FIXTURES), help="use a built-in system")
    common.add_argument("--size", "-n", type=_positive, default=None, help="surface size n (n x n)")
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--state-budget", type=_positive, default=transition.DEFAULT_STATE_BUDGET)
    common.add_argument("--out", type=Path, help="write the main output here instead of stdout")
    common.add_argument("--figure", type=Path, help="also render a PNG/SVG/PDF figure to this path")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="tileverify", description="Verify and analyse aTAM tile assembly systems.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="polynomial-time rectilinear verification")
    v.add_argument("--strict-rectilinearity", action="store_true",
                   help="use the literal west/south-edge exposure rule instead of the default one")
    v.add_argument("--no-local-determinism", action="store_true", help="skip the online local-determinism check")

    m = sub.add_parser("modelcheck", parents=[common], help="check a CTL formula on the explicit transition system")
    m.add_argument("formula", help="CTL formula; macros: terminal, seed")

    c = sub.add_parser("count", parents=[common], help="worst-case configuration counts")
    c.add_argument("--explicit", dest="explicit", action="store_true", default=None,
                   help="also count the explicit transition system (default: when n <= 6)")
    c.add_argument("--no-explicit", dest="explicit", action="store_false")

    e = sub.add_parser("export-smart", parents=[common], help="export the guarded Petri net as SMART text")
    e.add_argument("--model-name", default="TAS")

    s = sub.add_parser("simulate", parents=[common], help="one random assembly sequence to a terminal assembly")
    s.add_argument("--rng-seed", type=int, default=0)
    return p


def load_system(args) -> TileAssemblySystem:
    chosen = [x for x in (args.fixture, args.native, args.tileset or args.seed) if x]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --fixture, --native, or --tileset with --seed")
    if args.fixture:
        return fixtures.FIXTURES[args.fixture]()
    try:
        if args.native:
            return ingest.parse_native(args.native.read_bytes())
        if not (args.tileset and args.seed):
            raise UsageError("--tileset and --seed must be given together")
        doc = ingest.parse_tileset(args.tileset.read_bytes())
        for w in doc.warnings:
            log.warning("%s: %s", args.tileset, w)
        return ingest.elaborate(doc, ingest.parse_seed(args.seed.read_bytes()))
    except OSError as exc:
        raise UsageError(f"cannot read input: {exc}") from None
    except (ingest.ParseError, ingest.ElaborationError) as exc:
        raise UsageError(str(exc)) from None


def _size(args, default: Optional[int] = None) -> int:
    if args.size is None:
        if default is None:
            raise UsageError("--size is required")
        return default
    return args.size


def _emit(args, text: str) -> None:
    if args.out:
        args.out.write_text(text, encoding="utf-8", newline="\n")
    else:
        _sys.stdout.write(text)


def _human(rep: report.Report) -> str:
    lines = [f"{k}: {v}" for k, v in rep.fields.items()]
    for i, seq in enumerate(rep.traces, 1):
        lines.append(f"witness {i} ({len(seq)} steps):")
        lines.extend("  " + s for s in report.format_steps(seq))
    return "\n".join(lines) + "\n"


def _output(args, rep: report.Report) -> None:
    _emit(args, rep.render() if args.format == "structured" else _human(rep))


# --------------------------------------------------------------------------- commands

def cmd_verify(args) -> int:
    sys = load_system(args)
    n = _size(args)
    try:
        res = verify(sys, n, strict=args.strict_rectilinearity,
                     local_determinism=not args.no_local_determinism)
    except SeedNotSingleton as exc:
        raise UsageError(str(exc)) from None
    rep = report.Report()
    rep.add("command", "verify").add("verdict", res.verdict.value).add("surface", n)
    rep.add("configurations_evaluated", res.configurations_evaluated).add("budget", res.budget)
    rep.add("strict_rectilinearity", args.strict_rectilinearity)
    if res.location is not None:
        rep.add("location", res.location)
    if res.reason:
        rep.add("reason", res.reason)
    rep.traces.extend(res.witnesses)
    _output(args, rep)
    if args.figure:
        shown = res.assembly if res.assembly is not None else res.witnesses[0].replay(sys, n)
        report.render_assembly(shown, sys, str(args.figure), f"{res.verdict.value} (n={n})")
    return VERDICT_EXIT[res.verdict]


def cmd_modelcheck(args) -> int:
    sys = load_system(args)
    n = _size(args)
    macros = {"terminal": terminal_formula(sys, n), "seed": seed_formula(sys, n)}
    try:
        f = parse_formula(args.formula, macros)
    except FormulaSyntaxError as exc:
        raise UsageError(str(exc)) from None
    ts = transition.build(sys, n, args.state_budget)
    try:
        res = check(ts, f)
    except AtomOutOfRange as exc:
        raise UsageError(str(exc)) from None
    rep = report.Report()
    rep.add("command", "modelcheck").add("formula", args.formula).add("surface", n)
    rep.add("states", ts.num_states).add("edges", ts.num_edges)
    rep.add("holds", res.holds).add("satisfying_states", len(res.satisfying))
    if res.path is not None:
        rep.add("path_kind", res.path_kind)
        rep.traces.append(ts.sequence_for(res.path))
    _output(args, rep)
    if args.figure and res.path is not None:
        report.render_assembly(ts.states[res.path[-1]], sys, str(args.figure), f"{res.path_kind} end state")
    return EXIT_OK


def cmd_count(args) -> int:
    n = _size(args)
    explicit_wanted = args.explicit if args.explicit is not None else n <= 6
    sys = None
    if explicit_wanted:
        has_source = any((args.fixture, args.native, args.tileset, args.seed))
        sys = load_system(args) if has_source else fixtures.sierpinski()
    formula = counting.worst_case_config_count(n)
    diamond = counting.diamond_enumeration(n).total
    explicit = None
    if sys is not None:
        try:
            explicit = counting.explicit_config_count(sys, n, args.state_budget)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    rep = report.Report()
    rep.add("command", "count").add("surface", n).add("formula", formula).add("diamond", diamond)
    if explicit is not None:
        rep.add("explicit", explicit)
    if args.format == "structured":
        _emit(args, rep.render())
    else:
        parts = [f"formula={formula}", f"diamond={diamond}"] + ([f"explicit={explicit}"] if explicit is not None else [])
        _emit(args, " ".join(parts) + "\n")
    if args.figure:
        rows = []
        for m in range(1, n + 1):
            row = {"n": m, "formula": counting.worst_case_config_count(m),
                   "diamond": counting.diamond_enumeration(m).total, "budget": budget(m)}
            if sys is not None and m <= n:
                row["explicit"] = transition.build(sys, m, args.state_budget).num_states
            rows.append(row)
        report.render_counts(rows, str(args.figure))
    return EXIT_OK


def cmd_export_smart(args) -> int:
    sys = load_system(args)
    n = _size(args)
    try:
        text = smart.export_smart(sys, n, args.model_name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, text)
    return EXIT_OK


def cmd_simulate(args) -> int:
    sys = load_system(args)
    n = _size(args)
    seq = transition.random_assembly_sequence(sys, n, args.rng_seed)
    final = seq.replay(sys, n)
    rep = report.Report()
    rep.add("command", "simulate").add("surface", n).add("rng_seed", args.rng_seed)
    rep.add("steps", len(seq)).add("tiles", len(final))
    rep.traces.append(seq)
    _output(args, rep)
    if args.figure:
        report.render_assembly(final, sys, str(args.figure), f"random assembly (seed {args.rng_seed})")
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "modelcheck": cmd_modelcheck,
    "count": cmd_count,
    "export-smart": cmd_export_smart,
    "simulate": cmd_simulate,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tileverify: error: {exc}", file=_sys.stderr)
        return EXIT_USAGE
    except SurfaceTooSmall as exc:
        print(f"tileverify: error: {exc}", file=_sys.stderr)
        return EXIT_USAGE
    except transition.StateBudgetExceeded as exc:
        print(f"tileverify: state budget exceeded: {exc}", file=_sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    _sys.exit(main())
