"""Command-line front end: ``guess``, ``trace`` and ``bench``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .abms import abms, abms_reduced
from .algebra import PrimeField, parse_field
from .asfglm import IterationLimit, RunSfglm, asfglm, asfglm_tweaked, no_bound_mode
from .bench import ALGORITHMS, run_sweep, to_csv
from .bms import bms, stopping_bound
from .monomial import Ordering, drl, parse_ordering
from .staircase import Staircase
from .table import (FAMILIES, FamilyError, InconsistentTable, MissingEntry, builtin, family,
                    load_table, staircase_of)

GUESS_ALGOS = ("bms", "abms", "abms-reduced", "asfglm", "asfglm-tweaked", "nobound")

EXIT_OK, EXIT_USAGE, EXIT_RUNSFGLM, EXIT_INCONSISTENT, EXIT_FAMILY = 0, 2, 3, 4, 5


class UsageError(ValueError):
    pass


@dataclass
class CliConfig:
    command: str
    table: str = ""
    order: str | None = None
    field: str | None = None
    algo: str = "asfglm"
    bound: int | None = None
    stop: str | None = None
    degree_cap: int | None = None
    out: str = "-"
    verbosity: int = 2
    seed: int = 0
    max_size: int = 1000


@dataclass
class Prepared:
    table: object
    ordering: Ordering
    bound: int | None
    stop: tuple | None
    known_lms: set | None


def _resolve(cfg: CliConfig) -> Prepared:
    """Load the table and validate the flag combination before any run."""
    src = cfg.table
    field = parse_field(cfg.field) if cfg.field else None
    known_lms = None
    ordering = None
    bound = cfg.bound
    if src.startswith("builtin:"):
        table = builtin(src[len("builtin:"):], field)
    elif src.startswith("family:"):
        parts = src.split(":")
        if len(parts) != 4:
            raise UsageError("family tables are written family:<name>:<nvars>:<d>")
        _, name, nvars, d = parts
        if name not in FAMILIES:
            raise UsageError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
        if field is not None and not isinstance(field, PrimeField):
            raise UsageError("family tables live over a prime field")
        fam = family(name, int(nvars), int(d), field, cfg.seed)
        table, ordering, known_lms = fam.table, fam.ordering, set(fam.expected_lms)
        if bound is None:
            bound = fam.expected_staircase_size
    else:
        table, ordering = load_table(src)
        rels = getattr(table.source, "rels", None)
        if ordering is not None and rels:
            known_lms = {r.lm for r in rels}
    if cfg.order:
        chosen = parse_ordering(cfg.order)
        if chosen != ordering:
            known_lms = None
        ordering = chosen
    elif ordering is None:
        ordering = drl(table.nvars)
    if ordering.nvars != table.nvars:
        raise UsageError(f"the ordering has {ordering.nvars} variables, the table {table.nvars}")

    algo = cfg.algo
    if algo not in GUESS_ALGOS:
        raise UsageError(f"unknown algorithm {algo!r}")
    if bound is not None and bound < 1:
        raise UsageError("--bound must be positive")
    if cfg.max_size < 1:
        raise UsageError("--max-size must be positive")
    if algo in ("abms", "abms-reduced", "asfglm", "asfglm-tweaked") and bound is None:
        raise UsageError(f"--algo {algo} needs --bound")
    if algo == "bms" and not ordering.degree_compatible:
        raise UsageError("bms needs a degree ordering; use abms with --bound for LEX")
    if algo == "bms" and cfg.bound is not None:
        raise UsageError("bms takes no --bound; use abms")

    stop = None
    if algo in ("bms", "abms", "abms-reduced"):
        if not cfg.stop:
            raise UsageError(f"--algo {algo} needs --stop (a monomial or auto)")
        if cfg.stop == "auto":
            stop = _auto_stop(table, ordering, bound, known_lms)
        else:
            stop = ordering.parse(cfg.stop)
    elif cfg.stop:
        raise UsageError(f"--stop does not apply to {algo}")
    return Prepared(table.fresh(), ordering, bound, stop, known_lms)


def _auto_stop(table, ordering, bound, known_lms):
    if known_lms is None:
        if bound is None:
            raise UsageError("--stop auto needs --bound or a table with known relations")
        # estimate the staircase on a separate copy so the real run starts cold
        guess = asfglm(table.fresh(), ordering, bound)
        known_lms = guess.lms
    stair = Staircase(ordering.nvars, staircase_of(known_lms))
    return stopping_bound(stair, known_lms, ordering)


def _run(cfg: CliConfig, prep: Prepared, trace: bool):
    t, o, d, stop = prep.table, prep.ordering, prep.bound, prep.stop
    algo = cfg.algo
    if algo == "bms":
        return bms(t, o, stop, trace=trace)
    if algo == "abms":
        return abms(t, o, d, stop, degree_cap=cfg.degree_cap, trace=trace)
    if algo == "abms-reduced":
        return abms_reduced(t, o, d, stop, degree_cap=cfg.degree_cap, trace=trace)
    if algo == "asfglm":
        return asfglm(t, o, d, trace=trace)
    if algo == "asfglm-tweaked":
        return asfglm_tweaked(t, o, d, trace=trace)
    return no_bound_mode(t, o, max_size=cfg.max_size, trace=trace)


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _dump(result) -> str:
    return json.dumps(result.to_json(), indent=2) + "\n"


def format_trace(result, verbosity: int = 2) -> str:
    """Step log of a traced run, one line per visited monomial and action."""
    o = result.ordering
    lines = []
    for entry in result.trace or []:
        if "steps" in entry:
            steps = [s for s in entry["steps"] if verbosity >= 2 or s["event"] != "nothing"]
            if verbosity >= 1:
                lines.append(entry["text"] + ":")
                lines.extend("  " + s["text"] for s in steps)
        elif verbosity >= 1:
            lines.append(entry["text"])
    lines.append("Result: " + ", ".join(result.polynomials()))
    lines.append("Staircase: {" + ", ".join(o.format(s) for s in result.staircase.sorted(o)) + "}")
    if result.algorithm.startswith("abms"):
        lines.append(f"Skipped tests: {result.skipped_tests}")
        lines.append("Fully skipped monomials: {"
                     + ", ".join(o.format(m) for m in result.fully_skipped_monomials) + "}")
    lines.append(f"Queries: {result.queries}; basic operations: {result.basic_ops}")
    return "\n".join(lines) + "\n"


def cmd_guess(cfg: CliConfig, trace: bool = False) -> int:
    prep = _resolve(cfg)
    try:
        res = _run(cfg, prep, trace)
    except (RunSfglm, IterationLimit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        partial = exc.partial
        _emit(format_trace(partial, cfg.verbosity) if trace else _dump(partial), cfg.out)
        return EXIT_RUNSFGLM
    _emit(format_trace(res, cfg.verbosity) if trace else _dump(res), cfg.out)
    return EXIT_OK


def cmd_trace(cfg: CliConfig) -> int:
    return cmd_guess(cfg, trace=True)


def cmd_bench(args) -> int:
    families = FAMILIES if args.family == "all" else tuple(args.family.split(","))
    for f in families:
        if f not in FAMILIES:
            raise UsageError(f"unknown family {f!r}; known: {', '.join(FAMILIES)}")
    algos = tuple(a for a in args.algos.split(",") if a)
    for a in algos:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}; known: {', '.join(ALGORITHMS)}")
    dims = tuple(int(x) for x in str(args.dim).split(","))
    field = parse_field(args.field)
    if not isinstance(field, PrimeField):
        raise UsageError("benchmarks run over a prime field")
    if args.dmax is not None and args.dmax < args.dmin:
        raise UsageError("--dmax is below --dmin")
    recs = run_sweep(families, dims, args.dmin, args.dmax, algos, args.field, args.seed,
                     workers=args.workers)
    _emit(to_csv(recs), args.out)
    bad = [r for r in recs if not r.lms_ok]
    for r in bad:
        print(f"warning: {r.family} {r.nvars}D d={r.d} {r.algorithm}: guessed leading monomials "
              f"differ from the expected ones{': ' + r.error if r.error else ''}", file=sys.stderr)
    return EXIT_OK


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--table", required=True,
                   help="JSON file, builtin:<name> or family:<name>:<nvars>:<d>")
    p.add_argument("--order", help="ordering such as drl:y<x, lex:z<y<x or weight:1,2:y<x")
    p.add_argument("--field", help="q or fp:<prime>")
    p.add_argument("--algo", default="asfglm", choices=GUESS_ALGOS)
    p.add_argument("--bound", type=int, help="staircase size bound d")
    p.add_argument("--stop", help="last visited monomial (x^3*y^2) or auto")
    p.add_argument("--degree-cap", type=int, help="degree cap on visited monomials (LEX)")
    p.add_argument("--out", default="-", help="output path, - for stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for family tables")
    p.add_argument("--max-size", type=int, default=1000,
                   help="staircase size at which nobound gives up")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="recguess",
                                     description="Guess linear recurrence relations of tables.")
    sub = parser.add_subparsers(dest="command", required=True)
    g = sub.add_parser("guess", help="run an algorithm and print the result as JSON")
    _common(g)
    t = sub.add_parser("trace", help="run an algorithm and print its step log")
    _common(t)
    t.add_argument("--verbosity", type=int, default=2, choices=(0, 1, 2),
                   help="0 summary only, 1 without idle relations, 2 everything")
    b = sub.add_parser("bench", help="sweep benchmark families to CSV")
    b.add_argument("--family", default="all", help="comma-separated families or all")
    b.add_argument("--dim", default="2", help="number of variables (2, 3 or 2,3)")
    b.add_argument("--dmin", type=int, default=2)
    b.add_argument("--dmax", type=int)
    b.add_argument("--algos", default="asfglm,abms")
    b.add_argument("--field", default="fp:65521")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", default="-")
    return parser


def main(argv: list | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bench":
            return cmd_bench(args)
        cfg = CliConfig(args.command, args.table, args.order, args.field, args.algo, args.bound,
                        args.stop, args.degree_cap, args.out, getattr(args, "verbosity", 2),
                        args.seed, args.max_size)
        return cmd_trace(cfg) if args.command == "trace" else cmd_guess(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"recguess: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistentTable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except FamilyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAMILY
    except MissingEntry as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        print(f"recguess: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
