"""Command-line front end.

Exit status: 0 success, 1 validation error, 2 computation error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from .balance import DEFAULT_TOL, classify
from .core import (
    BalanceCondition,
    SystemConfig,
    TooLarge,
    ValidationError,
    make_unit_set,
)
from .reliability import (
    TABLE1_SYSTEMS,
    ReliabilityTable,
    sweep,
    table1_counts,
    table1_csv,
    table1_json,
)
from .tiesets import dumps_catalog, dumps_catalog_json, enumerate_minimum_tiesets

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_COMPUTATION = 2
EXIT_IO = 3

GRID_EPS = 1e-12


class OutputError(Exception):
    pass


def parse_int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValidationError(f"expected a comma-separated list of integers, got {text!r}") from None
    if not values:
        raise ValidationError("empty integer list")
    return values


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValidationError(f"expected a comma-separated list of numbers, got {text!r}") from None


def parse_r_grid(text: str) -> list[float]:
    """Parse ``start:end:step`` into an inclusive grid; an empty string gives []."""
    if not text.strip():
        return []
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"r-grid must look like start:end:step, got {text!r}")
    try:
        start, end, step = (float(p) for p in parts)
    except ValueError:
        raise ValidationError(f"r-grid values must be numbers: {text!r}") from None
    if not step > 0:
        raise ValidationError(f"r-grid step must be positive, got {step}")
    if end < start - GRID_EPS:
        raise ValidationError(f"r-grid end {end} is below start {start}")
    count = math.floor((end - start) / step + GRID_EPS) + 1
    grid = [round(start + i * step, 12) for i in range(count)]
    for r in grid:
        if not 0.0 <= r <= 1.0:
            raise ValidationError(f"r-grid value {r} outside [0, 1]")
    return grid


def parse_conditions(text: str) -> list[BalanceCondition]:
    if text.strip().lower() == "all":
        return list(BalanceCondition)
    conditions = [BalanceCondition.parse(tok) for tok in text.split(",") if tok.strip()]
    if not conditions:
        raise ValidationError("no balance condition given")
    return conditions


def _require(args, *names):
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise ValidationError(f"{args.command} requires {', '.join(missing)}")


def _check_tol(tol: float) -> None:
    if not tol > 0:
        raise ValidationError(f"--tol must be positive, got {tol}")


def emit(text: str, out: str | None) -> None:
    """Print ``text`` or write it atomically to ``out``."""
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        fd, tmp = tempfile.mkstemp(dir=path.parent if str(path.parent) else ".", prefix=".tmp-")
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise OutputError(f"cannot write {out}: {exc}") from exc


def run_check(args) -> int:
    _require(args, "n", "units")
    _check_tol(args.tol)
    n = _single(args.n, "--n")
    U = make_unit_set(parse_int_list(args.units), n)
    rep = classify(U, args.tol)
    x, y = (round(v, 6) + 0.0 for v in (rep.cog.x, rep.cog.y))
    yn = {True: "yes", False: "no"}
    text = (
        f"units: {U} (n={n})\n"
        f"symmetry axes: {rep.axis_count}\n"
        f"center of gravity: ({x:.6f}, {y:.6f})  norm={rep.cog.norm:.6e}\n"
        f"BC1: {yn[rep.bc1]}\nBC2: {yn[rep.bc2]}\nBC3: {yn[rep.bc3]}\n"
    )
    emit(text, args.out)
    return EXIT_OK


def _single(values: list[int] | None, flag: str) -> int:
    if values is None or len(values) != 1:
        raise ValidationError(f"{flag} takes a single integer here")
    return values[0]


def run_tiesets(args) -> int:
    _require(args, "n", "k")
    _check_tol(args.tol)
    n, k = _single(args.n, "--n"), _single(args.k, "--k")
    config = SystemConfig(n, k)
    conditions = parse_conditions(args.condition)
    if len(conditions) != 1:
        raise ValidationError("tiesets takes a single --condition")
    catalog = enumerate_minimum_tiesets(config, conditions[0], args.tol)
    text = dumps_catalog_json(catalog) if args.format == "json" else dumps_catalog(catalog)
    emit(text, args.out)
    return EXIT_OK


def run_table1(args) -> int:
    _check_tol(args.tol)
    systems = TABLE1_SYSTEMS
    if args.n is not None or args.k is not None:
        ns = args.n or sorted({n for _, n in TABLE1_SYSTEMS})
        systems = [
            (k, n) for n in ns for k in (args.k or range(2, n - 1, 2)) if 1 <= k <= n
        ]
        for k, n in systems:
            SystemConfig(n, k)
    rows = table1_counts(systems, args.tol)
    emit(table1_json(rows) if args.format == "json" else table1_csv(rows), args.out)
    return EXIT_OK


def _configs(args) -> list[SystemConfig]:
    return [SystemConfig(n, k) for n in args.n for k in args.k]


def _grid(args) -> list[float]:
    if args.r_grid is not None and args.r is not None:
        raise ValidationError("give either --r or --r-grid, not both")
    if args.r_grid is not None:
        return parse_r_grid(args.r_grid)
    if args.r is not None:
        grid = parse_float_list(args.r)
        for r in grid:
            if not 0.0 <= r <= 1.0:
                raise ValidationError(f"--r value {r} outside [0, 1]")
        return grid
    raise ValidationError(f"{args.command} requires --r or --r-grid")


def _render_table(table: ReliabilityTable, fmt: str) -> str:
    return table.to_json() if fmt == "json" else table.to_csv()


def _report_errors(table: ReliabilityTable) -> int:
    for err in table.errors:
        print(f"error: n={err.n} k={err.k} {err.condition.value}: {err.message}", file=sys.stderr)
    return EXIT_COMPUTATION if table.errors else EXIT_OK


def run_reliability(args) -> int:
    _require(args, "n", "k")
    _check_tol(args.tol)
    configs = _configs(args)
    conditions = parse_conditions(args.condition)
    grid = _grid(args)
    table = sweep(configs, conditions, grid, exact=args.exact, tol=args.tol)
    emit(_render_table(table, args.format), args.out)
    return _report_errors(table)


def run_sweep(args) -> int:
    _require(args, "n", "k")
    _check_tol(args.tol)
    configs = _configs(args)
    conditions = parse_conditions(args.condition)
    grid = _grid(args)
    table = sweep(configs, conditions, grid, exact=args.exact, tol=args.tol)
    emit(_render_table(table, args.format), args.out)
    if args.split_dir is not None:
        split = Path(args.split_dir)
        try:
            split.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise OutputError(f"cannot create {split}: {exc}") from exc
        ext = "json" if args.format == "json" else "csv"
        for config in configs:
            for condition in conditions:
                part = ReliabilityTable(table.select(config.n, config.k, condition))
                name = f"n{config.n}_k{config.k}_{condition.value}.{ext}"
                emit(_render_table(part, args.format), str(split / name))
    return _report_errors(table)


COMMANDS = {
    "check": run_check,
    "tiesets": run_tiesets,
    "table1": run_table1,
    "reliability": run_reliability,
    "sweep": run_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circbal",
        description="Minimum tie-sets and reliability of circular k-out-of-n:G balanced systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=_int_list_arg, help="number of units (comma list for sweeps)")
        p.add_argument("--k", type=_int_list_arg, help="minimum operating units (comma list)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="BC3 tolerance on |CoG|")
        p.add_argument("--out", help="write output to PATH instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("check", help="classify one operating-unit set")
    common(p)
    p.add_argument("--units", help="comma-separated 1-based unit indices")

    p = sub.add_parser("tiesets", help="enumerate minimum tie-sets")
    common(p)
    p.add_argument("--condition", default="bc3", help="bc1, bc2 or bc3")

    p = sub.add_parser("table1", help="minimum tie-set counts per balance condition")
    common(p)

    for name, help_ in (("reliability", "system reliability at given r"),
                        ("sweep", "reliability over an r grid")):
        p = sub.add_parser(name, help=help_)
        common(p)
        p.add_argument("--condition", default="all", help="bc1, bc2, bc3 or all")
        p.add_argument("--r", help="unit reliability (comma list allowed)")
        p.add_argument("--r-grid", help="inclusive grid start:end:step")
        p.add_argument("--exact", action="store_true", help="also compute exact reliability")
        if name == "sweep":
            p.add_argument("--split-dir", help="also write one file per (n, k, condition)")
    return parser


def _int_list_arg(text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_VALIDATION
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
