"""System reliability from a minimum tie-set catalog.

Two evaluations are provided:

``reliability_product``
    ``1 - prod(1 - r**|T|)`` over the minimum tie-sets. This treats the
    tie-sets as independent, which is exact only when they are pairwise
    disjoint; otherwise it is the minimal-path upper bound.
``reliability_exact``
    ``P[phi(X) = 1]`` summed over all ``2**n`` unit states.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .balance import DEFAULT_TOL
from .core import (
    MAX_N,
    BalanceCondition,
    CircBalError,
    InvalidUnitReliability,
    LengthMismatch,
    SystemConfig,
    ValidationError,
    check_enumerable,
)
from .tiesets import TieSetCatalog, enumerate_minimum_tiesets

SWEEP_FIELDS = ("n", "k", "condition", "r", "R_product", "R_exact")
TABLE1_FIELDS = ("k", "n", "bc1", "bc2", "bc3", "diff21", "diff32")

# k values 2, 4, ..., n - 2 for each even n
TABLE1_SYSTEMS = tuple((k, n) for n in (6, 8, 10, 12, 14) for k in range(2, n - 1, 2))


def _check_r(r: float) -> float:
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise InvalidUnitReliability(f"unit reliability must lie in [0, 1], got {r!r}")
    return r


def structure_function(X: Sequence[int], catalog: TieSetCatalog) -> int:
    """1 if every unit of some minimum tie-set is functioning in ``X``."""
    if len(X) != catalog.n:
        raise LengthMismatch(f"state vector has length {len(X)}, system has n={catalog.n}")
    state = 0
    for i, x in enumerate(X):
        if x not in (0, 1):
            raise ValidationError(f"unit states must be 0 or 1, got {x!r}")
        state |= x << i
    return int(any(t & state == t for t in catalog.masks))


def reliability_product(catalog: TieSetCatalog, r: float) -> float:
    r = _check_r(r)
    q = 1.0
    for size in catalog.sizes:
        q *= 1.0 - r ** size
    return 1.0 - q


@lru_cache(maxsize=256)
def _working_profile(n: int, masks: tuple[int, ...]) -> tuple[int, ...]:
    up = np.zeros(1 << n, dtype=bool)
    up[list(masks)] = True
    # close upwards: a state works if dropping any one working unit still works
    for i in range(n):
        view = up.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    popcount = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        popcount[1 << i: 1 << (i + 1)] = popcount[: 1 << i] + 1
    return tuple(int(c) for c in np.bincount(popcount[up], minlength=n + 1))


def working_state_counts(catalog: TieSetCatalog, max_n: int = MAX_N) -> tuple[int, ...]:
    """Number of working unit states with exactly j units up, for j = 0..n."""
    check_enumerable(catalog.n, max_n)
    if not catalog.masks:
        return (0,) * (catalog.n + 1)
    return _working_profile(catalog.n, catalog.masks)


def reliability_exact(catalog: TieSetCatalog, r: float, max_n: int = MAX_N) -> float:
    r = _check_r(r)
    counts = working_state_counts(catalog, max_n)
    n = catalog.n
    total = math.fsum(c * r ** j * (1.0 - r) ** (n - j) for j, c in enumerate(counts) if c)
    return min(1.0, total)


@dataclass(frozen=True)
class ReliabilityRow:
    n: int
    k: int
    condition: BalanceCondition
    r: float
    R_product: float
    R_exact: float | None = None


@dataclass(frozen=True)
class RowError:
    n: int
    k: int
    condition: BalanceCondition
    message: str


@dataclass
class ReliabilityTable:
    rows: list[ReliabilityRow] = field(default_factory=list)
    errors: list[RowError] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def select(self, n: int, k: int, condition: BalanceCondition) -> list[ReliabilityRow]:
        condition = BalanceCondition(condition)
        return [row for row in self.rows if (row.n, row.k, row.condition) == (n, k, condition)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SWEEP_FIELDS)
        for row in self.rows:
            writer.writerow([
                row.n, row.k, row.condition.value, _fmt(row.r), _fmt(row.R_product),
                "" if row.R_exact is None else _fmt(row.R_exact),
            ])
        return buf.getvalue()

    def to_records(self) -> list[dict]:
        return [
            {
                "n": row.n, "k": row.k, "condition": row.condition.value,
                "r": float(_fmt(row.r)), "R_product": float(_fmt(row.R_product)),
                "R_exact": None if row.R_exact is None else float(_fmt(row.R_exact)),
            }
            for row in self.rows
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_records(), indent=2) + "\n"


def _fmt(x: float) -> str:
    # 12 significant digits; avoid "-0"
    return f"{x + 0.0:.12g}"


def sweep(
    configs: Iterable[SystemConfig],
    conditions: Iterable[BalanceCondition],
    r_grid: Iterable[float],
    exact: bool = False,
    tol: float = DEFAULT_TOL,
    max_n: int = MAX_N,
) -> ReliabilityTable:
    """Tabulate reliability for every (config, condition, r) combination.

    Each catalog is enumerated once and reused across the grid. A catalog
    that cannot be enumerated is recorded in ``table.errors`` instead of
    producing rows.
    """
    grid = [_check_r(r) for r in r_grid]
    conditions = [BalanceCondition(c) for c in conditions]
    table = ReliabilityTable()
    for config in configs:
        for condition in conditions:
            try:
                catalog = enumerate_minimum_tiesets(config, condition, tol, max_n)
            except CircBalError as exc:
                table.errors.append(RowError(config.n, config.k, condition, str(exc)))
                continue
            for r in grid:
                table.rows.append(ReliabilityRow(
                    config.n, config.k, condition, r,
                    reliability_product(catalog, r),
                    reliability_exact(catalog, r, max_n) if exact else None,
                ))
    return table


@dataclass(frozen=True)
class Table1Row:
    k: int
    n: int
    bc1: int
    bc2: int
    bc3: int

    @property
    def diff21(self) -> int:
        return self.bc2 - self.bc1

    @property
    def diff32(self) -> int:
        return self.bc3 - self.bc2

    def as_tuple(self) -> tuple[int, ...]:
        return (self.k, self.n, self.bc1, self.bc2, self.bc3, self.diff21, self.diff32)


def table1_counts(
    systems: Iterable[tuple[int, int]] = TABLE1_SYSTEMS,
    tol: float = DEFAULT_TOL,
    max_n: int = MAX_N,
) -> list[Table1Row]:
    """Minimum tie-set counts under BC1/BC2/BC3 for each ``(k, n)`` pair."""
    rows = []
    for k, n in systems:
        config = SystemConfig(n, k)
        counts = [
            len(enumerate_minimum_tiesets(config, c, tol, max_n)) for c in BalanceCondition
        ]
        rows.append(Table1Row(k, n, *counts))
    return rows


def table1_csv(rows: Sequence[Table1Row]) -> str:
    lines = [",".join(TABLE1_FIELDS)]
    lines += [",".join(map(str, row.as_tuple())) for row in rows]
    return "\n".join(lines) + "\n"


def table1_json(rows: Sequence[Table1Row]) -> str:
    return json.dumps([dict(zip(TABLE1_FIELDS, row.as_tuple())) for row in rows], indent=2) + "\n"
