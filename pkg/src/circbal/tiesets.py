"""Tie-set and minimum tie-set enumeration.

A tie-set is any set of at least k operating units satisfying the chosen
balance condition (the remaining non-failed units can be switched off).
The minimum tie-sets are the inclusion-minimal tie-sets.
"""
from __future__ import annotations

import functools
import io
import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, TextIO

from .balance import DEFAULT_TOL, classify
from .core import (
    MAX_N,
    BalanceCondition,
    SystemConfig,
    UnitSet,
    ValidationError,
    check_enumerable,
)


@dataclass(frozen=True)
class TieSetCatalog:
    config: SystemConfig
    condition: BalanceCondition
    tiesets: tuple[UnitSet, ...]
    tol: float = DEFAULT_TOL

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def k(self) -> int:
        return self.config.k

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.tiesets)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(t.mask for t in self.tiesets)

    def __len__(self) -> int:
        return len(self.tiesets)

    def __iter__(self):
        return iter(self.tiesets)


def _canonical_key(U: UnitSet):
    return len(U), U.units


@functools.lru_cache(maxsize=32)
def _all_subset_flags(n: int, tol: float) -> tuple[tuple[int, bool, bool, bool], ...]:
    # (mask, bc1, bc2, bc3) for every nonempty subset, canonical order
    out = []
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            rep = classify(UnitSet(combo, n), tol)
            out.append((rep.units.mask, rep.bc1, rep.bc2, rep.bc3))
    return tuple(out)


_FLAG_COLUMN = {BalanceCondition.BC1: 1, BalanceCondition.BC2: 2, BalanceCondition.BC3: 3}


def balanced_masks(n: int, condition: BalanceCondition, tol: float = DEFAULT_TOL) -> tuple[int, ...]:
    """Masks of every balanced subset of ``{1..n}`` in canonical order.

    Canonical order is cardinality ascending, then lexicographic on indices.
    """
    col = _FLAG_COLUMN[BalanceCondition(condition)]
    return tuple(row[0] for row in _all_subset_flags(n, float(tol)) if row[col])


def enumerate_tiesets(
    config: SystemConfig,
    condition: BalanceCondition,
    tol: float = DEFAULT_TOL,
    max_n: int = MAX_N,
) -> list[UnitSet]:
    """All subsets with at least k units that satisfy ``condition``."""
    check_enumerable(config.n, max_n)
    n, k = config.n, config.k
    return [
        UnitSet.from_mask(m, n)
        for m in balanced_masks(n, BalanceCondition(condition), tol)
        if m.bit_count() >= k
    ]


def minimal_filter(sets: Iterable[UnitSet]) -> list[UnitSet]:
    """Keep the inclusion-minimal members, in canonical order."""
    ordered = sorted(set(sets), key=_canonical_key)
    kept: list[UnitSet] = []
    kept_masks: list[int] = []
    for U in ordered:
        m = U.mask
        if any(a & m == a for a in kept_masks):
            continue
        kept.append(U)
        kept_masks.append(m)
    return kept


def enumerate_minimum_tiesets(
    config: SystemConfig,
    condition: BalanceCondition,
    tol: float = DEFAULT_TOL,
    max_n: int = MAX_N,
) -> TieSetCatalog:
    """Sweep balanced subsets by increasing size, dropping any that contain
    an already accepted minimum tie-set."""
    check_enumerable(config.n, max_n)
    condition = BalanceCondition(condition)
    accepted: list[int] = []
    for m in balanced_masks(config.n, condition, tol):
        if m.bit_count() < config.k:
            continue
        if any(a & m == a for a in accepted):
            continue
        accepted.append(m)
    tiesets = tuple(UnitSet.from_mask(m, config.n) for m in accepted)
    return TieSetCatalog(config, condition, tiesets, tol)


# -- serialization ----------------------------------------------------------

_HEADER = re.compile(
    r"^# n=(?P<n>\d+),k=(?P<k>\d+),condition=(?P<cond>BC[123]),"
    r"tol=(?P<tol>[^,]+),count=(?P<count>\d+)$"
)


def dump_catalog(catalog: TieSetCatalog, fp: TextIO) -> None:
    """Write ``catalog`` as a header line plus one comma-separated tie-set per line."""
    fp.write(
        f"# n={catalog.n},k={catalog.k},condition={catalog.condition.value},"
        f"tol={catalog.tol!r},count={len(catalog)}\n"
    )
    for t in catalog.tiesets:
        fp.write(",".join(map(str, t.units)) + "\n")


def dumps_catalog(catalog: TieSetCatalog) -> str:
    buf = io.StringIO()
    dump_catalog(catalog, buf)
    return buf.getvalue()


def load_catalog(fp: TextIO) -> TieSetCatalog:
    lines = [line.rstrip("\n") for line in fp]
    if not lines:
        raise ValidationError("empty catalog file")
    match = _HEADER.match(lines[0])
    if match is None:
        raise ValidationError(f"malformed catalog header: {lines[0]!r}")
    config = SystemConfig(int(match["n"]), int(match["k"]))
    body = [line for line in lines[1:] if line.strip()]
    tiesets = tuple(
        UnitSet(tuple(int(tok) for tok in line.split(",")), config.n) for line in body
    )
    if len(tiesets) != int(match["count"]):
        raise ValidationError(
            f"catalog header announces {match['count']} tie-sets, found {len(tiesets)}"
        )
    return TieSetCatalog(config, BalanceCondition(match["cond"]), tiesets, float(match["tol"]))


def loads_catalog(text: str) -> TieSetCatalog:
    return load_catalog(io.StringIO(text))


def catalog_to_dict(catalog: TieSetCatalog) -> dict:
    return {
        "n": catalog.n,
        "k": catalog.k,
        "condition": catalog.condition.value,
        "tol": catalog.tol,
        "count": len(catalog),
        "tiesets": [list(t.units) for t in catalog.tiesets],
    }


def catalog_from_dict(data: dict) -> TieSetCatalog:
    config = SystemConfig(int(data["n"]), int(data["k"]))
    tiesets = tuple(UnitSet(tuple(t), config.n) for t in data["tiesets"])
    return TieSetCatalog(
        config, BalanceCondition(data["condition"]), tiesets, float(data["tol"])
    )


def dumps_catalog_json(catalog: TieSetCatalog) -> str:
    return json.dumps(catalog_to_dict(catalog), indent=2) + "\n"
