"""Domain types shared by the balance, tie-set and reliability modules.

Unit indices are 1-based everywhere in the public API. Internally a unit
set is also carried as an n-bit mask where bit ``i - 1`` marks unit ``i``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

# Exhaustive 2^n enumeration guard; not an algorithmic ceiling.
MAX_N = 24


class CircBalError(Exception):
    """Base class for all package errors."""


class ValidationError(CircBalError, ValueError):
    """Input rejected before any computation started."""


class EmptySet(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class Duplicate(ValidationError):
    pass


class PositionOutOfRange(ValidationError):
    pass


class InvalidTolerance(ValidationError):
    pass


class DegenerateStep(ValidationError):
    pass


class InvalidUnitReliability(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class TooLarge(CircBalError):
    """The requested enumeration exceeds the configured bound on n."""


def check_enumerable(n: int, max_n: int = MAX_N) -> None:
    if n > max_n:
        raise TooLarge(f"n={n} exceeds enumeration bound {max_n}")


@dataclass(frozen=True)
class SystemConfig:
    """A circular k-out-of-n:G system."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise ValidationError(f"n must be an integer, got {self.n!r}")
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise ValidationError(f"k must be an integer, got {self.k!r}")
        if self.n < 3:
            raise ValidationError(f"n must be >= 3, got {self.n}")
        if not 1 <= self.k <= self.n:
            raise ValidationError(f"k must satisfy 1 <= k <= n={self.n}, got {self.k}")


class BalanceCondition(str, enum.Enum):
    BC1 = "BC1"  # symmetric w.r.t. a pair of perpendicular axes
    BC2 = "BC2"  # operating units spread proportionally
    BC3 = "BC3"  # centre of gravity at the origin

    @classmethod
    def parse(cls, text: str) -> "BalanceCondition":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ValidationError(
                f"unknown balance condition {text!r}; expected one of BC1, BC2, BC3"
            ) from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class UnitSet:
    """Strictly ascending set of operating-unit indices on a circle of n units.

    Build one with :func:`make_unit_set` (validating) or :meth:`from_mask`.
    """

    units: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        if not self.units:
            raise EmptySet("a unit set needs at least one unit")
        if any(u < 1 or u > self.n for u in self.units):
            raise OutOfRange(f"unit indices must lie in 1..{self.n}: {self.units}")
        if any(a >= b for a, b in zip(self.units, self.units[1:])):
            raise ValidationError(f"units must be strictly ascending: {self.units}")

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "UnitSet":
        return cls(tuple(i + 1 for i in range(n) if mask >> i & 1), n)

    @property
    def mask(self) -> int:
        m = 0
        for u in self.units:
            m |= 1 << (u - 1)
        return m

    def __len__(self) -> int:
        return len(self.units)

    def __iter__(self):
        return iter(self.units)

    def __contains__(self, unit: object) -> bool:
        return unit in self.units

    def issubset(self, other: "UnitSet") -> bool:
        return self.n == other.n and self.mask & other.mask == self.mask

    def rotate(self, offset: int) -> "UnitSet":
        """Relabel every unit u as u + offset, wrapping around the circle."""
        return UnitSet(tuple(sorted((u - 1 + offset) % self.n + 1 for u in self.units)), self.n)

    def reflect(self) -> "UnitSet":
        """Mirror image about the axis through unit 1."""
        return UnitSet(tuple(sorted((self.n + 1 - u) % self.n + 1 for u in self.units)), self.n)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.units)) + "}"


def make_unit_set(indices: Iterable[int], n: int) -> UnitSet:
    """Validate raw indices and return them as a normalized :class:`UnitSet`."""
    idx = list(indices)
    if not idx:
        raise EmptySet("no unit indices given")
    for u in idx:
        if isinstance(u, bool) or not isinstance(u, int):
            raise ValidationError(f"unit index must be an integer, got {u!r}")
        if u < 1 or u > n:
            raise OutOfRange(f"unit index {u} outside 1..{n}")
    if len(set(idx)) != len(idx):
        dup = sorted({u for u in idx if idx.count(u) > 1})
        raise Duplicate(f"repeated unit indices: {dup}")
    return UnitSet(tuple(sorted(idx)), n)


@dataclass(frozen=True)
class DistanceTuple:
    """Circular gaps between consecutive operating units, in unit steps."""

    gaps: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.gaps or any(g < 1 for g in self.gaps):
            raise ValidationError(f"gaps must be positive integers: {self.gaps}")

    @property
    def n(self) -> int:
        return sum(self.gaps)

    def __len__(self) -> int:
        return len(self.gaps)

    def __iter__(self):
        return iter(self.gaps)

    def __getitem__(self, i):
        return self.gaps[i]


def distance_tuple(U: UnitSet) -> DistanceTuple:
    u = U.units
    gaps = [b - a for a, b in zip(u, u[1:])]
    gaps.append(U.n + u[0] - u[-1])
    return DistanceTuple(tuple(gaps))


def as_unit_set(units: UnitSet | Sequence[int], n: int | None = None) -> UnitSet:
    if isinstance(units, UnitSet):
        return units
    if n is None:
        raise ValidationError("n is required when passing raw indices")
    return make_unit_set(units, n)
