"""Balance predicates for the operating-unit set of a circular system.

Units sit on the unit circle, unit ``i`` at angle ``(i - 1) * 2*pi/n``
counterclockwise from (1, 0).

* BC1 (symmetry): the number of symmetry axes is a nonzero even number.
* BC2 (proportional spread): more than one symmetry axis, and the sector
  angles between second-neighbour operating units are all congruent, or
  (for an even count) pairwise opposite.
* BC3 (centre of gravity): the mean position of the operating units is the
  origin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import (
    BalanceCondition,
    DegenerateStep,
    DistanceTuple,
    InvalidTolerance,
    PositionOutOfRange,
    UnitSet,
    distance_tuple,
)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class SymmetryProfile:
    axis_count: int
    matching_positions: frozenset[int]


@dataclass(frozen=True)
class CenterOfGravity:
    x: float
    y: float

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class BalanceReport:
    units: UnitSet
    axis_count: int
    cog: CenterOfGravity
    bc1: bool
    bc2: bool
    bc3: bool

    def satisfies(self, condition: BalanceCondition) -> bool:
        return {
            BalanceCondition.BC1: self.bc1,
            BalanceCondition.BC2: self.bc2,
            BalanceCondition.BC3: self.bc3,
        }[BalanceCondition(condition)]


def reverse_tuple(D: DistanceTuple | Sequence[int], l: int) -> tuple[int, ...]:
    """Read the gap sequence backwards starting at position ``l`` (1-based).

    Returns ``(d_l, d_{l-1}, ..., d_1, d_m, d_{m-1}, ..., d_{l+1})``.
    """
    d = tuple(D)
    m = len(d)
    if not 1 <= l <= m:
        raise PositionOutOfRange(f"position {l} outside 1..{m}")
    return d[l - 1::-1] + d[:l - 1:-1]


def count_symmetry_axes(U: UnitSet) -> SymmetryProfile:
    D = distance_tuple(U).gaps
    positions = frozenset(l for l in range(1, len(D) + 1) if reverse_tuple(D, l) == D)
    return SymmetryProfile(len(positions), positions)


def sector_angles(U: UnitSet) -> tuple[int, ...]:
    """Angles (in multiples of 2*pi/n) between each unit and its second neighbour.

    Entry ``l`` spans ``u_l -> u_{l+2}``, i.e. ``d_l + d_{l+1}``.
    """
    d = distance_tuple(U).gaps
    m = len(d)
    return tuple(d[i] + d[(i + 1) % m] for i in range(m))


def has_proportional_sectors(U: UnitSet) -> bool:
    a = sector_angles(U)
    if len(set(a)) == 1:
        return True
    half = len(a) // 2
    return len(a) % 2 == 0 and a[:half] == a[half:]


def check_bc1(U: UnitSet) -> bool:
    axes = count_symmetry_axes(U).axis_count
    return axes > 0 and axes % 2 == 0


def check_bc2(U: UnitSet) -> bool:
    # Axis count alone admits the 3-fold 9-unit sets on n=12 (4 extra
    # 8-out-of-12 tie-sets); the sector pattern rejects them.
    return count_symmetry_axes(U).axis_count > 1 and has_proportional_sectors(U)


def center_of_gravity(U: UnitSet) -> CenterOfGravity:
    theta = 2.0 * math.pi / U.n
    m = len(U)
    x = math.fsum(math.cos((u - 1) * theta) for u in U.units) / m
    y = math.fsum(math.sin((u - 1) * theta) for u in U.units) / m
    return CenterOfGravity(x, y)


def _check_tol(tol: float) -> None:
    if not tol > 0:
        raise InvalidTolerance(f"tolerance must be positive, got {tol!r}")


def check_bc3(U: UnitSet, tol: float = DEFAULT_TOL) -> bool:
    _check_tol(tol)
    return center_of_gravity(U).norm <= tol


def classify(U: UnitSet, tol: float = DEFAULT_TOL) -> BalanceReport:
    """Evaluate all three balance conditions independently."""
    _check_tol(tol)
    profile = count_symmetry_axes(U)
    axes = profile.axis_count
    cog = center_of_gravity(U)
    return BalanceReport(
        units=U,
        axis_count=axes,
        cog=cog,
        bc1=axes > 0 and axes % 2 == 0,
        bc2=axes > 1 and has_proportional_sectors(U),
        bc3=cog.norm <= tol,
    )


def is_balanced(U: UnitSet, condition: BalanceCondition, tol: float = DEFAULT_TOL) -> bool:
    condition = BalanceCondition(condition)
    if condition is BalanceCondition.BC1:
        return check_bc1(U)
    if condition is BalanceCondition.BC2:
        return check_bc2(U)
    return check_bc3(U, tol)


def trig_progression_sum(a: float, d: float, m: int) -> tuple[float, float]:
    """Closed form of ``sum(cos(a + j*d))`` and ``sum(sin(a + j*d))`` for j < m.

    Both equal ``sin(m*d/2) / sin(d/2)`` times the cos (resp. sin) of the
    midpoint angle ``a + (m - 1)*d/2``.

    Raises
    ------
    DegenerateStep
        If ``sin(d/2)`` vanishes (``d`` a multiple of 2*pi).
    """
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    half = math.sin(d / 2.0)
    if d == 0 or abs(half) < 1e-15:
        raise DegenerateStep(f"step d={d!r} is a multiple of 2*pi")
    scale = math.sin(m * d / 2.0) / half
    mid = a + (m - 1) * d / 2.0
    return scale * math.cos(mid), scale * math.sin(mid)
