"""Minimum tie-sets and reliability of circular k-out-of-n:G balanced systems."""
from .balance import (
    DEFAULT_TOL,
    BalanceReport,
    CenterOfGravity,
    SymmetryProfile,
    center_of_gravity,
    check_bc1,
    check_bc2,
    check_bc3,
    classify,
    count_symmetry_axes,
    is_balanced,
    reverse_tuple,
    sector_angles,
    trig_progression_sum,
)
from .core import (
    MAX_N,
    BalanceCondition,
    CircBalError,
    DistanceTuple,
    SystemConfig,
    TooLarge,
    UnitSet,
    ValidationError,
    distance_tuple,
    make_unit_set,
)
from .reliability import (
    ReliabilityTable,
    reliability_exact,
    reliability_product,
    structure_function,
    sweep,
    table1_counts,
)
from .tiesets import (
    TieSetCatalog,
    enumerate_minimum_tiesets,
    enumerate_tiesets,
    minimal_filter,
)

__version__ = "0.1.0"
