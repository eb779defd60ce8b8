"""Exact f-energies, f-capacities and the online dynamic weight on Cantor space.

Everything is computed over exact rationals; ``math.inf`` stands for +∞.
"""
from .capacity import (
    CapacityError,
    CapacityResult,
    capacity,
    capacity_lp_oracle,
    capacity_s,
    certify_realizer,
    cf_test_check,
    realizing_measure,
)
from .enumeration import (
    DynamicWeightTrace,
    EnumerationError,
    GoodEnumeration,
    bound_constant,
    calc_inequality_check,
    check_sandwich,
    dynamic_weight,
    order_dependence_witness,
    staged_measure,
    staged_potentials,
    weights,
)
from .kernel import (
    Geometric,
    Kernel,
    KernelError,
    Polynomial,
    Shift,
    Table,
    from_log_energy,
    from_s_energy,
)
from .measure import (
    UNIFORM,
    MeasureError,
    Node,
    PointTail,
    TrieMeasure,
    add,
    cylinder_mass,
    energy,
    mutual_energy,
    potential,
    riesz_energy,
    riesz_potential,
    scale,
    uniform,
)
from .rational import INF, Q, format_ext, parse_rational
from .words import (
    EventuallyPeriodic,
    PrefixFreeSet,
    antichains,
    format_point,
    format_word,
    parse_point,
    parse_word,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
