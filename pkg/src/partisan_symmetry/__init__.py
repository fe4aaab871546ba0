"""Exact partisan symmetry metrics and the achievable ranges they can take."""
from .election import (
    HALF,
    DistrictResult,
    DomainError,
    Election,
    ElectionError,
    StructuralError,
    SVPair,
    UnsupportedInputError,
    as_fraction,
    feasibility_check,
    seat_share,
    statewide_vote_share,
)
from .metrics import (
    MetricValue,
    declination,
    efficiency_gap,
    mean_median,
    mm_from_curve,
    partisan_bias,
    pb_from_curve,
    seats_votes_curve,
    sign_consistency,
)
from .bounds import (
    MetricInterval,
    TurnoutZeroBand,
    mm_range_fixed,
    mm_range_limit,
    pb_range_fixed,
    pb_range_limit,
    region_raster,
    zero_region_contains,
    zero_region_turnout,
)
from .constructors import (
    ConstructionPlan,
    choose_epsilon,
    construct_mm_extremal,
    construct_pb_extremal,
    construct_zero,
    construct_zero_turnout,
)

__version__ = "0.1.0"
