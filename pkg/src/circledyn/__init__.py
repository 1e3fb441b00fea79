"""Degree-2 circle coverings, the piecewise-chart homeomorphism groups they
induce, and numerical verification campaigns for the associated dynamics."""

__version__ = "0.1.0"

from . import kernels
from .errors import (
    BudgetExceeded,
    ChainNotDisjoint,
    CircleDynError,
    DepthExceeded,
    InvalidElement,
    NeighborhoodTooSmall,
    NoNiceIntervalFound,
    NonMonotoneLift,
    NotExceptional,
    OutOfDomain,
    RootNotBracketed,
)
from .circle_maps import (
    Arc,
    CirclePoint,
    CoveringMap,
    SmoothnessReport,
    circle_dist,
    doubling,
    gapped_family,
    make_trig_map,
    map_from_json,
    mod1,
    parabolic_doubling,
    wrap_half,
)
from .dyadic import (
    DyadicInterval,
    DyadicPartition,
    chart_apply,
    full_partition,
    grid_point_index,
    interval_by_index,
    interval_of_point,
    partition_to_csv,
    preimage_grid,
    reduce_endpoint,
    split,
)
from .thompson import (
    ThompsonElement,
    ValidationResult,
    build_local_power,
    compose,
    element,
    element_from_json,
    element_to_json,
    eval_and_slope,
    evaluate,
    identity_element,
    invert,
    normalize,
    validate,
)
from .dynamics import (
    DistortionEstimate,
    LambdaApprox,
    MinimalityResult,
    NiceChain,
    PeriodicInterval,
    PeriodicPoint,
    chain_distortion,
    distortion_bound,
    expansion_time,
    find_periodic_points,
    in_any_gap,
    lambda_approx,
    lambda_periodic_points,
    lambda_to_csv,
    maximal_periodic_intervals,
    minimality_test,
    nice_chain,
    nice_interval_at,
    nonexpandable_candidates,
    periodic_to_csv,
    semiconjugacy,
)
from .verifier import (
    LemmaReport,
    epsilon_sequence_report,
    lambda_measure_trend,
    render_json,
    star_witnesses,
    verify_multiplier_growth,
)
