"""Metric multidimensional scaling in the Poincare disk."""

from .geometry import (
    MobiusTransform,
    geodesic_move,
    hyp_distance,
    max_step_param,
    mobius_apply,
    step_to_distance,
)
from .linesearch import LineProbe, LineSearchParams, hyp_line_search, q_eval, q_slope, roof_value
from .objective import (
    DegenerateConfigurationError,
    DissimilarityData,
    ErrorModel,
    Variant,
    apply_step,
    distance_matrix,
    embedding_error,
    gradient,
)
from .solver import SolverParams, StopReason, multi_start, random_configuration, scale_sweep, solve

__version__ = "0.1.0"
