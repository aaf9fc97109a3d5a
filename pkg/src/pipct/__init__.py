"""Piecewise Pade-Chebyshev rational approximation of piecewise-smooth
functions, with badcell-driven adaptive refinement and pole diagnostics."""

from .adaptive import (
    AdaptiveParams,
    AdaptiveRun,
    BadcellParams,
    BadcellReport,
    adaptive_run,
    build_apipct,
    detect_badcells,
    refine_partition,
    refine_with_trace,
)
from .chebyshev import (
    AnalyticBoundParams,
    ChebyshevSeries,
    DecayBoundParams,
    Interval,
    analytic_decay_bound,
    chebyshev_points,
    coefficient_decay_bound,
    compute_coefficients,
    evaluate_series,
    map_to_interval,
    truncation_error_bound,
)
from .errors import (
    CellConstructionError,
    ConfigError,
    EvaluationError,
    NumericalError,
    PoleEvaluationError,
)
from .pade import (
    PadeChebyshevApproximant,
    ToeplitzSystem,
    build_pct,
    build_toeplitz,
    compute_numerator,
    denominator_min_on_circle,
    evaluate_pct,
    solve_denominator,
)
from .piecewise import (
    DegreePlan,
    Partition,
    PiecewiseApproximant,
    build_pipct,
    convergence_order,
    evaluate_piecewise,
    l1_error,
    l1_error_report,
    load_approximant,
    save_approximant,
    uniform_partition,
)
from .poles import PoleReport, classify_froissart, polynomial_roots

__version__ = "0.1.0"

__all__ = [
    "AdaptiveParams",
    "AdaptiveRun",
    "AnalyticBoundParams",
    "BadcellParams",
    "BadcellReport",
    "CellConstructionError",
    "ChebyshevSeries",
    "ConfigError",
    "DecayBoundParams",
    "DegreePlan",
    "EvaluationError",
    "Interval",
    "NumericalError",
    "PadeChebyshevApproximant",
    "Partition",
    "PiecewiseApproximant",
    "PoleEvaluationError",
    "PoleReport",
    "ToeplitzSystem",
    "adaptive_run",
    "analytic_decay_bound",
    "build_apipct",
    "build_pct",
    "build_pipct",
    "build_toeplitz",
    "chebyshev_points",
    "classify_froissart",
    "coefficient_decay_bound",
    "compute_coefficients",
    "compute_numerator",
    "convergence_order",
    "denominator_min_on_circle",
    "detect_badcells",
    "evaluate_pct",
    "evaluate_piecewise",
    "evaluate_series",
    "l1_error",
    "l1_error_report",
    "load_approximant",
    "map_to_interval",
    "polynomial_roots",
    "refine_partition",
    "refine_with_trace",
    "save_approximant",
    "solve_denominator",
    "truncation_error_bound",
    "uniform_partition",
]
