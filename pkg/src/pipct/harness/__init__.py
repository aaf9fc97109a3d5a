"""Experiment harness: registry, expression grammar, configs, runners, CLI."""

from .config import CONFIG_SCHEMA, ExperimentConfig
from .expressions import Expression, ExpressionError, parse_expression
from .registry import (
    REGISTRY,
    PiecewiseExpression,
    RegistryFunction,
    SampledFunction,
    get_function,
    resolve_function_spec,
)
from .runners import (
    run_adaptive_demo,
    run_badcells,
    run_degree_sweep,
    run_error_profile,
    run_poles,
    run_table1,
    run_table2,
    run_timing,
)

__all__ = [
    "CONFIG_SCHEMA",
    "REGISTRY",
    "Expression",
    "ExpressionError",
    "ExperimentConfig",
    "PiecewiseExpression",
    "RegistryFunction",
    "SampledFunction",
    "get_function",
    "parse_expression",
    "resolve_function_spec",
    "run_adaptive_demo",
    "run_badcells",
    "run_degree_sweep",
    "run_error_profile",
    "run_poles",
    "run_table1",
    "run_table2",
    "run_timing",
]
