"""Periodicity conditions, periodic points and invariant varieties of integrable maps."""

from ._core import (
    ConvergenceError,
    DegenerateInput,
    InvarietyError,
    ParseError,
    PoleError,
    PrecisionAlarm,
    UsageError,
    expected_count,
    fossil_points,
    gamma_series,
    invariants,
    julia_scan,
    orbit,
    periodic_points,
    transition_scan,
    verify_variety_2d,
    verify_variety_lv,
)

__all__ = [
    "ConvergenceError",
    "DegenerateInput",
    "InvarietyError",
    "ParseError",
    "PoleError",
    "PrecisionAlarm",
    "UsageError",
    "expected_count",
    "fossil_points",
    "gamma_series",
    "invariants",
    "julia_scan",
    "orbit",
    "periodic_points",
    "transition_scan",
    "verify_variety_2d",
    "verify_variety_lv",
]
