"""Expansion, girth and percolation tools for spanning sub-expander searches."""

from ._core import (
    ComputationRefused,
    Graph,
    InvalidInput,
    UsageError,
    ball_profile,
    build,
    canonical_spec,
    cheeger_exact,
    condition_check,
    conductance_exact,
    diameter,
    girth,
    measure,
    percolate,
    probe,
    run_cli,
    search,
    spectrum,
    trim_to_girth,
)

__all__ = [
    "ComputationRefused",
    "Graph",
    "InvalidInput",
    "UsageError",
    "ball_profile",
    "build",
    "canonical_spec",
    "cheeger_exact",
    "condition_check",
    "conductance_exact",
    "diameter",
    "girth",
    "measure",
    "percolate",
    "probe",
    "run_cli",
    "search",
    "spectrum",
    "trim_to_girth",
]
