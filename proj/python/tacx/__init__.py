"""Short graded algebras, connected sums and totally acyclic complexes over prime fields."""

from ._core import (
    Algebra,
    BudgetExceeded,
    ConfigError,
    ConstructionError,
    InvariantViolation,
    NotAComplex,
    ParseError,
    ShapeError,
    TacxError,
    ValidationError,
    assemble_files,
    connected_sum,
    graph_import,
    run_cli,
    search_ezd_exhaustive,
    search_ezd_random,
    verify_complex,
    verify_ezd,
)

__all__ = [
    "Algebra",
    "BudgetExceeded",
    "ConfigError",
    "ConstructionError",
    "InvariantViolation",
    "NotAComplex",
    "ParseError",
    "ShapeError",
    "TacxError",
    "ValidationError",
    "assemble_files",
    "connected_sum",
    "graph_import",
    "run_cli",
    "search_ezd_exhaustive",
    "search_ezd_random",
    "verify_complex",
    "verify_ezd",
]
