"""Maximum hierarchical b-matching: exact solvers and tooling."""

from .core import (
    DuplicateSetError,
    EmptySetError,
    Graph,
    HMatching,
    Instance,
    LaminarFamily,
    MissingRootError,
    MissingSingletonError,
    OverlapError,
    ValidationError,
    Violation,
    cardinality,
    check_feasible,
    degree,
    is_feasible,
    normalize,
    set_degrees,
    slack_edge,
    slack_set,
    validate_family,
)
from .formats import ParseError, emit_instance, emit_solution, parse_instance, parse_solution
from .generator import GeneratorConfig, generate
from .oracle import BudgetExceeded, OracleResult, brute_force_max
from .representing import SizeOverflow, solve_pseudo
from .solver import ALGORITHMS, Certificate, SolveReport, solve, verify_certificate

__all__ = [
    "ALGORITHMS", "BudgetExceeded", "Certificate", "DuplicateSetError", "EmptySetError",
    "GeneratorConfig", "Graph", "HMatching", "Instance", "LaminarFamily", "MissingRootError",
    "MissingSingletonError", "OracleResult", "OverlapError", "ParseError", "SizeOverflow",
    "SolveReport", "ValidationError", "Violation", "brute_force_max", "cardinality",
    "check_feasible", "degree", "emit_instance", "emit_solution", "generate", "is_feasible",
    "normalize", "parse_instance", "parse_solution", "set_degrees", "slack_edge", "slack_set",
    "solve", "solve_pseudo", "validate_family", "verify_certificate",
]
