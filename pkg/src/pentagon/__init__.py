"""Solutions of the set-theoretic pentagon equation on finite semigroups."""
from .errors import PentagonError
from .semigroup import CayleyTable, analyze, canonical_form, validate_table
from .solution import (
    PESolution,
    classify_properties,
    opposite,
    pentagon_direct_check,
    solutions_isomorphic,
    verify_solution,
)

__all__ = [
    "CayleyTable",
    "PESolution",
    "PentagonError",
    "analyze",
    "canonical_form",
    "classify_properties",
    "opposite",
    "pentagon_direct_check",
    "solutions_isomorphic",
    "validate_table",
    "verify_solution",
]

__version__ = "0.1.0"
