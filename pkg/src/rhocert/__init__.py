"""Certified upper bounds on rho(n), the number of primes in the order of a
finite solvable group whose element orders have at most n prime factors."""

__version__ = "0.1.0"

from .corollary import CorollaryReport, certify_corollary, f_value
from .elimination import (
    EliminationWitness,
    InconsistencyError,
    eliminable,
    mustard_check,
    plum_threshold,
    refine_upper,
)
from .ledger import (
    BoundEntry,
    Ledger,
    base_values,
    build_ledger,
    lower_bound,
    quadratic_upper,
    recursion_upper,
    verify_linear,
)
from .primes import (
    OracleLimitError,
    PrimeOracle,
    build_oracle,
    max_x_with_pi_at_most,
    nth_prime,
    pi,
    rs_upper,
)
from .tail import CrossoverResult, find_crossover, tail_monotone_check, tail_value

__all__ = [
    "BoundEntry",
    "CorollaryReport",
    "CrossoverResult",
    "EliminationWitness",
    "InconsistencyError",
    "Ledger",
    "OracleLimitError",
    "PrimeOracle",
    "base_values",
    "build_ledger",
    "build_oracle",
    "certify_corollary",
    "eliminable",
    "f_value",
    "find_crossover",
    "lower_bound",
    "max_x_with_pi_at_most",
    "mustard_check",
    "nth_prime",
    "pi",
    "plum_threshold",
    "quadratic_upper",
    "recursion_upper",
    "refine_upper",
    "rs_upper",
    "tail_monotone_check",
    "tail_value",
    "verify_linear",
]
