"""Exact prime counting over a bounded range, plus the Rosser-Schoenfeld bound.

Every inequality checked elsewhere in the package reduces to ``pi`` or
``max_x_with_pi_at_most`` on a :class:`PrimeOracle`.  Queries past the sieve
limit raise :class:`OracleLimitError` instead of extrapolating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, TextIO

import numpy as np

RS_CONSTANT = 1.25506
RS_VALIDITY_FLOOR = 2
DEFAULT_SIEVE_LIMIT = 10**6


class OracleLimitError(ValueError):
    """A query needs primes beyond the sieve limit; rebuild the oracle larger."""


@dataclass(frozen=True)
class AnalyticPiBound:
    c: float = RS_CONSTANT
    validity_floor: int = RS_VALIDITY_FLOOR

    def __call__(self, x: float) -> float:
        if x < self.validity_floor:
            raise ValueError(f"analytic bound only valid for x >= {self.validity_floor}, got {x}")
        return self.c * x / math.log(x)


@dataclass(frozen=True, eq=False)
class PrimeOracle:
    """Immutable sieve table.

    ``pi_table[x]`` is pi(x) for ``0 <= x <= limit`` and ``primes`` holds every
    prime up to ``limit`` in ascending order.  Both arrays are read-only.
    """

    limit: int
    pi_table: np.ndarray
    primes: np.ndarray

    @property
    def prime_count(self) -> int:
        return int(self.primes.size)

    def pi(self, x: int) -> int:
        return pi(self, x)

    def nth_prime(self, m: int) -> int:
        return nth_prime(self, m)

    def max_x_with_pi_at_most(self, m: int) -> int:
        return max_x_with_pi_at_most(self, m)


def _sieve(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return is_prime


def build_oracle(limit: int = DEFAULT_SIEVE_LIMIT) -> PrimeOracle:
    if int(limit) != limit or limit < 2:
        raise ValueError(f"sieve limit must be an integer >= 2, got {limit!r}")
    limit = int(limit)
    is_prime = _sieve(limit)
    pi_table = np.cumsum(is_prime, dtype=np.int64)
    primes = np.flatnonzero(is_prime).astype(np.int64)
    pi_table.setflags(write=False)
    primes.setflags(write=False)
    return PrimeOracle(limit=limit, pi_table=pi_table, primes=primes)


def pi(oracle: PrimeOracle, x: int) -> int:
    """Number of primes <= x.  Zero for every x < 2, negatives included."""
    if x > oracle.limit:
        raise OracleLimitError(f"pi({x}) requested but sieve limit is {oracle.limit}")
    if x < 2:
        return 0
    return int(oracle.pi_table[x])


def nth_prime(oracle: PrimeOracle, m: int) -> int:
    if m < 1:
        raise ValueError(f"prime index must be >= 1, got {m}")
    if m > oracle.prime_count:
        raise OracleLimitError(
            f"prime #{m} requested but only {oracle.prime_count} primes lie below {oracle.limit}"
        )
    return int(oracle.primes[m - 1])


NO_X = -1  # sentinel: no integer x has pi(x) <= m when m < 0


def max_x_with_pi_at_most(oracle: PrimeOracle, m: int) -> int:
    """Largest x with pi(x) <= m, i.e. p_{m+1} - 1; :data:`NO_X` for m < 0."""
    if m < 0:
        return NO_X
    if m + 1 > oracle.prime_count:
        raise OracleLimitError(
            f"inverting pi at {m} needs prime #{m + 1}, beyond sieve limit {oracle.limit}"
        )
    return int(oracle.primes[m]) - 1


def rs_upper(x: float) -> float:
    """1.25506 x / log x, valid for x >= 2."""
    return AnalyticPiBound()(x)


def iter_prime_pairs(oracle: PrimeOracle) -> Iterator[tuple[int, int]]:
    for m, p in enumerate(oracle.primes, start=1):
        yield m, int(p)


def dump_primes(oracle: PrimeOracle, fh: TextIO, count: int | None = None) -> None:
    """Tab-separated (m, p_m) lines, for debugging."""
    for m, p in iter_prime_pairs(oracle):
        if count is not None and m > count:
            break
        fh.write(f"{m}\t{p}\n")
