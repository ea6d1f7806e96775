"""Candidate elimination for upper bounds on rho(n).

Suppose rho(n) = k.  Splitting off three derived quotients with deficiency
lambda gives the contradiction ``pi(k - 3n + lambda) <= k - 4n - 1`` (the
"plum" condition), which holds for ``0 <= lambda <= L``.  Every larger lambda
is covered when ``4n - L <= k - pi(k)`` (the "mustard" condition).  If the
latter holds, k is eliminated.

With ``method="oboe"`` the plum step is skipped and L is pinned to -1, which
leaves only the older fixed-point refinement ``pi(k) + 4n <= k - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .primes import PrimeOracle, max_x_with_pi_at_most, pi

METHODS = ("full", "oboe")


class InconsistencyError(RuntimeError):
    """The engine reached a state that contradicts a known theorem (a bug)."""


@dataclass(frozen=True)
class EliminationWitness:
    n: int
    k: int
    m_plum: int
    L: int
    pi_k: int
    # pi at the last lambda satisfying plum and at the first failing one;
    # None where the branch made no query
    pi_at_L: int | None
    pi_past_L: int | None
    mustard_holds: bool
    eliminated: bool
    method: str = "full"

    @property
    def mustard_lhs(self) -> int:
        return 4 * self.n - self.L

    @property
    def mustard_rhs(self) -> int:
        return self.k - self.pi_k


def plum_threshold(n: int, k: int, oracle: PrimeOracle) -> int:
    """Largest lambda >= 0 with pi(k - 3n + lambda) <= k - 4n - 1, or -1."""
    if n < 5:
        raise ValueError(f"elimination argument needs n >= 5, got {n}")
    if k < 2 * n:
        raise ValueError(f"candidate k={k} lies below the lower bound 2n={2 * n}")
    m = k - 4 * n - 1
    if m < 0:
        return -1
    return max(-1, max_x_with_pi_at_most(oracle, m) - (k - 3 * n))


def mustard_check(n: int, k: int, L: int, oracle: PrimeOracle) -> bool:
    if L < -1:
        raise ValueError(f"L must be >= -1, got {L}")
    return 4 * n - L <= k - pi(oracle, k)


def eliminable(n: int, k: int, oracle: PrimeOracle, method: str = "full") -> EliminationWitness:
    if k <= 2 * n:
        raise ValueError(f"refusing to eliminate k={k} at or below the lower bound {2 * n}")
    if method not in METHODS:
        raise ValueError(f"unknown elimination method {method!r}")
    m = k - 4 * n - 1
    if method == "oboe":
        if n < 5:
            raise ValueError(f"elimination argument needs n >= 5, got {n}")
        L = -1
        pi_at_L = pi_past_L = None
    else:
        L = plum_threshold(n, k, oracle)
        if L >= 0:
            pi_at_L = pi(oracle, k - 3 * n + L)
            pi_past_L = pi(oracle, k - 3 * n + L + 1)
        else:
            pi_at_L = None
            pi_past_L = pi(oracle, k - 3 * n) if m >= 0 else None
    holds = mustard_check(n, k, L, oracle)
    return EliminationWitness(
        n=n,
        k=k,
        m_plum=m,
        L=L,
        pi_k=pi(oracle, k),
        pi_at_L=pi_at_L,
        pi_past_L=pi_past_L,
        mustard_holds=holds,
        eliminated=holds,
        method=method,
    )


def refine_upper(
    n: int,
    seed_upper: int,
    lower: int,
    oracle: PrimeOracle,
    method: str = "full",
) -> tuple[int, list[EliminationWitness]]:
    """Walk k down from ``seed_upper`` and stop at the first survivor.

    Eliminability is not monotone in k, so the walk must not skip ahead: the
    bound rho(n) <= k only follows once every value above k was eliminated.
    """
    if lower < 2 * n or seed_upper < lower:
        raise ValueError(f"need seed_upper >= lower >= 2n, got {seed_upper}, {lower} at n={n}")
    witnesses: list[EliminationWitness] = []
    k = seed_upper
    while k > lower:
        w = eliminable(n, k, oracle, method)
        witnesses.append(w)
        if not w.eliminated:
            return k, witnesses
        k -= 1
    raise InconsistencyError(
        f"every candidate in ({lower}, {seed_upper}] was eliminated at n={n}"
    )
