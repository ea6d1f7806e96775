"""The constant in rho_g(n) <= A n^4 for arbitrary finite groups.

Given rho(n) <= C(n) n for solvable groups, the bound for arbitrary groups is
``n^4 * f(n)`` with ``f(n) = 28 C + C^2/n^2 + C/n^3``.  All arithmetic here is
exact on Fractions; decimals are for display only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .ledger import Ledger
from .tail import CrossoverResult

RHO_G_1 = 4  # rho_g(1) <= 4, taken as known


@dataclass(frozen=True)
class CorollaryReport:
    per_n: dict[int, tuple[Fraction, Fraction]]  # n -> (C(n), f(n))
    sup_value: Fraction
    sup_at: int
    tail_K: Fraction
    tail_from: int
    tail_bound: Fraction
    n1_case: int = RHO_G_1

    @property
    def tail_dominated(self) -> bool:
        return self.tail_bound <= self.sup_value

    @property
    def constant(self) -> int | None:
        if not self.tail_dominated:
            return None
        return max(math.ceil(self.sup_value), self.n1_case)


def f_value(n: int, C: Fraction | int) -> Fraction:
    if n <= 1:
        raise ValueError("f is only used for n >= 2; n = 1 is covered by rho_g(1) <= 4")
    C = Fraction(C)
    if C < 0:
        raise ValueError(f"C must be non-negative, got {C}")
    return 28 * C + C * C / n**2 + C / n**3


def corollary_from_ratios(ratios: Mapping[int, Fraction], tail_K: Fraction | int, tail_from: int) -> CorollaryReport:
    """Sup of f over explicit ratios for 2 <= n < tail_from, plus the tail.

    f decreases in n for fixed C, so f(tail_from, tail_K) bounds every n past
    the explicit range whenever C(n) <= tail_K there.
    """
    needed = range(2, tail_from)
    missing = [n for n in needed if n not in ratios]
    if missing:
        raise ValueError(f"ratios missing for n={missing[0]}..; need 2..{tail_from - 1}")
    per_n = {n: (Fraction(ratios[n]), f_value(n, ratios[n])) for n in needed}
    if per_n:
        sup_at = max(per_n, key=lambda n: (per_n[n][1], -n))
        sup = per_n[sup_at][1]
    else:
        sup_at, sup = tail_from, Fraction(0)
    tail = f_value(max(tail_from, 2), tail_K)
    if not per_n:
        sup = tail
    return CorollaryReport(per_n, sup, sup_at, Fraction(tail_K), tail_from, tail)


def certify_corollary(ledger: Ledger, crossover: CrossoverResult) -> CorollaryReport:
    if ledger.n_max < crossover.n0 - 1:
        raise ValueError(
            f"ledger reaches n={ledger.n_max} but the tail only starts at n0={crossover.n0}"
        )
    ratios = {n: ledger[n].ratio for n in range(2, crossover.n0)}
    return corollary_from_ratios(ratios, crossover.K, crossover.n0)
