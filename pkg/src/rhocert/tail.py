"""Analytic tail: rho(n) <= 4n / (1 - c / log(slope n)) for every n.

Combining rho(n) <= pi(rho(n)) + 4n with pi(x) <= c x / log x and
rho(n) >= slope * n gives a ratio that decreases in n.  The crossover is the
first n where it drops below K.  Floats are used with a guard band: any strict
comparison closer than :data:`MARGIN` is reported as inconclusive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .primes import RS_CONSTANT

MARGIN = 1e-9


@dataclass(frozen=True)
class CrossoverResult:
    K: Fraction
    c: float
    slope: int
    n0: int
    value_at_n0: float
    value_before: float | None  # tail value at n0 - 1, None if undefined there
    status: str  # "certified" or "inconclusive"

    @property
    def margin(self) -> float:
        return float(self.K) - self.value_at_n0

    @property
    def conditional(self) -> bool:
        # slope 3 rests on rho(n) >= 3n, which is not known for every n
        return self.slope != 2

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _check_slope(slope: int) -> None:
    if slope not in (2, 3):
        raise ValueError(f"slope must be 2 or 3, got {slope}")


def tail_value(n: int, c: float = RS_CONSTANT, slope: int = 2) -> float:
    x = slope * n
    if x < 2:
        raise ValueError(f"slope*n must be >= 2, got {x}")
    denom = 1 - c / math.log(x)
    if denom <= 0:
        raise ValueError(f"tail bound vacuous at n={n}: 1 - c/log({x}) = {denom}")
    return 4 / denom


def _defined(n: int, c: float, slope: int) -> float | None:
    try:
        return tail_value(n, c, slope)
    except ValueError:
        return None


def find_crossover(K: Fraction | int | float, c: float = RS_CONSTANT, slope: int = 2) -> CrossoverResult:
    K = Fraction(K)
    _check_slope(slope)
    if K <= 4:
        raise ValueError(f"no crossover exists for K <= 4 (got {K})")
    Kf = float(K)
    n0 = max(1, math.floor(math.exp(c * Kf / (Kf - 4)) / slope) + 1)

    # the closed form is only a guess; settle n0 by bracketing and bisection
    def below(n: int) -> bool:
        v = _defined(n, c, slope)
        return v is not None and v < Kf

    hi = n0
    while not below(hi):
        hi *= 2
    lo = hi // 2
    while lo > 0 and below(lo):
        lo //= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if below(mid):
            hi = mid
        else:
            lo = mid
    n0 = hi

    value = tail_value(n0, c, slope)
    before = _defined(n0 - 1, c, slope) if n0 > 1 else None
    ok = Kf - value >= MARGIN and (before is None or before - Kf >= MARGIN)
    return CrossoverResult(K, c, slope, n0, value, before, "certified" if ok else "inconclusive")


def tail_monotone_check(n0: int, n_probe: int, c: float = RS_CONSTANT, slope: int = 2, samples: int = 2000) -> bool:
    """Strict decrease of the tail value on a grid from n0 to n_probe."""
    if n_probe <= n0:
        raise ValueError(f"need n_probe > n0, got {n_probe} <= {n0}")
    _check_slope(slope)
    if n_probe - n0 <= samples:
        grid = list(range(n0, n_probe + 1))
    else:
        # geometric spacing so both ends of a wide range are covered
        ratio = (n_probe / n0) ** (1 / samples)
        grid = sorted({n0, n_probe, *(round(n0 * ratio**i) for i in range(samples + 1))})
    values = [tail_value(n, c, slope) for n in grid]
    return all(b < a for a, b in zip(values, values[1:]))
