"""Per-n lower and upper bounds on rho(n), with the rule that produced each."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .elimination import EliminationWitness, InconsistencyError, refine_upper
from .primes import PrimeOracle

BASE_VALUES = {1: 2, 2: 5, 3: 8, 4: 12}
RULES = ("base", "recursion", "quadratic", "quadratic_improved", "elimination")


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    value: int


@dataclass(frozen=True)
class BoundEntry:
    n: int
    lower: int
    upper: int
    provenance: tuple[RuleApplication, ...]
    witnesses: tuple[EliminationWitness, ...] = ()

    @property
    def ratio(self) -> Fraction:
        """C(n) = upper / n."""
        return Fraction(self.upper, self.n)


@dataclass(frozen=True)
class Ledger:
    entries: dict[int, BoundEntry]
    method: str = "full"

    @property
    def n_max(self) -> int:
        return max(self.entries)

    def __getitem__(self, n: int) -> BoundEntry:
        return self.entries[n]

    def uppers(self) -> dict[int, int]:
        return {n: e.upper for n, e in self.entries.items()}


def base_values() -> dict[int, int]:
    return dict(BASE_VALUES)


def recursion_upper(prev_upper: int, n: int) -> int:
    """Bound at n from a bound at n - 1 via rho(m + 1) <= rho(m) + m + 2."""
    return prev_upper + n + 1


def quadratic_upper(n: int) -> int:
    if n < 4:
        raise ValueError(f"quadratic bound holds only for n >= 4, got {n}")
    return n * (n + 3) // 2 - 2


def improved_quadratic_upper(n: int) -> int:
    if n < 9:
        raise ValueError(f"improved quadratic bound holds only for n >= 9, got {n}")
    return n * (n + 3) // 2 - 9


def lower_bound(n: int, slope: int = 2) -> int:
    # slope 3 is only known when 4 | n; callers must treat it as hypothetical
    if slope not in (2, 3):
        raise ValueError(f"slope must be 2 or 3, got {slope}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return slope * n


def build_ledger(n_max: int, oracle: PrimeOracle, method: str = "full") -> Ledger:
    if n_max < 4:
        raise ValueError(f"n_max must be >= 4, got {n_max}")
    entries: dict[int, BoundEntry] = {}
    for n, v in BASE_VALUES.items():
        entries[n] = BoundEntry(n, v, v, (RuleApplication("base", v),))

    for n in range(5, n_max + 1):
        quad = quadratic_upper(n)
        rec = recursion_upper(entries[n - 1].upper, n)
        seed = min(quad, rec)
        lower = lower_bound(n)
        upper, witnesses = refine_upper(n, seed, lower, oracle, method)
        if upper < lower:
            raise InconsistencyError(f"upper {upper} fell below lower {lower} at n={n}")
        provenance = (
            RuleApplication("quadratic", quad),
            RuleApplication("recursion", rec),
            RuleApplication("elimination", upper),
        )
        entries[n] = BoundEntry(n, lower, upper, provenance, tuple(witnesses))
    return Ledger(entries, method)


@dataclass
class LinearReport:
    K: Fraction
    n_max: int
    failures: list[int] = field(default_factory=list)
    equality: list[int] = field(default_factory=list)
    max_ratio: Fraction = Fraction(0)
    max_ratio_at: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_linear(ledger: Ledger, K: Fraction | int, n_max: int | None = None) -> LinearReport:
    """Check upper(n) <= K n for 1 <= n <= n_max, exactly."""
    K = Fraction(K)
    top = ledger.n_max if n_max is None else n_max
    if top > ledger.n_max:
        raise ValueError(f"ledger only reaches n={ledger.n_max}, asked for {top}")
    report = LinearReport(K=K, n_max=top)
    for n in range(1, top + 1):
        e = ledger[n]
        bound = K * n
        if e.upper > bound:
            report.failures.append(n)
        elif e.upper == bound:
            report.equality.append(n)
        if e.ratio > report.max_ratio:
            report.max_ratio, report.max_ratio_at = e.ratio, n
    return report
