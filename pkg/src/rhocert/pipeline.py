"""End-to-end verification run: crossover, ledger, linear check, corollary."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .certificate import (
    Record,
    corollary_record,
    crossover_record,
    footer_record,
    header_record,
    ledger_records,
)
from .corollary import CorollaryReport, certify_corollary
from .ledger import Ledger, LinearReport, build_ledger, verify_linear
from .primes import DEFAULT_SIEVE_LIMIT, RS_CONSTANT, PrimeOracle, build_oracle
from .tail import CrossoverResult, find_crossover, tail_monotone_check

SIEVE_ENV = "RHOCERT_SIEVE_LIMIT"
MONOTONE_PROBE = 10**6


def default_sieve_limit() -> int:
    raw = os.environ.get(SIEVE_ENV)
    return int(raw) if raw else DEFAULT_SIEVE_LIMIT


@dataclass
class RunConfig:
    n_max: int = 265
    K: Fraction = Fraction(5)
    sieve_limit: int = field(default_factory=default_sieve_limit)
    slope: int = 2
    output_format: str = "text"
    certificate_path: str | None = None
    method: str = "full"
    c: float = RS_CONSTANT


@dataclass
class VerifyOutcome:
    config: RunConfig
    ledger: Ledger
    linear: LinearReport
    crossover: CrossoverResult | None
    monotone: bool
    corollary: CorollaryReport | None
    failed_checks: list[str]
    records: list[Record]

    @property
    def passed(self) -> bool:
        return not self.failed_checks

    @property
    def verdict(self) -> str:
        if self.failed_checks:
            return "fail"
        return "conditional" if self.config.slope != 2 else "pass"


def run_verify(config: RunConfig, oracle: PrimeOracle | None = None, timestamp: str | None = None) -> VerifyOutcome:
    """Run every check; never raises on a failed check, only on bad input."""
    K = Fraction(config.K)
    failed: list[str] = []

    crossover = None
    monotone = False
    if K > 4:
        crossover = find_crossover(K, config.c, config.slope)
        if not crossover.certified:
            failed.append(f"crossover inconclusive at n0={crossover.n0} (margin {crossover.margin:.3g})")
        monotone = tail_monotone_check(crossover.n0, max(MONOTONE_PROBE, crossover.n0 + 1), config.c, config.slope)
        if not monotone:
            failed.append("tail value not decreasing past n0")
    else:
        failed.append(f"crossover: no analytic crossover exists for K={K} <= 4")

    n_top = config.n_max if crossover is None else max(config.n_max, crossover.n0 - 1)
    if oracle is None or oracle.limit != config.sieve_limit:
        oracle = build_oracle(config.sieve_limit)
    ledger = build_ledger(n_top, oracle, config.method)

    linear = verify_linear(ledger, K)
    if linear.failures:
        shown = ", ".join(map(str, linear.failures[:5]))
        more = "" if len(linear.failures) <= 5 else ", ..."
        failed.append(f"linear bound rho(n) <= {K}n fails at n={shown}{more}")

    corollary = None
    if crossover is not None:
        corollary = certify_corollary(ledger, crossover)
        if corollary.constant is None:
            failed.append("corollary: tail bound exceeds the in-range supremum")

    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    records: list[Record] = [
        header_record(
            version=__version__,
            timestamp=timestamp,
            sieve_limit=oracle.limit,
            n_max=n_top,
            K=K,
            c=config.c,
            slope=config.slope,
            method=config.method,
        )
    ]
    records.extend(ledger_records(ledger))
    if crossover is not None:
        records.append(crossover_record(crossover, max(MONOTONE_PROBE, crossover.n0 + 1), monotone))
    if corollary is not None:
        records.append(corollary_record(corollary))
    outcome = VerifyOutcome(config, ledger, linear, crossover, monotone, corollary, failed, records)
    records.append(
        footer_record(
            verdict=outcome.verdict,
            failed_checks=failed,
            linear=linear,
            constant=None if corollary is None else corollary.constant,
            conditional=config.slope != 2,
        )
    )
    return outcome
