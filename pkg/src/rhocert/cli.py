"""Command-line entry point.

Exit codes: 0 pass, 1 a check failed, 2 usage or configuration error,
3 internal inconsistency (a state contradicting a known theorem).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from .certificate import CertificateWriter, check_certificate, read_certificate
from .corollary import certify_corollary
from .elimination import METHODS, InconsistencyError
from .ledger import Ledger, build_ledger
from .pipeline import RunConfig, default_sieve_limit, run_verify
from .primes import OracleLimitError, build_oracle
from .tail import find_crossover

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2, 3
FORMATS = ("text", "tsv", "jsonl")


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n-max", type=int, default=265)
    p.add_argument("--K", type=parse_rational, default=Fraction(5), help="target ratio, e.g. 5 or 17/3")
    p.add_argument("--sieve-limit", type=int, default=None, help="default 10^6 or $RHOCERT_SIEVE_LIMIT")
    p.add_argument("--slope", type=int, choices=(2, 3), default=2,
                   help="lower bound rho(n) >= slope*n; 3 is hypothetical")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--method", choices=METHODS, default="full",
                   help="'oboe' replays only the L = -1 refinement")
    p.add_argument("--out", default=None, help="certificate path (verify only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rhocert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    _common(sub.add_parser("verify", help="run the full certification and write a certificate"))
    t = sub.add_parser("table", help="print ledger rows")
    _common(t)
    t.add_argument("--from", dest="n_from", type=int, default=1)
    t.add_argument("--to", dest="n_to", type=int, default=None)
    _common(sub.add_parser("crossover", help="solve the analytic tail crossover"))
    _common(sub.add_parser("corollary", help="evaluate the constant for arbitrary finite groups"))
    c = sub.add_parser("check-cert", help="independently re-check a certificate")
    c.add_argument("path")
    c.add_argument("--format", choices=FORMATS, default="text")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    limit = args.sieve_limit if args.sieve_limit is not None else default_sieve_limit()
    if args.n_max < 4:
        raise ValueError("--n-max must be >= 4")
    if limit < 2:
        raise ValueError("--sieve-limit must be >= 2")
    return RunConfig(
        n_max=args.n_max,
        K=args.K,
        sieve_limit=limit,
        slope=args.slope,
        output_format=args.format,
        certificate_path=args.out,
        method=args.method,
    )


def _emit_rows(rows: list[dict], fmt: str, out: TextIO) -> None:
    if not rows:
        return
    if fmt == "jsonl":
        for r in rows:
            out.write(json.dumps(r, separators=(",", ":")) + "\n")
    elif fmt == "tsv":
        out.write("\t".join(rows[0]) + "\n")
        for r in rows:
            out.write("\t".join(str(v) for v in r.values()) + "\n")
    else:
        keys = list(rows[0])
        widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in keys}
        out.write("  ".join(k.rjust(widths[k]) for k in keys) + "\n")
        for r in rows:
            out.write("  ".join(str(r[k]).rjust(widths[k]) for k in keys) + "\n")


def ledger_rows(ledger: Ledger, n_from: int, n_to: int) -> list[dict]:
    rows = []
    for n in range(n_from, n_to + 1):
        e = ledger[n]
        prov = ",".join(f"{a.rule}={a.value}" for a in e.provenance)
        rows.append({
            "n": n,
            "lower": e.lower,
            "upper": e.upper,
            "C(n)": f"{float(e.ratio):.6f}",
            "provenance": prov,
        })
    return rows


def cmd_verify(config: RunConfig, out: TextIO) -> int:
    outcome = run_verify(config)
    if config.certificate_path:
        with open(config.certificate_path, "w", encoding="ascii") as fh:
            CertificateWriter(fh).write_all(outcome.records)

    cr, lin, cor = outcome.crossover, outcome.linear, outcome.corollary
    summary = {
        "verdict": outcome.verdict,
        "K": str(lin.K),
        "n_checked": lin.n_max,
        "max_ratio": f"{float(lin.max_ratio):.6f}",
        "max_ratio_at": lin.max_ratio_at,
        "equality": " ".join(map(str, lin.equality)) or "-",
        "n0": cr.n0 if cr else "-",
        "tail_value": f"{cr.value_at_n0:.7f}" if cr else "-",
        "constant": cor.constant if cor and cor.constant is not None else "-",
    }
    if config.output_format == "text":
        for k, v in summary.items():
            out.write(f"{k:>14}: {v}\n")
        for msg in outcome.failed_checks:
            out.write(f"FAILED: {msg}\n")
        if outcome.passed and cr is not None:
            label = "Theorem certified at desk scale"
            if cr.conditional:
                label += " (conditional on rho(n) >= 3n)"
            out.write(f"{label}: rho(n) <= {lin.K}n for all n >= 1; rho_g(n) <= {cor.constant}n^4\n")
    else:
        summary["failed_checks"] = "; ".join(outcome.failed_checks) or "-"
        _emit_rows([summary], config.output_format, out)
    return EXIT_OK if outcome.passed else EXIT_FAIL


def cmd_table(config: RunConfig, n_from: int, n_to: int, out: TextIO) -> int:
    if not 1 <= n_from <= n_to:
        raise ValueError(f"need 1 <= from <= to, got {n_from}..{n_to}")
    ledger = build_ledger(max(n_to, 4), build_oracle(config.sieve_limit), config.method)
    _emit_rows(ledger_rows(ledger, n_from, n_to), config.output_format, out)
    return EXIT_OK


def cmd_crossover(config: RunConfig, out: TextIO) -> int:
    cr = find_crossover(config.K, config.c, config.slope)
    row = {
        "K": str(cr.K),
        "c": cr.c,
        "slope": cr.slope,
        "n0": cr.n0,
        "value_at_n0": f"{cr.value_at_n0:.9f}",
        "value_before": "-" if cr.value_before is None else f"{cr.value_before:.9f}",
        "margin": f"{cr.margin:.3e}",
        "status": cr.status + (" (conditional on rho(n) >= 3n)" if cr.conditional else ""),
    }
    _emit_rows([row], config.output_format, out)
    return EXIT_OK if cr.certified else EXIT_FAIL


def cmd_corollary(config: RunConfig, out: TextIO) -> int:
    cr = find_crossover(config.K, config.c, config.slope)
    ledger = build_ledger(max(config.n_max, cr.n0 - 1, 4), build_oracle(config.sieve_limit), config.method)
    rep = certify_corollary(ledger, cr)
    rows = [{"n": n, "C(n)": str(C), "f(n)": f"{float(f):.9f}"} for n, (C, f) in rep.per_n.items()]
    _emit_rows(rows, config.output_format, out)
    if config.output_format == "text":
        out.write(f"sup f = {float(rep.sup_value):.9f} ({rep.sup_value}) at n={rep.sup_at}\n")
        out.write(f"tail bound f({rep.tail_from}, {rep.tail_K}) = {float(rep.tail_bound):.9f}\n")
        out.write(f"constant: {rep.constant}\n")
    return EXIT_OK if rep.constant is not None else EXIT_FAIL


def cmd_check_certificate(path: str, out: TextIO) -> int:
    records = read_certificate(path)
    res = check_certificate(records)
    for e in res.errors:
        out.write(f"FAIL {e}\n")
    out.write(f"{'PASS' if res.ok else 'FAIL'}: {res.records_checked} records checked, {len(res.errors)} errors\n")
    return EXIT_OK if res.ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "check-cert":
            return cmd_check_certificate(args.path, out)
        config = config_from_args(args)
        if args.command == "verify":
            return cmd_verify(config, out)
        if args.command == "table":
            return cmd_table(config, args.n_from, args.n_to if args.n_to is not None else config.n_max, out)
        if args.command == "crossover":
            return cmd_crossover(config, out)
        if args.command == "corollary":
            return cmd_corollary(config, out)
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (OracleLimitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
