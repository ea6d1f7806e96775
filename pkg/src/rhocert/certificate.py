"""Certificate records: canonical JSON lines, and an independent checker.

One record per line, fields in a fixed order.  Rationals are written as
``"p/q"`` strings, reals as 12-significant-digit strings.  The checker does
not call into the elimination engine or the ledger: it replays each recorded
comparison with its own arithmetic against a freshly sieved prime table, so an
engine bug cannot certify itself.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Iterator, TextIO

from .corollary import CorollaryReport
from .elimination import EliminationWitness
from .ledger import Ledger, LinearReport
from .primes import build_oracle
from .tail import MARGIN, CrossoverResult

FORMAT_NAME = "rhocert/1"
AXIOMS = {1: 2, 2: 5, 3: 8, 4: 12}

Record = dict[str, Any]


def fmt_real(x: float | None) -> str | None:
    return None if x is None else f"{x:.12g}"


def fmt_frac(q: Fraction) -> str:
    return str(Fraction(q))


def dumps(record: Record) -> str:
    return json.dumps(record, separators=(",", ":"), ensure_ascii=True)


def loads(line: str) -> Record:
    rec = json.loads(line)
    if not isinstance(rec, dict) or "type" not in rec:
        raise ValueError("record is not an object with a 'type' field")
    return rec


# --- record builders -------------------------------------------------------


def header_record(*, version: str, timestamp: str, sieve_limit: int, n_max: int,
                  K: Fraction, c: float, slope: int, method: str) -> Record:
    return {
        "type": "header",
        "format": FORMAT_NAME,
        "tool_version": version,
        "timestamp": timestamp,
        "sieve_limit": sieve_limit,
        "n_max": n_max,
        "K": fmt_frac(K),
        "c": repr(c),
        "slope": slope,
        "method": method,
    }


def witness_record(w: EliminationWitness) -> Record:
    return {
        "type": "elimination_witness",
        "n": w.n,
        "k": w.k,
        "method": w.method,
        "m_plum": w.m_plum,
        "L": w.L,
        "pi_k": w.pi_k,
        "pi_at_L": w.pi_at_L,
        "pi_past_L": w.pi_past_L,
        "mustard_lhs": w.mustard_lhs,
        "mustard_rhs": w.mustard_rhs,
        "mustard_holds": w.mustard_holds,
        "eliminated": w.eliminated,
    }


def ledger_records(ledger: Ledger) -> Iterator[Record]:
    prev_upper = None
    for n in sorted(ledger.entries):
        e = ledger[n]
        for app in e.provenance:
            if app.rule == "base":
                yield {"type": "base_value", "n": n, "value": app.value}
            elif app.rule == "elimination":
                for w in e.witnesses:
                    yield witness_record(w)
                yield {"type": "rule_application", "n": n, "rule": "elimination", "value": app.value}
            elif app.rule == "recursion":
                yield {"type": "rule_application", "n": n, "rule": "recursion",
                       "prev_upper": prev_upper, "value": app.value}
            else:
                yield {"type": "rule_application", "n": n, "rule": app.rule, "value": app.value}
        yield {"type": "bound_entry", "n": n, "lower": e.lower, "upper": e.upper}
        prev_upper = e.upper


def crossover_record(cr: CrossoverResult, monotone_probe: int, monotone: bool) -> Record:
    return {
        "type": "crossover_result",
        "K": fmt_frac(cr.K),
        "c": repr(cr.c),
        "slope": cr.slope,
        "n0": cr.n0,
        "value_at_n0": fmt_real(cr.value_at_n0),
        "value_before": fmt_real(cr.value_before),
        "margin": fmt_real(cr.margin),
        "status": cr.status,
        "conditional": cr.conditional,
        "monotone_probe": monotone_probe,
        "monotone": monotone,
    }


def corollary_record(rep: CorollaryReport) -> Record:
    return {
        "type": "corollary_report",
        "tail_K": fmt_frac(rep.tail_K),
        "tail_from": rep.tail_from,
        "tail_bound": fmt_frac(rep.tail_bound),
        "tail_bound_decimal": fmt_real(float(rep.tail_bound)),
        "sup_value": fmt_frac(rep.sup_value),
        "sup_decimal": fmt_real(float(rep.sup_value)),
        "sup_at": rep.sup_at,
        "constant": rep.constant,
        "n1_case": rep.n1_case,
        "per_n": [[n, fmt_frac(C), fmt_frac(f)] for n, (C, f) in rep.per_n.items()],
    }


def footer_record(*, verdict: str, failed_checks: list[str], linear: LinearReport,
                  constant: int | None, conditional: bool) -> Record:
    return {
        "type": "footer",
        "verdict": verdict,
        "failed_checks": failed_checks,
        "K": fmt_frac(linear.K),
        "linear_failures": linear.failures,
        "equality": linear.equality,
        "max_ratio": fmt_frac(linear.max_ratio),
        "max_ratio_at": linear.max_ratio_at,
        "constant": constant,
        "conditional": conditional,
    }


class CertificateWriter:
    """Append-only writer; each record is flushed as soon as it is written."""

    def __init__(self, fh: TextIO):
        self.fh = fh

    def write(self, record: Record) -> None:
        self.fh.write(dumps(record) + "\n")
        self.fh.flush()

    def write_all(self, records: Iterable[Record]) -> None:
        for r in records:
            self.write(r)


def read_certificate(path: str | Path) -> list[Record]:
    records = []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                records.append(loads(line))
            except (json.JSONDecodeError, ValueError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
    return records


def emit(records: Iterable[Record]) -> str:
    return "".join(dumps(r) + "\n" for r in records)


def strip_timestamp(records: Iterable[Record]) -> list[Record]:
    return [{k: v for k, v in r.items() if k != "timestamp"} for r in records]


# --- independent checker ---------------------------------------------------


@dataclass
class CheckResult:
    errors: list[str] = field(default_factory=list)
    records_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.errors


class _PiTable:
    """Plain lookup over the rebuilt sieve; negative and tiny x count zero."""

    def __init__(self, limit: int):
        self.table = build_oracle(limit).pi_table
        self.limit = limit

    def __call__(self, x: int) -> int:
        if x > self.limit:
            raise ValueError(f"pi({x}) beyond recorded sieve limit {self.limit}")
        return 0 if x < 2 else int(self.table[x])


def _tail(n: int, c: float, slope: int) -> float | None:
    x = slope * n
    if x < 2:
        return None
    d = 1 - c / math.log(x)
    return None if d <= 0 else 4 / d


def _same_real(recorded: str | None, actual: float | None) -> bool:
    if recorded is None or actual is None:
        return recorded is None and actual is None
    return recorded == fmt_real(actual)


def check_certificate(records: list[Record]) -> CheckResult:
    res = CheckResult()
    err = res.errors

    if not records or records[0].get("type") != "header":
        err.append("record 0: missing header")
        return res
    if records[-1].get("type") != "footer":
        err.append(f"record {len(records) - 1}: missing footer")
        return res
    header, footer = records[0], records[-1]
    try:
        limit = int(header["sieve_limit"])
        n_max = int(header["n_max"])
        K = Fraction(header["K"])
        c = float(header["c"])
        slope = int(header["slope"])
        method = header["method"]
    except (KeyError, TypeError, ValueError) as exc:
        err.append(f"record 0: malformed header ({exc})")
        return res
    if header.get("format") != FORMAT_NAME:
        err.append(f"record 0: unknown format {header.get('format')!r}")
    pi = _PiTable(limit)

    upper: dict[int, int] = {}
    lower: dict[int, int] = {}
    crossover = corollary = None
    last_n = 0
    # per-n state for n >= 5
    quad = rec = expected_k = None
    survivor = None

    def bad(i: int, msg: str) -> None:
        err.append(f"record {i}: {msg}")

    for i, r in enumerate(records[1:-1], start=1):
        res.records_checked += 1
        t = r.get("type")
        if t in ("header", "footer"):
            bad(i, f"unexpected {t}")
            continue
        if t in ("crossover_result", "corollary_report"):
            if t == "crossover_result":
                crossover = (i, r)
            else:
                corollary = (i, r)
            continue
        try:
            n = int(r["n"])
        except (KeyError, TypeError, ValueError):
            bad(i, f"{t} without integer n")
            continue
        if n < last_n:
            bad(i, f"n={n} appears after n={last_n}")
        if n != last_n:
            quad = rec = expected_k = survivor = None
        last_n = n

        try:
            if t == "base_value":
                if AXIOMS.get(n) != r["value"]:
                    bad(i, f"base value rho({n})={r['value']} is not a known exact value")
            elif t == "rule_application":
                rule, value = r["rule"], r["value"]
                if rule == "quadratic":
                    quad = n * (n + 3) // 2 - 2
                    if n < 4 or value != quad:
                        bad(i, f"quadratic bound at n={n} is {quad}, recorded {value}")
                elif rule == "recursion":
                    if r["prev_upper"] != upper.get(n - 1):
                        bad(i, f"recursion uses prev_upper={r['prev_upper']}, ledger has {upper.get(n - 1)}")
                    rec = upper.get(n - 1, 0) + n + 1
                    if value != rec:
                        bad(i, f"recursion bound at n={n} is {rec}, recorded {value}")
                elif rule == "elimination":
                    if survivor is None:
                        bad(i, f"elimination result at n={n} without a surviving witness")
                    elif value != survivor:
                        bad(i, f"elimination result {value} but first survivor was {survivor}")
                else:
                    bad(i, f"unknown rule {rule!r}")
            elif t == "elimination_witness":
                k = r["k"]
                if expected_k is None:
                    if quad is None or rec is None:
                        bad(i, f"witness at n={n} before its seed rules")
                        expected_k = k
                    else:
                        expected_k = min(quad, rec)
                if survivor is not None:
                    bad(i, f"witness after surviving candidate {survivor} at n={n}")
                if k != expected_k:
                    bad(i, f"witness k={k}, expected k={expected_k} (no candidate may be skipped)")
                expected_k = k - 1
                for msg in _check_witness(r, n, k, method, pi):
                    bad(i, msg)
                if not r["eliminated"]:
                    survivor = k
            elif t == "bound_entry":
                lo, up = r["lower"], r["upper"]
                if n <= 4:
                    if lo != AXIOMS.get(n) or up != AXIOMS.get(n):
                        bad(i, f"entry n={n} must equal exact value {AXIOMS.get(n)}")
                else:
                    if lo != 2 * n:
                        bad(i, f"lower bound at n={n} must be {2 * n}, recorded {lo}")
                    if up != survivor:
                        bad(i, f"upper bound at n={n} is {up}, witnesses support {survivor}")
                if lo > up:
                    bad(i, f"lower {lo} exceeds upper {up}")
                if n in upper:
                    bad(i, f"duplicate entry for n={n}")
                if n != len(upper) + 1:
                    bad(i, f"entry n={n} breaks contiguity (expected {len(upper) + 1})")
                upper[n], lower[n] = up, lo
            else:
                bad(i, f"unknown record type {t!r}")
        except (KeyError, TypeError, ValueError) as exc:
            bad(i, f"malformed {t} ({exc!r})")

    if len(upper) != n_max or any(n not in upper for n in range(1, n_max + 1)):
        err.append(f"ledger covers {len(upper)} entries, header claims n_max={n_max}")

    # linear bound, recomputed
    failures = [n for n in sorted(upper) if upper[n] > K * n]
    equality = [n for n in sorted(upper) if upper[n] == K * n]
    fi = len(records) - 1
    if footer.get("linear_failures") != failures:
        err.append(f"record {fi}: footer failures {footer.get('linear_failures')} != recomputed {failures}")
    if footer.get("equality") != equality:
        err.append(f"record {fi}: footer equality {footer.get('equality')} != recomputed {equality}")

    cross_ok = False
    n0 = None
    if crossover is None:
        if K > 4:
            err.append("no crossover_result record")
    else:
        i, r = crossover
        cross_ok, n0, msgs = _check_crossover(r, K, c, slope)
        for m in msgs:
            bad(i, m)
        if n0 is not None and n_max < n0 - 1:
            bad(i, f"ledger stops at {n_max}, tail starts at {n0}")

    constant = None
    tail_ok = False
    if corollary is not None:
        i, r = corollary
        constant, tail_ok, msgs = _check_corollary(r, upper, K, n0)
        for m in msgs:
            bad(i, m)
    elif crossover is not None:
        err.append("no corollary_report record")

    if footer.get("constant") != constant:
        err.append(f"record {fi}: footer constant {footer.get('constant')} != recomputed {constant}")
    supported = not failures and cross_ok and tail_ok
    verdict = footer.get("verdict")
    if verdict in ("pass", "conditional") and not supported:
        err.append(f"record {fi}: footer verdict {verdict!r} is not supported by the records")
    if verdict == "conditional" and slope == 2:
        err.append(f"record {fi}: conditional verdict with unconditional slope")
    if verdict == "pass" and slope != 2:
        err.append(f"record {fi}: slope {slope} result must be labelled conditional")
    return res


def _check_witness(r: Record, n: int, k: int, method: str, pi: _PiTable) -> list[str]:
    out = []
    if n < 5:
        out.append(f"elimination witness at n={n} < 5")
    if k <= 2 * n:
        out.append(f"witness k={k} at or below lower bound {2 * n}")
    if r["method"] != method:
        out.append(f"witness method {r['method']!r} differs from header {method!r}")
    m = k - 4 * n - 1
    if r["m_plum"] != m:
        out.append(f"m_plum recorded {r['m_plum']}, actual {m}")
    pk = pi(k)
    if r["pi_k"] != pk:
        out.append(f"pi_k recorded {r['pi_k']}, actual pi({k})={pk}")
    L = r["L"]
    base = k - 3 * n
    if method == "full":
        if L >= 0:
            a, b = pi(base + L), pi(base + L + 1)
            if r["pi_at_L"] != a or r["pi_past_L"] != b:
                out.append(f"plum evaluations recorded ({r['pi_at_L']}, {r['pi_past_L']}), actual ({a}, {b})")
            if not (a <= m < b):
                out.append(f"L={L} is not the plum threshold: pi({base + L})={a}, pi({base + L + 1})={b}, rhs {m}")
        elif L == -1:
            if m >= 0:
                b = pi(base)
                if r["pi_past_L"] != b:
                    out.append(f"plum evaluation at lambda=0 recorded {r['pi_past_L']}, actual {b}")
                if b <= m:
                    out.append(f"L=-1 but plum holds at lambda=0 (pi({base})={b} <= {m})")
        else:
            out.append(f"L={L} below -1")
    elif L != -1:
        out.append(f"oboe witness must carry L=-1, got {L}")
    lhs, rhs = 4 * n - L, k - pk
    if r["mustard_lhs"] != lhs or r["mustard_rhs"] != rhs:
        out.append(f"mustard sides recorded ({r['mustard_lhs']}, {r['mustard_rhs']}), actual ({lhs}, {rhs})")
    holds = lhs <= rhs
    if r["mustard_holds"] is not holds:
        out.append(f"mustard_holds recorded {r['mustard_holds']}, actual {holds}")
    if r["eliminated"] is not holds:
        out.append(f"eliminated recorded {r['eliminated']}, mustard gives {holds}")
    return out


def _check_crossover(r: Record, K: Fraction, c: float, slope: int) -> tuple[bool, int | None, list[str]]:
    out = []
    try:
        n0 = int(r["n0"])
        if Fraction(r["K"]) != K or float(r["c"]) != c or int(r["slope"]) != slope:
            out.append("crossover parameters differ from header")
    except (KeyError, TypeError, ValueError) as exc:
        return False, None, [f"malformed crossover_result ({exc!r})"]
    Kf = float(K)
    v = _tail(n0, c, slope)
    before = _tail(n0 - 1, c, slope) if n0 > 1 else None
    if v is None:
        out.append(f"tail value undefined at n0={n0}")
        return False, n0, out
    if not _same_real(r.get("value_at_n0"), v):
        out.append(f"value_at_n0 recorded {r.get('value_at_n0')}, actual {fmt_real(v)}")
    if not _same_real(r.get("value_before"), before):
        out.append(f"value_before recorded {r.get('value_before')}, actual {fmt_real(before)}")
    strict = Kf - v >= MARGIN
    minimal = before is None or before - Kf >= MARGIN
    if not strict:
        out.append(f"tail value {v!r} at n0={n0} not below K={K} by margin {MARGIN}")
    if not minimal:
        out.append(f"n0={n0} not minimal: value {before!r} at n0-1")
    status = "certified" if strict and minimal else "inconclusive"
    if r.get("status") != status:
        out.append(f"status recorded {r.get('status')!r}, actual {status!r}")
    if r.get("conditional") is not (slope != 2):
        out.append("slope-3 crossover must be flagged conditional")
    # log(slope n) increases, so the value decreases; spot-check the probe range
    probe = int(r.get("monotone_probe", 0))
    monotone = probe > n0
    if monotone:
        vals = [_tail(m, c, slope) for m in sorted({n0, n0 + 1, probe, *(n0 + (probe - n0) * j // 64 for j in range(65))})]
        monotone = all(b < a for a, b in zip(vals, vals[1:]))
    if r.get("monotone") is not monotone:
        out.append(f"monotone recorded {r.get('monotone')}, actual {monotone}")
    return strict and minimal and monotone and not out, n0, out


def _check_corollary(r: Record, upper: dict[int, int], K: Fraction, n0: int | None) -> tuple[int | None, bool, list[str]]:
    out = []
    try:
        tail_from = int(r["tail_from"])
        tail_K = Fraction(r["tail_K"])
        per_n = r["per_n"]
    except (KeyError, TypeError, ValueError) as exc:
        return None, False, [f"malformed corollary_report ({exc!r})"]
    if n0 is not None and tail_from != n0:
        out.append(f"corollary tail starts at {tail_from}, crossover n0={n0}")
    if tail_K != K:
        out.append(f"corollary tail uses C={tail_K}, header K={K}")

    def f(n: int, C: Fraction) -> Fraction:
        return 28 * C + C * C / (n * n) + C / (n * n * n)

    expected_ns = list(range(2, tail_from))
    if [row[0] for row in per_n] != expected_ns:
        out.append(f"corollary rows do not cover n=2..{tail_from - 1}")
    sup, sup_at = Fraction(0), None
    for n, C_s, f_s in per_n:
        if n not in upper:
            out.append(f"corollary row n={n} has no ledger entry")
            continue
        C = Fraction(upper[n], n)
        fv = f(n, C)
        if Fraction(C_s) != C or Fraction(f_s) != fv:
            out.append(f"corollary row n={n}: recorded ({C_s}, {f_s}), actual ({C}, {fv})")
        if sup_at is None or fv > sup:
            sup, sup_at = fv, n
    tail = f(max(tail_from, 2), tail_K)
    if not expected_ns:
        sup = tail
    if Fraction(r["tail_bound"]) != tail:
        out.append(f"tail bound recorded {r['tail_bound']}, actual {tail}")
    if Fraction(r["sup_value"]) != sup or (sup_at is not None and r["sup_at"] != sup_at):
        out.append(f"sup recorded {r['sup_value']} at {r['sup_at']}, actual {sup} at {sup_at}")
    if r.get("n1_case") != 4:
        out.append(f"n1_case recorded {r.get('n1_case')}, known bound is 4")
    dominated = tail <= sup
    constant = max(math.ceil(sup), 4) if dominated else None
    if r.get("constant") != constant:
        out.append(f"constant recorded {r.get('constant')}, actual {constant}")
    return constant, dominated, out
