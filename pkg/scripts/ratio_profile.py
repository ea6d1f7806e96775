#!/usr/bin/env python3
"""Profile C(n) = upper(n)/n across the ledger, for both refinement methods.

Writes a TSV (n, C_full, C_oboe) and prints the worst cases.  Useful for
seeing where the three-step split beats the plain fixed-point refinement.
"""

import argparse
import csv
import sys

from rhocert.ledger import build_ledger
from rhocert.primes import build_oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=265)
    ap.add_argument("--sieve-limit", type=int, default=10**6)
    ap.add_argument("--csv-out", default=None)
    args = ap.parse_args()

    oracle = build_oracle(args.sieve_limit)
    full = build_ledger(args.n_max, oracle, "full")
    oboe = build_ledger(args.n_max, oracle, "oboe")
    rows = [(n, float(full[n].ratio), float(oboe[n].ratio)) for n in range(1, args.n_max + 1)]

    if args.csv_out:
        with open(args.csv_out, "w", newline="") as fh:
            w = csv.writer(fh, delimiter="\t")
            w.writerow(["n", "C_full", "C_oboe"])
            w.writerows(rows)

    for label, col in (("full", 1), ("oboe", 2)):
        worst = sorted(rows, key=lambda r: -r[col])[:5]
        print(f"{label}: worst C(n) " + ", ".join(f"n={r[0]}:{r[col]:.4f}" for r in worst))
    print(f"C({args.n_max}) full={rows[-1][1]:.4f} oboe={rows[-1][2]:.4f}", file=sys.stderr)


if __name__ == "__main__":
    main()
