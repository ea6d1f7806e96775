#!/usr/bin/env python3
"""Print every elimination attempt at a given n, starting from a chosen k."""

import argparse

from rhocert.elimination import eliminable
from rhocert.primes import build_oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=9)
    ap.add_argument("--k", type=int, default=51, help="first candidate value of rho(n)")
    ap.add_argument("--sieve-limit", type=int, default=10**4)
    args = ap.parse_args()

    oracle = build_oracle(args.sieve_limit)
    print(f"{'k':>5} {'k-4n-1':>7} {'L':>4} {'pi(k)':>6} {'4n-L':>5} {'k-pi(k)':>8}  result")
    k = args.k
    while k > 2 * args.n:
        w = eliminable(args.n, k, oracle)
        verdict = "eliminated" if w.eliminated else "survives"
        print(f"{k:>5} {w.m_plum:>7} {w.L:>4} {w.pi_k:>6} {w.mustard_lhs:>5} {w.mustard_rhs:>8}  {verdict}")
        if not w.eliminated:
            print(f"=> rho({args.n}) <= {k}")
            break
        k -= 1


if __name__ == "__main__":
    main()
