#!/usr/bin/env python3
"""Sweep the minimum ciphertext length over observer strength.

For each (q, kappa, epsilon) combination, print the smallest ciphertext
length whose simplified leakage bound stays at or below epsilon, together
with the real-valued bound before the ceiling.  Output is CSV on stdout
(or --out).  The length diverges as kappa approaches 1, which is visible
directly in the sweep.
"""

import argparse
import csv
import sys

from secrid.wiretap import min_cipher_length


def parse_floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part]


def parse_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--qs",
        type=parse_ints,
        default=[7, 256, 59049],
        help="comma-separated field sizes (default 7,256,59049)",
    )
    parser.add_argument(
        "--kappas",
        type=parse_floats,
        default=[i / 20 for i in range(20)],
        help="comma-separated observer fractions in [0,1) (default 0,0.05,...,0.95)",
    )
    parser.add_argument(
        "--epsilons",
        type=parse_floats,
        default=[1e-2, 1e-3, 1e-5],
        help="comma-separated leakage budgets (default 1e-2,1e-3,1e-5)",
    )
    parser.add_argument("--out", help="write CSV here instead of stdout")
    args = parser.parse_args(argv)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(["q", "kappa", "epsilon", "ell_prime", "real_bound"])
        for q in args.qs:
            for kappa in args.kappas:
                for epsilon in args.epsilons:
                    result = min_cipher_length(q, kappa, epsilon)
                    writer.writerow(
                        [q, kappa, epsilon, result.ell_prime, result.real_bound]
                    )
    finally:
        if args.out:
            fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
