#!/usr/bin/env python3
"""Latency microbenchmark over the planning grid.

Times challenge generation, tag encryption, decryption, and verification
at every grid point the coefficient cap admits, then writes per-operation
timing rows as CSV on stdout (or --out).  Medians are the headline number;
min and mean ride along for dispersion checks.

The full grid at the default field size takes a couple of minutes at 30
repetitions.  Trim --ells or --multipliers for a quick look.
"""

import argparse
import csv
import sys

from secrid.bench import MIN_REPS, default_grid, run_grid, write_csv


def parse_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=59049, help="field size (default 59049)")
    parser.add_argument(
        "--kappa", type=float, default=0.2, help="observer fraction (default 0.2)"
    )
    parser.add_argument(
        "--reps",
        type=int,
        default=MIN_REPS,
        help=f"repetitions per operation, >= {MIN_REPS} (default {MIN_REPS})",
    )
    parser.add_argument(
        "--ells",
        type=parse_ints,
        default=[2, 3, 4, 5, 6],
        help="comma-separated variable counts (default 2,3,4,5,6)",
    )
    parser.add_argument(
        "--multipliers",
        type=parse_ints,
        default=[10, 20, 30, 40, 50],
        help="comma-separated k/ell multipliers (default 10,20,30,40,50)",
    )
    parser.add_argument(
        "--max-coeffs",
        type=int,
        default=600_000,
        help="skip grid points with more polynomial coefficients (default 600000)",
    )
    parser.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    parser.add_argument("--out", help="write CSV here instead of stdout")
    parser.add_argument(
        "--list-grid",
        action="store_true",
        help="print the surviving (ell, k) grid points and exit",
    )
    args = parser.parse_args(argv)

    if args.list_grid:
        grid = default_grid(args.q, args.ells, args.multipliers, args.max_coeffs)
        writer = csv.writer(sys.stdout)
        writer.writerow(["ell", "k"])
        writer.writerows(grid)
        return 0

    records = run_grid(
        q=args.q,
        kappa=args.kappa,
        reps=args.reps,
        max_coeffs=args.max_coeffs,
        seed=args.seed,
        ells=args.ells,
        k_multipliers=args.multipliers,
    )
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
