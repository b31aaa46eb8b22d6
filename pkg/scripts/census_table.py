"""Tabulate first-chamber residue censuses and wall counts over a range of types.

For each ``(d, k)`` the script lists which residues ``r mod d`` carry a
non-empty first-chamber moduli space, alongside the number of candidate
walls of the smallest representative rank in each residue class.

    python scripts/census_table.py --d-max 8 --k-max 4 --csv census.csv
"""

from __future__ import annotations

import argparse
import csv
import sys

from fmcoh.moduli import census_residues
from fmcoh.systems import SystemType, wall_candidates


def rows(d_max: int, k_max: int, periods: int):
    for d in range(1, d_max + 1):
        for k in range(1, k_max + 1):
            r_range = range(k + 1, k + periods * d + 1)
            residues = census_residues(d, k, r_range)
            for res in sorted(residues):
                # smallest rank above k in this class
                r = next(r for r in r_range if r % d == res)
                n_walls = len(wall_candidates(SystemType(r, d, k)).walls)
                yield {"d": d, "k": k, "residue": res, "rep_rank": r, "walls": n_walls, "classes": len(residues)}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-max", type=int, default=6)
    ap.add_argument("--k-max", type=int, default=3)
    ap.add_argument("--periods", type=int, default=20, help="ranks scanned: k+1 .. k+periods*d")
    ap.add_argument("--csv", help="write CSV here instead of stdout")
    args = ap.parse_args()

    fields = ["d", "k", "residue", "rep_rank", "walls", "classes"]
    fh = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else sys.stdout
    try:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for row in rows(args.d_max, args.k_max, args.periods):
            writer.writerow(row)
    finally:
        if args.csv:
            fh.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
