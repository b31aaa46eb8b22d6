"""Run the verification suites and write one JSON record per suite.

    python scripts/run_verification.py --out results/verification.jsonl
    python scripts/run_verification.py --suite walls_dualpath --grid 6,8,4,3,4
"""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path

from fmcoh.oracle import SUITES, GridSpec, run_suite

log = logging.getLogger("verification")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", action="append", choices=sorted(SUITES), help="repeatable; default all")
    ap.add_argument("--grid", type=GridSpec.parse, help="r_max,d_max,k_max,a_max,entry_max (overrides defaults)")
    ap.add_argument("--out", type=Path, help="JSON Lines output file")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    records = []
    for name in args.suite or list(SUITES):
        rep = run_suite(name, args.grid)
        log.info(rep.summary())
        records.append(rep.to_record())
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
        log.info("wrote %d records to %s", len(records), args.out)
    return 0 if all(r["passed"] for r in records) else 1


if __name__ == "__main__":
    raise SystemExit(main())
