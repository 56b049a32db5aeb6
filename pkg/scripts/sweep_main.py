"""Compare Z_DBC, X and the stabilised Z_DDC over a small grid of rooms.

    python3 scripts/sweep_main.py --max-side 2 --trunc 4 --out results/main.json
"""

import argparse
import itertools
import json
import time
from pathlib import Path

from boxdimer.condense import verify_main


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-side", type=int, default=2)
    ap.add_argument("--trunc", type=int, default=4)
    ap.add_argument("--n-ceiling", type=int, default=8)
    ap.add_argument("--no-dimers", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()

    rows = []
    sides = range(args.max_side + 1)
    for a, b, c in itertools.product(sides, sides, sides):
        t0 = time.perf_counter()
        rep = verify_main(a, b, c, args.trunc, n_ceiling=args.n_ceiling,
                          with_dimers=not args.no_dimers, jobs=args.jobs)
        row = rep.to_json()
        row["seconds"] = round(time.perf_counter() - t0, 3)
        rows.append(row)
        print(f"({a},{b},{c}) pass={rep.passed} n_stable={rep.n_stable} "
              f"zdbc={list(rep.zdbc.coeffs)} {row['seconds']}s", flush=True)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n")
    print(f"{sum(r['pass'] for r in rows)}/{len(rows)} passed")


if __name__ == "__main__":
    main()
