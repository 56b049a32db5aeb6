"""Which product carries q^height in the condensation recurrence?

Runs the grid with the prefactor on either product and prints how many
points hold, plus the first few failures of each.
"""

import argparse
from collections import Counter

from boxdimer.condense import recurrence_grid


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", type=int, default=4)
    ap.add_argument("--trunc", type=int, default=20)
    ap.add_argument("--show", type=int, default=5)
    args = ap.parse_args()

    for prefactor in ("second", "first"):
        res = recurrence_grid(args.grid, args.grid, args.trunc, prefactor)
        ok = [m for m, x in res if m.passed and x.passed]
        bad = [m for m, x in res if not (m.passed and x.passed)]
        print(f"q^h on the {prefactor} product: {len(ok)}/{len(res)} hold")
        # where the printed form survives, compare height with the other sides
        shape = Counter()
        for m in ok:
            h = m.params[m.axis]
            rest = sum(m.params) - h
            shape["h == rest+1" if h == rest + 1 else "other"] += 1
        print("   holding points by shape:", dict(shape))
        for m in bad[:args.show]:
            print(f"   fails at {m.params} axis={m.axis} first mismatch q^{m.first_mismatch}")


if __name__ == "__main__":
    main()
