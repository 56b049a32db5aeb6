"""Push double-box classes to double-dimer configurations and check fibers.

For every configuration hit, the contributions chi of the classes mapping
onto it should add up to 2^(number of loops).
"""

import argparse
from collections import defaultdict

from boxdimer import hexlattice as hx
from boxdimer.doublebox import enumerate_classes
from boxdimer.doubledimer import dbc_to_ddc, frozen_config, window


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("-a", type=int, default=1)
    ap.add_argument("-b", type=int, default=1)
    ap.add_argument("-c", type=int, default=1)
    ap.add_argument("--trunc", type=int, default=3)
    ap.add_argument("--window", type=int, default=None)
    args = ap.parse_args()
    p = (args.a, args.b, args.c)
    n = args.window or max(p) + args.trunc + 2

    g = window(*p, n)
    spec = hx.place_nodes(g, *p)
    base = frozen_config(g, spec).exponent
    fiber = defaultdict(list)
    for cls in enumerate_classes(*p, args.trunc):
        images = {dbc_to_ddc(cls, rep, n) for rep in cls.representatives}
        if len(images) != 1:
            print(f"class of weight {cls.weight} has {len(images)} images")
        for cfg in images:
            if cfg.exponent - base != cls.weight:
                print(f"weight not preserved: {cls.weight} -> {cfg.exponent - base}")
            fiber[cfg].append(cls)

    mismatched = 0
    by_loops = defaultdict(int)
    for cfg, classes in fiber.items():
        total = sum(c.chi for c in classes)
        by_loops[cfg.loops_count] += 1
        if total != 2 ** cfg.loops_count:
            mismatched += 1
            print(f"fiber of excess {cfg.exponent - base}: sum chi={total}, "
                  f"loops={cfg.loops_count}")
    print(f"{p} on H({n}), N={args.trunc}: {len(fiber)} configurations, "
          f"{mismatched} fibers off; loops histogram {dict(sorted(by_loops.items()))}")


if __name__ == "__main__":
    main()
