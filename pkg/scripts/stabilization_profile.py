"""Window series of the double-dimer sum as H(n) grows."""

import argparse
import time

from boxdimer.condense import x_series
from boxdimer.doubledimer import zddc_window_details


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("-a", type=int, default=1)
    ap.add_argument("-b", type=int, default=1)
    ap.add_argument("-c", type=int, default=1)
    ap.add_argument("--trunc", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=6)
    args = ap.parse_args()
    p = (args.a, args.b, args.c)
    target = x_series(*p, args.trunc)
    print(f"X{p} = {list(target.coeffs)}")
    for n in range(max(1, *p), args.n_max + 1):
        t0 = time.perf_counter()
        res = zddc_window_details(*p, n, args.trunc)
        dt = time.perf_counter() - t0
        mark = "=" if res.series == target else " "
        print(f"n={n:2d} {mark} {list(res.series.coeffs)}  "
              f"visited={res.stats.nodes_visited} pruned={res.stats.pruned_exponent} "
              f"{dt:.2f}s", flush=True)


if __name__ == "__main__":
    main()
