"""Command-line entry point: ``boxdimer {series,verify,render,dump}``.

Exit codes: 0 pass, 1 verified mismatch, 2 usage or schema error,
3 resource ceiling (window series did not stabilise).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import condense, doublebox, doubledimer, hexlattice, planepart, render
from .cache import SeriesCache, dumps
from .qseries import QSeries, macmahon, macmahon_box

EXIT_PASS, EXIT_MISMATCH, EXIT_USAGE, EXIT_CEILING = 0, 1, 2, 3

log = logging.getLogger("boxdimer")


@dataclass
class RunConfig:
    command: str
    target: str
    a: int = 0
    b: int = 0
    c: int = 0
    trunc: int = 4
    window: int | None = None
    n_ceiling: int = 8
    fmt: str = "json"
    cache_dir: str | None = None
    use_cache: bool = True
    jobs: int = 1
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "trunc", "n_ceiling"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.window is not None and self.window < 1:
            raise ValueError("window must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


class UsageError(Exception):
    pass


# -- output -------------------------------------------------------------------

def format_series(s: QSeries, fmt: str, meta: dict | None = None) -> str:
    if fmt == "csv":
        return "".join(f"{k},{c}\n" for k, c in enumerate(s.coeffs))
    if fmt == "table":
        width = max(len(str(c)) for c in s.coeffs)
        rows = [f"{'k':>3}  {'coeff':>{width}}"]
        rows += [f"{k:>3}  {c:>{width}}" for k, c in enumerate(s.coeffs)]
        return "\n".join(rows) + "\n"
    payload = dict(meta or {})
    payload["series"] = s.to_json()
    return dumps(payload)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- series -------------------------------------------------------------------

def compute_series(cfg: RunConfig, cache: SeriesCache) -> tuple[QSeries, dict]:
    kind, N = cfg.target, cfg.trunc
    params: tuple = () if kind == "macmahon" else cfg.params
    key_kind = kind
    if kind == "zddc" and cfg.window is not None:
        key_kind, params = "zddc-window", params + (cfg.window,)
    meta = {"kind": kind, "params": list(params), "trunc_order": N}
    hit = cache.get(key_kind, params, N)
    if hit is not None:
        meta.update(hit.get("meta", {}))
        return QSeries.from_json(hit["series"]), meta
    extra: dict = {}
    if kind == "macmahon":
        s = macmahon(N)
    elif kind == "box":
        s = macmahon_box(*cfg.params, N)
    elif kind == "x":
        s = condense.x_series(*cfg.params, N)
    elif kind == "zdbc":
        s = doublebox.zdbc(*cfg.params, N, jobs=cfg.jobs)
    elif kind == "zddc":
        if cfg.window is not None:
            s = doubledimer.zddc_window(*cfg.params, cfg.window, N)
        else:
            st = doubledimer.zddc(*cfg.params, N, n_ceiling=cfg.n_ceiling)
            s = st.series
            extra["n_stable"] = st.n_stable
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown series kind {kind}")
    meta.update(extra)
    cache.put(key_kind, params, N, {"series": s.to_json(), "meta": extra})
    return s, meta


def cmd_series(cfg: RunConfig, cache: SeriesCache) -> int:
    try:
        s, meta = compute_series(cfg, cache)
    except doubledimer.StabilizationError as exc:
        partial = {"kind": cfg.target, "params": list(cfg.params),
                   "trunc_order": cfg.trunc, "error": str(exc),
                   "windows": {str(n): w.to_json() for n, w in sorted(exc.windows.items())}}
        _emit(dumps(partial), cfg.out)
        return EXIT_CEILING
    _emit(format_series(s, cfg.fmt, meta), cfg.out)
    return EXIT_PASS


# -- verify -------------------------------------------------------------------

def _verify_main(cfg: RunConfig) -> tuple[int, dict]:
    rep = condense.verify_main(*cfg.params, cfg.trunc, n_ceiling=cfg.n_ceiling,
                               with_dimers=not cfg.extra.get("no_dimers", False),
                               jobs=cfg.jobs)
    if rep.error is not None:
        return EXIT_CEILING, rep.to_json()
    return (EXIT_PASS if rep.passed else EXIT_MISMATCH), rep.to_json()


def _verify_recurrence(cfg: RunConfig) -> tuple[int, dict]:
    grid = cfg.extra.get("grid", 4)
    prefactor = cfg.extra.get("prefactor", "second")
    results = condense.recurrence_grid(grid, grid, cfg.trunc, prefactor)
    failures = []
    for m_rep, x_rep in results:
        if not (m_rep.passed and x_rep.passed):
            failures.append({"params": list(m_rep.params), "axis": m_rep.axis,
                             "m_first_mismatch": m_rep.first_mismatch,
                             "x_first_mismatch": x_rep.first_mismatch})
    report = {"grid": grid, "trunc_order": cfg.trunc, "prefactor": prefactor,
              "points": len(results), "passed": len(results) - len(failures),
              "pass": not failures, "failures": failures}
    return (EXIT_PASS if not failures else EXIT_MISMATCH), report


def _verify_bijection(cfg: RunConfig) -> tuple[int, dict]:
    n = cfg.window or 2
    g = hexlattice.build(n)
    base = g.matching_exponent(hexlattice.minimal_matching(g))
    bad = []
    total = 0
    for pp in planepart.enumerate_boxed(n, n, n):
        total += 1
        m = planepart.to_matching(pp, n)
        back = planepart.from_matching(m, n)
        if back != pp or g.matching_exponent(m) - base != pp.volume:
            bad.append(pp.to_json())
    report = {"n": n, "partitions": total, "pass": not bad, "failures": bad}
    return (EXIT_PASS if not bad else EXIT_MISMATCH), report


def _verify_stabilization(cfg: RunConfig) -> tuple[int, dict]:
    try:
        st = doubledimer.zddc(*cfg.params, cfg.trunc, n_ceiling=cfg.n_ceiling)
    except doubledimer.StabilizationError as exc:
        return EXIT_CEILING, {"params": list(cfg.params), "pass": False,
                              "error": str(exc),
                              "windows": {str(n): w.to_json()
                                          for n, w in sorted(exc.windows.items())}}
    x = condense.x_series(*cfg.params, cfg.trunc)
    mismatch = st.series.first_mismatch(x)
    report = {"params": list(cfg.params), "trunc_order": cfg.trunc,
              "n_stable": st.n_stable, "pass": mismatch is None,
              "first_mismatch_vs_x": mismatch,
              "windows": {str(n): w.to_json() for n, w in sorted(st.windows.items())}}
    return (EXIT_PASS if mismatch is None else EXIT_MISMATCH), report


_VERIFY = {"main": _verify_main, "recurrence": _verify_recurrence,
           "bijection": _verify_bijection, "stabilization": _verify_stabilization}


def cmd_verify(cfg: RunConfig) -> int:
    code, report = _VERIFY[cfg.target](cfg)
    _emit(dumps(report), cfg.out)
    if code == EXIT_MISMATCH:
        print(f"verify {cfg.target}: MISMATCH", file=sys.stderr)
    return code


# -- render / dump ------------------------------------------------------------

def cmd_render(cfg: RunConfig) -> int:
    src = cfg.extra["input"]
    text = sys.stdin.read() if src == "-" else Path(src).read_text()
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise UsageError(f"{src}: not JSON ({exc})") from exc
    try:
        if cfg.target == "pp":
            if not isinstance(data, dict) or "boxes" not in data:
                raise render.SchemaError("$.boxes", "missing")
            svg = render.svg_plane_partition(data, cfg.window)
        elif cfg.target == "dbc":
            svg = render.svg_double_box(data)
        else:
            svg = render.svg_double_dimer(data)
    except render.SchemaError as exc:
        raise UsageError(f"schema violation at {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"schema violation: {exc}") from exc
    _emit(svg, cfg.out)
    return EXIT_PASS


def cmd_dump(cfg: RunConfig) -> int:
    if cfg.target == "classes":
        data = [cls.to_json() for cls in
                doublebox.enumerate_classes(*cfg.params, cfg.trunc, jobs=cfg.jobs)]
    elif cfg.target == "ddc-min":
        n = cfg.window or max(1, *cfg.params)
        try:
            frozen, spec = doubledimer.minimal_config(*cfg.params, n)
        except (doubledimer.WindowTooSmall, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        data = frozen.to_json(spec, frozen.exponent)
    else:  # graph
        n = cfg.window or max(1, *cfg.params)
        try:
            g = doubledimer.window(*cfg.params, n)
        except doubledimer.WindowTooSmall as exc:
            raise UsageError(str(exc)) from exc
        data = g.to_json()
        data["nodes"] = hexlattice.place_nodes(g, *cfg.params).to_json()
    _emit(dumps(data), cfg.out)
    return EXIT_PASS


# -- argument parsing -----------------------------------------------------------

def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common(p: argparse.ArgumentParser, abc: bool = True) -> None:
    if abc:
        p.add_argument("-a", type=_nonneg, default=0)
        p.add_argument("-b", type=_nonneg, default=0)
        p.add_argument("-c", type=_nonneg, default=0)
    p.add_argument("--trunc", type=_nonneg, default=4, help="truncation order N")
    p.add_argument("--window", type=_positive, default=None, help="hexagon size n")
    p.add_argument("--n-ceiling", type=_positive, default=8)
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "table"),
                   default="json")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxdimer",
        description="Double-box and tripartite double-dimer generating functions.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="compute a truncated series")
    p.add_argument("target", choices=("macmahon", "box", "zdbc", "zddc", "x"))
    _common(p)

    p = sub.add_parser("verify", help="run a check; exit 0 iff it passes")
    p.add_argument("target", choices=tuple(_VERIFY))
    _common(p)
    p.add_argument("--grid", type=_nonneg, default=4,
                   help="recurrence grid: sides 0..G, height 1..G")
    p.add_argument("--prefactor", choices=("second", "first"), default="second",
                   help="which product carries q^height in the recurrence")
    p.add_argument("--no-dimers", action="store_true",
                   help="main: skip the double-dimer side")

    p = sub.add_parser("render", help="SVG from a JSON dump")
    p.add_argument("target", choices=("pp", "dbc", "ddc"))
    p.add_argument("input", help="JSON file, or - for stdin")
    _common(p, abc=False)

    p = sub.add_parser("dump", help="JSON dumps for rendering and golden files")
    p.add_argument("target", choices=("classes", "ddc-min", "graph"))
    _common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    extra = {}
    for name in ("grid", "prefactor", "no_dimers", "input"):
        if hasattr(ns, name):
            extra[name] = getattr(ns, name)
    return RunConfig(ns.command, ns.target, getattr(ns, "a", 0), getattr(ns, "b", 0),
                     getattr(ns, "c", 0), ns.trunc, ns.window, ns.n_ceiling, ns.fmt,
                     ns.cache_dir, not ns.no_cache, ns.jobs, ns.out, extra)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(ns)
        cache = SeriesCache(cfg.cache_dir, enabled=cfg.use_cache)
        if cfg.command == "series":
            return cmd_series(cfg, cache)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        if cfg.command == "render":
            return cmd_render(cfg)
        return cmd_dump(cfg)
    except (UsageError, ValueError) as exc:
        print(f"boxdimer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
