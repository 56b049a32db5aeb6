"""Condensation recurrences for X(a,b,c) = M(q)^2 M_{a,b,c}(q) and the
three-way check of Z_DBC = M(q)^2 M_{a,b,c} = Z_DDC.

The quadratic recurrence is checked in two placements of the ``q^height``
prefactor:

* ``prefactor="second"``:  X(p) X(p+s+t) = X(p+s) X(p+t) + q^h X(p+s+t-h) X(p+h)
* ``prefactor="first"``:   X(p) X(p+s+t) = q^h X(p+s) X(p+t) + X(p+s+t-h) X(p+h)

where ``h`` is the height axis, ``s`` and ``t`` the other two axes, and the
exponent is the height coordinate of ``p``.  Only the second placement is
the one usually written down; the first is the one that holds identically
(at q = 1 both reduce to the same count identity).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .doublebox import zdbc
from .doubledimer import StabilizationError, zddc
from .qseries import QSeries, macmahon, macmahon_box, mul

Params = tuple[int, int, int]


@dataclass
class RecurrenceReport:
    params: Params
    trunc_order: int
    lhs: QSeries
    rhs: QSeries
    axis: int = 2
    prefactor: str = "second"
    passed: bool = field(init=False)
    first_mismatch: int | None = field(init=False)

    def __post_init__(self) -> None:
        self.first_mismatch = self.lhs.first_mismatch(self.rhs)
        self.passed = self.first_mismatch is None

    def to_json(self) -> dict:
        return {"params": list(self.params), "trunc_order": self.trunc_order,
                "axis": self.axis, "prefactor": self.prefactor,
                "pass": self.passed, "first_mismatch": self.first_mismatch,
                "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}


def x_series(a: int, b: int, c: int, trunc_order: int) -> QSeries:
    m = macmahon(trunc_order)
    return mul(mul(m, m), macmahon_box(a, b, c, trunc_order))


def _shift(p: Params, axis: int, d: int) -> Params:
    out = list(p)
    out[axis] += d
    return tuple(out)


def _check(f: Callable[[int, int, int, int], QSeries], a: int, b: int, c: int,
           trunc_order: int, axis: int, prefactor: str) -> RecurrenceReport:
    if prefactor not in ("first", "second"):
        raise ValueError(f"prefactor must be 'first' or 'second', got {prefactor!r}")
    p = (a, b, c)
    h = axis
    s, t = [k for k in range(3) if k != h]
    height = p[h]
    if height < 1 or min(p) < 0:
        raise ValueError("the height coordinate must be >= 1 and the rest >= 0")
    N = trunc_order

    def F(q: Params) -> QSeries:
        return f(*q, N)

    pst = _shift(_shift(p, s, 1), t, 1)
    lhs = F(p) * F(pst)
    straight = F(_shift(p, s, 1)) * F(_shift(p, t, 1))
    crossed = F(_shift(pst, h, -1)) * F(_shift(p, h, 1))
    if prefactor == "second":
        rhs = straight + crossed.shift(height)
    else:
        rhs = straight.shift(height) + crossed
    return RecurrenceReport(p, N, lhs, rhs, axis, prefactor)


def check_x_recurrence(a: int, b: int, c: int, trunc_order: int, axis: int = 2,
                       prefactor: str = "second") -> RecurrenceReport:
    return _check(x_series, a, b, c, trunc_order, axis, prefactor)


def check_m_recurrence(a: int, b: int, c: int, trunc_order: int, axis: int = 2,
                       prefactor: str = "second") -> RecurrenceReport:
    return _check(macmahon_box, a, b, c, trunc_order, axis, prefactor)


def recurrence_grid(max_side: int = 4, max_height: int = 4, trunc_order: int = 20,
                    prefactor: str = "second") -> list[tuple[RecurrenceReport,
                                                             RecurrenceReport]]:
    """Both recurrences on 0 <= s,t <= max_side, 1 <= h <= max_height, all axes."""
    out = []
    for axis in range(3):
        for x in range(max_side + 1):
            for y in range(max_side + 1):
                for h in range(1, max_height + 1):
                    p = [x, y]
                    p.insert(axis, h)
                    out.append((check_m_recurrence(*p, trunc_order, axis, prefactor),
                                check_x_recurrence(*p, trunc_order, axis, prefactor)))
    return out


def initial_conditions(max_side: int, trunc_order: int) -> list[tuple[Params, bool]]:
    """Any zero side leaves X = M(q)^2."""
    m = macmahon(trunc_order)
    target = mul(m, m)
    out = []
    for a in range(max_side + 1):
        for b in range(max_side + 1):
            for p in ((a, b, 0), (a, 0, b), (0, a, b)):
                out.append((p, x_series(*p, trunc_order) == target))
    return out


@dataclass
class MainReport:
    params: Params
    trunc_order: int
    zdbc: QSeries
    x: QSeries
    zddc: QSeries | None
    n_stable: int | None
    error: str | None = None

    @property
    def mismatches(self) -> dict[str, int | None]:
        out = {"zdbc_vs_x": self.zdbc.first_mismatch(self.x)}
        if self.zddc is not None:
            out["zddc_vs_x"] = self.zddc.first_mismatch(self.x)
            out["zdbc_vs_zddc"] = self.zdbc.first_mismatch(self.zddc)
        return out

    @property
    def passed(self) -> bool:
        return self.error is None and all(v is None for v in self.mismatches.values())

    def to_json(self) -> dict:
        return {"params": list(self.params), "trunc_order": self.trunc_order,
                "pass": self.passed, "mismatches": self.mismatches,
                "n_stable": self.n_stable, "error": self.error,
                "zdbc": self.zdbc.to_json(), "x": self.x.to_json(),
                "zddc": None if self.zddc is None else self.zddc.to_json()}


def verify_main(a: int, b: int, c: int, trunc_order: int, n_ceiling: int = 8,
                with_dimers: bool = True, jobs: int = 1) -> MainReport:
    """Compare the double-box sum, the product formula and the dimer limit."""
    lhs = zdbc(a, b, c, trunc_order, jobs=jobs)
    rhs = x_series(a, b, c, trunc_order)
    if not with_dimers:
        return MainReport((a, b, c), trunc_order, lhs, rhs, None, None)
    try:
        st = zddc(a, b, c, trunc_order, n_ceiling=n_ceiling)
    except StabilizationError as exc:
        return MainReport((a, b, c), trunc_order, lhs, rhs, None, None, str(exc))
    return MainReport((a, b, c), trunc_order, lhs, rhs, st.series, st.n_stable)
