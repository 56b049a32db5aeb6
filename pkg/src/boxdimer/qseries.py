"""Truncated power series in one variable q with exact integer coefficients.

A :class:`QSeries` is known modulo ``q**(trunc_order + 1)``.  All generating
functions in the package (MacMahon, boxed MacMahon, double-box and
double-dimer sums) are carried around as ``QSeries`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class TruncationMismatch(ValueError):
    """Two series with different truncation orders were combined."""


@dataclass(frozen=True)
class QSeries:
    trunc_order: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.trunc_order < 0:
            raise ValueError("trunc_order must be nonnegative")
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.trunc_order + 1:
            raise ValueError(
                f"expected {self.trunc_order + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], trunc_order: int) -> "QSeries":
        """Build a series from a (possibly short or long) coefficient list."""
        cs = list(coeffs)[: trunc_order + 1]
        cs += [0] * (trunc_order + 1 - len(cs))
        return cls(trunc_order, tuple(cs))

    @classmethod
    def zero(cls, trunc_order: int) -> "QSeries":
        return cls(trunc_order, (0,) * (trunc_order + 1))

    @classmethod
    def one(cls, trunc_order: int) -> "QSeries":
        return cls.monomial(0, trunc_order)

    @classmethod
    def monomial(cls, power: int, trunc_order: int, coeff: int = 1) -> "QSeries":
        cs = [0] * (trunc_order + 1)
        if 0 <= power <= trunc_order:
            cs[power] = coeff
        return cls(trunc_order, tuple(cs))

    # -- arithmetic -------------------------------------------------------

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "QSeries | int") -> "QSeries":
        return add(self, _promote(other, self.trunc_order))

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(self.trunc_order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "QSeries | int") -> "QSeries":
        return add(self, -_promote(other, self.trunc_order))

    def __rsub__(self, other: int) -> "QSeries":
        return add(_promote(other, self.trunc_order), -self)

    def __mul__(self, other: "QSeries | int") -> "QSeries":
        if isinstance(other, int):
            return QSeries(self.trunc_order, tuple(other * c for c in self.coeffs))
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return inverse(self) ** (-k)
        result = QSeries.one(self.trunc_order)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return result

    def shift(self, power: int) -> "QSeries":
        """Multiply by ``q**power`` (power >= 0)."""
        if power < 0:
            raise ValueError("negative shifts leave the power series ring")
        return QSeries.from_coeffs([0] * power + list(self.coeffs), self.trunc_order)

    def truncate(self, trunc_order: int) -> "QSeries":
        if trunc_order > self.trunc_order:
            raise ValueError("cannot raise the truncation order of a known series")
        return QSeries(trunc_order, self.coeffs[: trunc_order + 1])

    # -- inspection -------------------------------------------------------

    def first_mismatch(self, other: "QSeries") -> int | None:
        _check_orders(self, other)
        for k, (x, y) in enumerate(zip(self.coeffs, other.coeffs)):
            if x != y:
                return k
        return None

    def value_at_one(self) -> int:
        """Sum of the kept coefficients (the value at q=1 for a polynomial)."""
        return sum(self.coeffs)

    def degree(self) -> int:
        """Largest index with a nonzero coefficient, -1 for the zero series."""
        for k in range(self.trunc_order, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def to_json(self) -> dict:
        return {"trunc_order": self.trunc_order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls(int(data["trunc_order"]), tuple(int(c) for c in data["coeffs"]))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(q^{self.trunc_order + 1})"


def _promote(x: "QSeries | int", trunc_order: int) -> QSeries:
    if isinstance(x, QSeries):
        return x
    return QSeries.monomial(0, trunc_order, int(x))


def _check_orders(f: QSeries, g: QSeries) -> None:
    if f.trunc_order != g.trunc_order:
        raise TruncationMismatch(
            f"truncation orders differ: {f.trunc_order} vs {g.trunc_order}"
        )


def add(f: QSeries, g: QSeries) -> QSeries:
    _check_orders(f, g)
    return QSeries(f.trunc_order, tuple(x + y for x, y in zip(f.coeffs, g.coeffs)))


def mul(f: QSeries, g: QSeries) -> QSeries:
    """Cauchy product, discarding every term past the truncation order."""
    _check_orders(f, g)
    n = f.trunc_order
    out = [0] * (n + 1)
    gc = g.coeffs
    for i, fi in enumerate(f.coeffs):
        if fi == 0:
            continue
        for j in range(n + 1 - i):
            gj = gc[j]
            if gj:
                out[i + j] += fi * gj
    return QSeries(n, tuple(out))


def inverse(f: QSeries) -> QSeries:
    """Multiplicative inverse of a series whose constant term is +1 or -1."""
    f0 = f.coeffs[0]
    if f0 not in (1, -1):
        raise ZeroDivisionError("not invertible in truncated series: constant term "
                                f"{f0} is not a unit")
    n = f.trunc_order
    g = [0] * (n + 1)
    g[0] = f0  # 1/f0 == f0 for a unit
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += f.coeffs[i] * g[k - i]
        g[k] = -f0 * acc
    return QSeries(n, tuple(g))


def _product_of_binomials(exponents: Sequence[int], trunc_order: int) -> QSeries:
    """prod(1 - q**e) for the given exponents, truncated."""
    poly = [0] * (trunc_order + 1)
    poly[0] = 1
    for e in exponents:
        if e > trunc_order:
            continue
        for k in range(trunc_order, e - 1, -1):
            poly[k] -= poly[k - e]
    return QSeries(trunc_order, tuple(poly))


def macmahon(trunc_order: int) -> QSeries:
    """Generating function of plane partitions, prod_{i>=1} (1 - q^i)^(-i)."""
    if trunc_order < 0:
        raise ValueError("trunc_order must be nonnegative")
    exps = [i for i in range(1, trunc_order + 1) for _ in range(i)]
    return inverse(_product_of_binomials(exps, trunc_order))


def macmahon_box(a: int, b: int, c: int, trunc_order: int) -> QSeries:
    """Volume generating function of plane partitions inside an a x b x c box.

    prod_{s<=a, t<=b, r<=c} (1 - q^(s+t+r-1)) / (1 - q^(s+t+r-2)), expanded as
    numerator times the inverse of the denominator inside the truncated ring.
    """
    if min(a, b, c) < 0:
        raise ValueError("box sides must be nonnegative")
    num, den = [], []
    for s in range(1, a + 1):
        for t in range(1, b + 1):
            for r in range(1, c + 1):
                num.append(s + t + r - 1)
                den.append(s + t + r - 2)
    return mul(_product_of_binomials(num, trunc_order),
               inverse(_product_of_binomials(den, trunc_order)))
