from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from boxdimer.planepart import enumerate_boxed, enumerate_by_volume, volume_counts
from boxdimer.qseries import (QSeries, TruncationMismatch, inverse, macmahon,
                              macmahon_box, mul)
from . import strategies


@given(strategies.series_, strategies.series_)
def test_add_commutes(f, g):
    assert f + g == g + f


@given(strategies.series_, strategies.series_)
def test_mul_commutes(f, g):
    assert f * g == g * f


@given(strategies.series_, strategies.series_, strategies.series_)
def test_mul_associates(f, g, h):
    assert (f * g) * h == f * (g * h)


@given(strategies.series_, strategies.series_, strategies.series_)
def test_distributes(f, g, h):
    assert f * (g + h) == f * g + f * h


@given(strategies.series_)
def test_additive_inverse(f):
    assert f - f == QSeries.zero(f.trunc_order)
    assert -(-f) == f


@given(strategies.series_)
def test_one_is_neutral(f):
    assert f * QSeries.one(f.trunc_order) == f
    assert f * 1 == f


@given(strategies.unit_series)
def test_inverse(f):
    assert mul(f, inverse(f)) == QSeries.one(f.trunc_order)
    assert f ** -1 == inverse(f)


@given(strategies.series_, st.integers(0, 4))
def test_pow_matches_repeated_product(f, k):
    expected = QSeries.one(f.trunc_order)
    for _ in range(k):
        expected = expected * f
    assert f ** k == expected


@given(strategies.series_, st.integers(0, 10))
def test_shift_is_monomial_product(f, k):
    assert f.shift(k) == f * QSeries.monomial(k, f.trunc_order)


@given(strategies.series_)
def test_json_round_trip(f):
    assert QSeries.from_json(f.to_json()) == f


def test_noninvertible():
    with pytest.raises(ZeroDivisionError):
        inverse(QSeries(3, (2, 1, 0, 0)))


def test_mixed_truncation_rejected():
    with pytest.raises(TruncationMismatch):
        QSeries.one(3) + QSeries.one(4)


def test_big_coefficients_are_exact():
    # coefficients well past 2**64
    f = macmahon(200)
    assert f[200] > 2 ** 64
    assert (f * inverse(f)) == QSeries.one(200)


def test_str():
    assert str(QSeries(3, (1, 2, 0, -1))) == "1 + 2q - q^3 + O(q^4)"


@pytest.mark.parametrize("N", [0, 1, 5, 8])
def test_macmahon_matches_enumeration(N):
    counts = volume_counts(enumerate_by_volume(N), N)
    assert list(macmahon(N).coeffs) == counts


def _boxed_count(a, b, c):
    # MacMahon's count at q = 1
    r = Fraction(1)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                r *= Fraction(i + j + k - 1, i + j + k - 2)
    return r


@given(strategies.box_sides)
def test_box_value_at_one(sides):
    a, b, c = sides
    assert macmahon_box(a, b, c, a * b * c).value_at_one() == _boxed_count(a, b, c)


@given(strategies.box_sides)
def test_box_symmetric(sides):
    a, b, c = sides
    N = 6
    s = macmahon_box(a, b, c, N)
    assert s == macmahon_box(b, c, a, N) == macmahon_box(c, b, a, N)


@pytest.mark.parametrize("a,b,c", [(1, 1, 1), (1, 2, 2), (2, 2, 2), (1, 3, 2)])
def test_box_matches_enumeration(a, b, c):
    N = a * b * c
    assert list(macmahon_box(a, b, c, N).coeffs) == \
        volume_counts(enumerate_boxed(a, b, c), N)


def test_box_degenerate():
    assert macmahon_box(3, 2, 0, 5) == QSeries.one(5)
    assert macmahon_box(1, 1, 1, 3).coeffs == (1, 1, 0, 0)


def test_box_tends_to_macmahon():
    N = 6
    assert macmahon_box(N + 1, N + 1, N + 1, N) == macmahon(N)
