from fractions import Fraction

import pytest

from kneserlab import (TorusInterval, find_shift_n, golden_rotation,
                       interval_disjoint, interval_sum, interval_translate,
                       sqrt_rotation)
from kneserlab.errors import PreconditionError


def test_interval_basics():
    iv = TorusInterval(Fraction(1, 10), Fraction(3, 10))
    assert iv.length() == Fraction(1, 5)
    assert iv.contains(Fraction(1, 5))
    assert iv.contains(Fraction(1, 10)) and iv.contains(Fraction(3, 10))
    assert not iv.contains(Fraction(1, 2))
    w = TorusInterval(Fraction(9, 10), Fraction(1, 10))
    assert w.wraps and w.length() == Fraction(1, 5)
    assert w.contains(0) and w.contains(Fraction(19, 20))
    assert not w.contains(Fraction(1, 2))


def test_interval_sum():
    a = TorusInterval(0, Fraction(1, 5))
    b = TorusInterval(0, Fraction(1, 10))
    s = interval_sum(a, b)
    assert s.lo == 0 and s.hi == Fraction(3, 10)
    big = interval_sum(TorusInterval(0, Fraction(3, 5)), TorusInterval(0, Fraction(1, 2)))
    assert big.full


def test_translate_quadratic_endpoints():
    g = golden_rotation()
    iv = TorusInterval(0, Fraction(1, 4))
    t = interval_translate(iv, g, 1)
    assert abs(float(t.lo) - 0.6180339887) < 1e-9
    assert t.contains(g)  # alpha itself is the left endpoint
    assert not t.contains(Fraction(1, 2))


def test_disjointness():
    assert interval_disjoint(TorusInterval(0, Fraction(3, 10)),
                             TorusInterval(Fraction(2, 5), Fraction(3, 5)))
    # touching endpoints are NOT disjoint for closed arcs
    assert not interval_disjoint(TorusInterval(0, Fraction(1, 2)),
                                 TorusInterval(Fraction(1, 2), Fraction(3, 5)))
    # wrap-around touching at 0
    assert not interval_disjoint(TorusInterval(Fraction(9, 10), Fraction(0, 1)),
                                 TorusInterval(0, Fraction(1, 10)))


def test_find_shift_golden():
    g = golden_rotation()
    iv = TorusInterval(0, Fraction(1, 5))
    n = find_shift_n(g, iv, 50)
    assert n == 1  # {alpha} ~ 0.618 clears [0, 2/5] with room for the arc
    assert interval_disjoint(interval_sum(iv, iv), interval_translate(iv, g, n))


def test_find_shift_sqrt2():
    a = sqrt_rotation(2)
    iv = TorusInterval(0, Fraction(1, 5))
    n = find_shift_n(a, iv, 100)
    # {sqrt(2)-1} ~ 0.4142 > 2/5 exactly (2 > 1.96), and 0.6142 < 1
    assert n == 1
    assert interval_disjoint(interval_sum(iv, iv), interval_translate(iv, a, n))


def test_find_shift_precondition():
    g = golden_rotation()
    with pytest.raises(PreconditionError):
        find_shift_n(g, TorusInterval(0, Fraction(17, 50)), 10)  # 0.34 >= 1/3
