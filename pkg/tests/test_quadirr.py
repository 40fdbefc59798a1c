import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneserlab import QuadIrr, golden_rotation, sqrt_rotation
from kneserlab.quadirr import (floor_linear_quad, floor_sqrt_int64,
                               linear_quad_bound_ok, sign_a_plus_b_sqrt)


def test_canonical_form():
    x = QuadIrr(2, 4, -6, 5)
    assert (x.p, x.q, x.r) == (-1, -2, 3)
    with pytest.raises(ValueError):
        QuadIrr(0, 1, 1, 12)  # 12 = 4*3 not squarefree
    with pytest.raises(ZeroDivisionError):
        QuadIrr(1, 1, 0, 5)


def test_golden_value():
    g = golden_rotation()
    assert abs(float(g) - 0.6180339887498949) < 1e-15
    assert not g.is_rational
    # golden satisfies x^2 + x - 1 = 0
    sq = g * g
    assert sq + g - 1 == 0


def test_sign_exactness():
    # 35*sqrt(5) vs 78: 6125 > 6084, so positive
    assert sign_a_plus_b_sqrt(-78, 35, 5) == 1
    assert sign_a_plus_b_sqrt(78, -35, 5) == -1
    assert sign_a_plus_b_sqrt(0, 0, 5) == 0


def test_floor_and_frac():
    g = golden_rotation()
    assert (g * 7).floor() == 4
    assert (g * -1).floor() == -1
    f = (g * 7).frac()
    assert 0 <= float(f) < 1
    assert (g * 7) - 4 == f


@given(st.integers(-10**6, 10**6), st.integers(1, 60))
@settings(max_examples=200, deadline=None)
def test_floor_matches_math(n, scale):
    # floor(n * sqrt(2) / scale) against 200-digit integer arithmetic
    x = QuadIrr(0, n, scale, 2)
    B = 10 ** 50
    s = math.isqrt(2 * B * B)
    expected = (n * s) // (scale * B) if n >= 0 else -((-n * s + scale * B - 1) // (scale * B))
    # guard: the scaled value may sit between the two candidates; recompute
    # honestly with exact comparison
    fl = x.floor()
    assert fl <= float(x) < fl + 1 or True  # floats only sanity-guide
    assert x - fl >= 0
    assert x - fl - 1 < 0
    assert fl == expected


def test_comparisons_mixed():
    g = golden_rotation()
    assert g < 1
    assert g > Fraction(1, 2)
    assert g * 2 - 1 == sqrt_rotation(5)  # both equal sqrt(5) - 2
    assert QuadIrr.from_fraction(Fraction(3, 7), 5) + Fraction(4, 7) == 1
    with pytest.raises(ValueError):
        _ = golden_rotation() + sqrt_rotation(2)


def test_isqrt_array_exact():
    rng = np.random.default_rng(0)
    x = rng.integers(0, 1 << 61, size=2000, dtype=np.int64)
    s = floor_sqrt_int64(x)
    assert np.all(s.astype(object) ** 2 <= x.astype(object))
    assert np.all((s.astype(object) + 1) ** 2 > x.astype(object))


def test_floor_linear_quad_matches_scalar():
    g = golden_rotation()
    u = np.arange(-5000, 5000, dtype=np.int64)
    off = Fraction(3, 10)
    assert linear_quad_bound_ok(5000, g.p, g.q, g.r, g.d, off.numerator, off.denominator)
    ks = floor_linear_quad(u, g.p, g.q, g.r, g.d, off.numerator, off.denominator)
    for idx in range(0, u.size, 997):
        n = int(u[idx])
        assert ks[idx] == (g * n - off).floor()
