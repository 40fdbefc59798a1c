"""Exact arithmetic in real quadratic fields.

A value is represented as (p + q*sqrt(d)) / r with integer p, q, r and a
squarefree radicand d > 1.  Every comparison reduces to the sign of an
integer expression a + b*sqrt(d), which is decided with integer squares
only, so membership tests built on top of this module are exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = ["QuadIrr", "golden_rotation", "sqrt_rotation", "sign_a_plus_b_sqrt", "floor_sqrt_int64"]


def _is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def sign_a_plus_b_sqrt(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) using integer arithmetic only."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # Opposite signs: compare a^2 with b^2 d; sqrt(d) irrational so no tie
    # unless both squares are equal, which would force a = b = 0.
    lhs, rhs = a * a, b * b * d
    if a > 0:  # b < 0
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


def _floor_sqrt_signed(b: int, d: int) -> int:
    """floor(b * sqrt(d)) for integer b (any sign), squarefree d > 1."""
    if b == 0:
        return 0
    s = math.isqrt(b * b * d)
    # b*sqrt(d) is irrational here, so s < |b|sqrt(d) < s+1 strictly.
    return s if b > 0 else -s - 1


class QuadIrr:
    """(p + q*sqrt(d)) / r in canonical form: r > 0, gcd(p, q, r) = 1.

    q may be zero, in which case the value is rational and d is kept
    only as a tag (comparisons with other radicands then still work).
    """

    __slots__ = ("p", "q", "r", "d")

    def __init__(self, p: int, q: int, r: int, d: int):
        if r == 0:
            raise ZeroDivisionError("denominator r must be nonzero")
        if q != 0:
            if d <= 1 or not _is_squarefree(d):
                raise ValueError(f"radicand must be squarefree and > 1, got {d}")
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(abs(p), abs(q)), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        self.p, self.q, self.r, self.d = p, q, r, (d if q != 0 else d)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_fraction(cls, x, d: int = 5) -> "QuadIrr":
        x = Fraction(x)
        return cls(x.numerator, 0, x.denominator, d)

    @classmethod
    def sqrt(cls, d: int) -> "QuadIrr":
        return cls(0, 1, 1, d)

    # -- predicates ---------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q != 0:
            raise ValueError("value is irrational")
        return Fraction(self.p, self.r)

    def _coerce(self, other) -> "QuadIrr":
        if isinstance(other, QuadIrr):
            if self.q != 0 and other.q != 0 and self.d != other.d:
                raise ValueError("mixed radicands are not supported")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadIrr.from_fraction(other, self.d)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.d if self.q != 0 else o.d
        return QuadIrr(self.p * o.r + o.p * self.r, self.q * o.r + o.q * self.r, self.r * o.r, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadIrr(-self.p, -self.q, self.r, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuadIrr):
            if other.q == 0:
                other = Fraction(other.p, other.r)
            elif self.q == 0:
                return other * Fraction(self.p, self.r)
            else:
                if self.d != other.d:
                    raise ValueError("mixed radicands are not supported")
                return QuadIrr(
                    self.p * other.p + self.q * other.q * self.d,
                    self.p * other.q + self.q * other.p,
                    self.r * other.r,
                    self.d,
                )
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return QuadIrr(self.p * other.numerator, self.q * other.numerator,
                           self.r * other.denominator, self.d)
        return NotImplemented

    __rmul__ = __mul__

    # -- comparisons --------------------------------------------------

    def _diff_sign(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadIrr with {type(other)!r}")
        a = self.p * o.r - o.p * self.r
        b = self.q * o.r - o.q * self.r
        d = self.d if self.q != 0 else o.d
        return sign_a_plus_b_sqrt(a, b, d)

    def __lt__(self, other):
        return self._diff_sign(other) < 0

    def __le__(self, other):
        return self._diff_sign(other) <= 0

    def __gt__(self, other):
        return self._diff_sign(other) > 0

    def __ge__(self, other):
        return self._diff_sign(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (QuadIrr, int, Fraction)):
            return self._diff_sign(other) == 0
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.r, self.d))

    # -- floor / fractional part --------------------------------------

    def __floor__(self) -> int:
        # floor((p + q sqrt d)/r) = floor((p + floor(q sqrt d)) / r): the
        # numerator's floor is exact, and floor(x/r) = floor(floor(x)/r).
        return (self.p + _floor_sqrt_signed(self.q, self.d)) // self.r

    def floor(self) -> int:
        return self.__floor__()

    def frac(self) -> "QuadIrr":
        """Fractional part, an exact value in [0, 1)."""
        return self - self.floor()

    def __float__(self) -> float:
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def __repr__(self) -> str:
        if self.q == 0:
            return f"QuadIrr({Fraction(self.p, self.r)})"
        return f"QuadIrr(({self.p}{self.q:+d}*sqrt({self.d}))/{self.r})"


def golden_rotation() -> QuadIrr:
    """(sqrt(5) - 1)/2, the rotation number with the slowest continued fraction."""
    return QuadIrr(-1, 1, 2, 5)


def sqrt_rotation(d: int) -> QuadIrr:
    """Fractional part of sqrt(d): sqrt(d) - floor(sqrt(d))."""
    return QuadIrr.sqrt(d).frac()


# -- vectorized kernel helpers ---------------------------------------

# Values of b^2*d up to this bound are safe for the float-seeded integer
# square-root correction below (and for the additions that follow).
INT64_KERNEL_LIMIT = 1 << 62


def floor_sqrt_int64(x: np.ndarray) -> np.ndarray:
    """Exact elementwise isqrt for int64 arrays with x < 2**62.

    Seeds with float sqrt, then fixes the at-most-one-ulp error by
    integer comparisons, so the result is exact.
    """
    if x.size and int(x.max()) >= INT64_KERNEL_LIMIT:
        raise OverflowError("isqrt kernel input exceeds int64-safe bound")
    s = np.sqrt(x.astype(np.float64)).astype(np.int64)
    s = np.maximum(s, 0)
    # Correct downward then upward; one pass each suffices for <= few ulps.
    for _ in range(2):
        too_big = s * s > x
        s = np.where(too_big, s - 1, s)
    for _ in range(2):
        nxt = (s + 1) * (s + 1)
        too_small = nxt <= x
        s = np.where(too_small, s + 1, s)
    return s


def floor_linear_quad(u: np.ndarray, pa: int, qa: int, ra: int, d: int,
                      off_num: int, off_den: int) -> np.ndarray:
    """Exact floor of u*(pa + qa*sqrt(d))/ra - off_num/off_den, elementwise.

    u is an int64 array.  All intermediate magnitudes must stay below
    2**62; callers check bounds via `linear_quad_bound_ok`.
    """
    c = ra * off_den
    a = u * (pa * off_den) - off_num * ra
    b = u * (qa * off_den)
    babs = np.abs(b)
    s = floor_sqrt_int64(babs * babs * d)
    fl_b = np.where(b >= 0, s, -s - 1)
    fl_b = np.where(b == 0, 0, fl_b)
    return (a + fl_b) // c


def linear_quad_bound_ok(max_abs_u: int, pa: int, qa: int, ra: int, d: int,
                         off_num: int, off_den: int) -> bool:
    """True when floor_linear_quad stays within exact int64 range."""
    b = max_abs_u * abs(qa) * off_den
    a = max_abs_u * abs(pa) * off_den + abs(off_num) * ra
    return b * b * d < INT64_KERNEL_LIMIT and (a + b * d + 1) < INT64_KERNEL_LIMIT
