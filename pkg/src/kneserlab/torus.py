"""Closed intervals (arcs) on the circle R/Z with exact endpoints.

Endpoints are rationals or quadratic irrationals, so containment,
Minkowski sums, translations and disjointness are all decided exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import NotFoundError, PreconditionError
from .quadirr import QuadIrr

TorusNumber = Union[Fraction, int, QuadIrr]

__all__ = ["TorusInterval", "interval_sum", "interval_translate",
           "interval_disjoint", "find_shift_n", "frac_mod1"]


def frac_mod1(x: TorusNumber):
    """Fractional part of an exact number, in [0, 1)."""
    if isinstance(x, QuadIrr):
        f = x.frac()
        return f.as_fraction() if f.is_rational else f
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def _as_exact(x) -> TorusNumber:
    if isinstance(x, QuadIrr):
        return x
    return Fraction(x)


class TorusInterval:
    """Closed arc [lo, hi] on R/Z; wraps through 0 when lo > hi.

    `full=True` denotes the whole circle (length 1), which cannot be
    expressed with two endpoints in [0, 1).
    """

    __slots__ = ("lo", "hi", "full")

    def __init__(self, lo, hi, full: bool = False):
        if full:
            self.lo = Fraction(0)
            self.hi = Fraction(0)
            self.full = True
            return
        self.lo = frac_mod1(_as_exact(lo))
        self.hi = frac_mod1(_as_exact(hi))
        self.full = False

    @classmethod
    def full_circle(cls) -> "TorusInterval":
        return cls(0, 0, full=True)

    @property
    def wraps(self) -> bool:
        return (not self.full) and self.lo > self.hi

    def length(self):
        if self.full:
            return Fraction(1)
        diff = self.hi - self.lo
        if isinstance(diff, QuadIrr) and diff.is_rational:
            diff = diff.as_fraction()
        return diff if diff >= 0 else diff + 1

    def contains(self, x: TorusNumber) -> bool:
        if self.full:
            return True
        f = frac_mod1(_as_exact(x))
        if self.wraps:
            return f >= self.lo or f <= self.hi
        return self.lo <= f <= self.hi

    def translate(self, x: TorusNumber) -> "TorusInterval":
        if self.full:
            return TorusInterval.full_circle()
        return TorusInterval(self.lo + x, self.hi + x)

    def __eq__(self, other):
        if not isinstance(other, TorusInterval):
            return NotImplemented
        if self.full or other.full:
            return self.full == other.full
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.full, str(self.lo), str(self.hi)))

    def __repr__(self):
        if self.full:
            return "TorusInterval(full)"
        return f"TorusInterval[{self.lo}, {self.hi}]"

    # -- lifted segments ----------------------------------------------

    def _segments(self):
        """The arc as 1 or 2 closed segments of the fundamental domain."""
        if self.full:
            return [(Fraction(0), Fraction(1))]
        if self.wraps:
            return [(self.lo, Fraction(1)), (Fraction(0), self.hi)]
        return [(self.lo, self.hi)]


def interval_sum(a: TorusInterval, b: TorusInterval) -> TorusInterval:
    """Minkowski sum of closed arcs: an arc of length min(1, |a|+|b|)."""
    if a.full or b.full:
        return TorusInterval.full_circle()
    total = a.length() + b.length()
    if total >= 1:
        return TorusInterval.full_circle()
    lo = a.lo + b.lo
    return TorusInterval(lo, lo + total)


def interval_translate(a: TorusInterval, alpha: QuadIrr, n: int) -> TorusInterval:
    """The arc a + n*alpha (endpoints become quadratic irrationals)."""
    return a.translate(alpha * n)


def _touch_or_overlap(a: TorusInterval, b: TorusInterval):
    """Classify the intersection of two closed arcs.

    Returns (has_interior, touch_points): if the arcs share a segment of
    positive length, has_interior is True; otherwise touch_points lists
    the isolated common points (possibly empty).
    """
    if a.full or b.full:
        other = b if a.full else a
        return (other.length() > 0 or other.full, [] if (other.length() > 0 or other.full) else [other.lo])
    pts = []
    interior = False
    for (alo, ahi) in a._segments():
        for (blo, bhi) in b._segments():
            for shift in (-1, 0, 1):
                lo = max(alo, blo + shift)
                hi = min(ahi, bhi + shift)
                if lo < hi:
                    interior = True
                elif lo == hi:
                    pts.append(frac_mod1(lo))
    uniq = []
    for p in pts:
        if p not in uniq:
            uniq.append(p)
    return interior, uniq


def interval_disjoint(a: TorusInterval, b: TorusInterval) -> bool:
    """Exact disjointness of two closed arcs."""
    interior, pts = _touch_or_overlap(a, b)
    return (not interior) and not pts


def find_shift_n(alpha: QuadIrr, interval: TorusInterval, search_bound: int = 100) -> int:
    """Smallest |n| with (I+I) disjoint from I + n*alpha, by exact scan.

    Requires |I| < 1/3 (necessary: the three arcs occupy 3|I| of the
    circle).  Scans n = 1, -1, 2, -2, ... up to the bound.
    """
    if alpha.is_rational:
        raise PreconditionError("alpha must be irrational")
    if interval.length() >= Fraction(1, 3):
        raise PreconditionError(
            f"interval length {interval.length()} >= 1/3: no disjoint shift exists")
    doubled = interval_sum(interval, interval)
    for k in range(1, search_bound + 1):
        for n in (k, -k):
            if interval_disjoint(doubled, interval_translate(interval, alpha, n)):
                return n
    raise NotFoundError(f"no disjoint shift with |n| <= {search_bound}")
