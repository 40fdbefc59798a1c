"""Sturmian sets from irrational circle rotations, with exact membership.

A Sturmian set over Z collects the n whose rotation orbit point n*alpha
lands in a closed arc I + a, where a = c + m*alpha with rational c.  All
decisions reduce to integer sign tests, and windows are generated by a
vectorized int64 kernel (with an exact big-integer fallback when the
magnitudes would overflow).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GroupMismatchError, PreconditionError
from .quadirr import QuadIrr, floor_linear_quad, linear_quad_bound_ok
from .torus import TorusInterval, frac_mod1
from .windows import DihedralWindow, IntWindow, WindowSet

__all__ = ["SturmianSpec", "frac_in_interval", "sturmian_members",
           "equidistribution_check", "rotation_mask"]


@dataclass(frozen=True)
class SturmianSpec:
    """Rotation number, arc, and offset a = c + m*alpha (rationals exact).

    With twisted=True the set lives in the infinite dihedral group and
    the offset additionally carries a sign component (offset_sign),
    giving the offset element (c + m*alpha, offset_sign) of the twisted
    torus.
    """

    alpha: QuadIrr
    interval: TorusInterval
    offset_c: Fraction = Fraction(0)
    offset_m: int = 0
    twisted: bool = False
    offset_sign: int = 1

    def __post_init__(self):
        if self.alpha.is_rational:
            raise PreconditionError("rotation number must be irrational")
        if self.offset_sign not in (-1, 1):
            raise PreconditionError("offset_sign must be +-1")
        if not self.interval.full:
            if not isinstance(self.interval.lo, Fraction) or not isinstance(self.interval.hi, Fraction):
                raise PreconditionError("spec intervals need rational endpoints")
        object.__setattr__(self, "offset_c", Fraction(self.offset_c))

    # -- membership ----------------------------------------------------

    def member(self, n: int) -> bool:
        """n is in the set iff {n*alpha} lies in I + c + m*alpha."""
        if self.twisted:
            raise GroupMismatchError("twisted specs take dihedral elements; use member_dihedral")
        return self._hit(n - self.offset_m, self.offset_c)

    def member_dihedral(self, g) -> bool:
        """(n, eps) is in the twisted set iff {n*alpha} - (eps*sign)*a0 in I."""
        if not self.twisted:
            raise GroupMismatchError("untwisted specs take integers")
        n, eps = g
        if eps not in (-1, 1):
            raise GroupMismatchError(f"{g!r} is not a dihedral element")
        eta = eps * self.offset_sign
        # {n*alpha} - eta*(c + m*alpha) in I  <=>  hit(n - eta*m, eta*c)
        return self._hit(n - eta * self.offset_m, eta * self.offset_c)

    def _hit(self, u: int, c: Fraction) -> bool:
        if self.interval.full:
            return True
        point = self.alpha * u - c
        return self.interval.contains(point)

    # -- translation algebra (used by symbolic sumsets) -----------------

    def translated(self, t: int) -> "SturmianSpec":
        """The set shifted by t: membership of n becomes membership of n - t."""
        return SturmianSpec(self.alpha, self.interval, self.offset_c,
                            self.offset_m + t, self.twisted, self.offset_sign)

    def reflected(self) -> "SturmianSpec":
        """{-n : n in set}: negate the arc and the offset."""
        iv = self.interval
        if not iv.full:
            iv = TorusInterval(-iv.hi, -iv.lo)
        return SturmianSpec(self.alpha, iv, -self.offset_c, -self.offset_m,
                            self.twisted, self.offset_sign)


def frac_in_interval(n: int, alpha: QuadIrr, interval: TorusInterval) -> bool:
    """Exact decision of {n*alpha} in the closed arc."""
    if alpha.is_rational:
        raise PreconditionError("alpha must be irrational")
    return interval.contains(alpha * n)


def rotation_mask(alpha: QuadIrr, interval: TorusInterval, u: np.ndarray,
                  c: Fraction = Fraction(0)) -> np.ndarray:
    """Boolean mask of {u*alpha - c} in the closed arc, elementwise exact.

    Uses the int64 floor kernel when magnitudes permit; otherwise falls
    back to per-element big-integer tests.  For u = 0 the orbit point is
    rational and may hit an arc endpoint; that single case is decided by
    the exact closed-interval test.
    """
    u = np.asarray(u, dtype=np.int64)
    if interval.full:
        return np.ones(u.shape, dtype=bool)
    lo_off = c + interval.lo
    hi_off = c + interval.hi
    pa, qa, ra, d = alpha.p, alpha.q, alpha.r, alpha.d
    max_u = int(np.abs(u).max()) if u.size else 0
    ok = all(
        linear_quad_bound_ok(max_u, pa, qa, ra, d, off.numerator, off.denominator)
        for off in (lo_off, hi_off)
    )
    if ok:
        k_lo = floor_linear_quad(u, pa, qa, ra, d, lo_off.numerator, lo_off.denominator)
        k_hi = floor_linear_quad(u, pa, qa, ra, d, hi_off.numerator, hi_off.denominator)
        need = 0 if interval.wraps else 1
        mask = (k_lo - k_hi) >= need
    else:
        mask = np.fromiter(
            (interval.contains(alpha * int(ui) - c) for ui in u),
            dtype=bool, count=u.size).reshape(u.shape)
        return mask
    zero = np.nonzero(u == 0)[0]
    if zero.size:
        mask[zero] = interval.contains(-c)
    return mask


def sturmian_members(spec: SturmianSpec, window) -> WindowSet:
    """Materialize the Sturmian (or twisted Sturmian) set on a window."""
    if not spec.twisted:
        if not isinstance(window, IntWindow):
            raise GroupMismatchError("untwisted Sturmian sets live on the integer line")
        u = window.points() - spec.offset_m
        return WindowSet(window, rotation_mask(spec.alpha, spec.interval, u, spec.offset_c))
    if not isinstance(window, DihedralWindow):
        raise GroupMismatchError("twisted Sturmian sets live on the infinite dihedral group")
    ns = np.arange(window.lo, window.hi + 1, dtype=np.int64)
    mask = np.zeros(window.size, dtype=bool)
    for slot, eps in ((0, -1), (1, 1)):
        eta = eps * spec.offset_sign
        sub = rotation_mask(spec.alpha, spec.interval,
                            ns - eta * spec.offset_m, eta * spec.offset_c)
        mask[slot::2] = sub
    return WindowSet(window, mask)


def equidistribution_check(alpha: QuadIrr, interval: TorusInterval, n: int):
    """Exact orbit count over [1, n] against the arc's Haar measure.

    Returns (count/n, |count/n - measure|) as exact fractions.
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    mask = rotation_mask(alpha, interval, np.arange(1, n + 1, dtype=np.int64))
    ratio = Fraction(int(mask.sum()), n)
    measure = interval.length()
    if not isinstance(measure, Fraction):
        measure = Fraction(measure)
    return ratio, abs(ratio - measure)
