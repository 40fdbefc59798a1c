"""Finite evaluation windows and bit-masked window sets."""

from __future__ import annotations

import numpy as np

from .errors import ResourceLimitError
from .groups import Group, IntLine, max_box_elements

__all__ = ["IntWindow", "DihedralWindow", "ElementsWindow", "WindowSet"]


class IntWindow:
    """The integer interval [lo, hi] (inclusive), for (Z, +)."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: int, hi: int):
        if hi < lo:
            raise ValueError("empty window")
        if hi - lo + 1 > max_box_elements():
            raise ResourceLimitError(f"window [{lo}, {hi}] exceeds element budget")
        self.lo, self.hi = int(lo), int(hi)

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def points(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1, dtype=np.int64)

    def index_of(self, x: int) -> int:
        return x - self.lo

    def __eq__(self, other):
        return isinstance(other, IntWindow) and (self.lo, self.hi) == (other.lo, other.hi)

    def __repr__(self):
        return f"IntWindow[{self.lo}, {self.hi}]"


class DihedralWindow:
    """[lo, hi] x {-1, +1} for the infinite dihedral group."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: int, hi: int):
        if hi < lo:
            raise ValueError("empty window")
        self.lo, self.hi = int(lo), int(hi)

    @property
    def size(self) -> int:
        return 2 * (self.hi - self.lo + 1)

    def points(self):
        return [(m, e) for m in range(self.lo, self.hi + 1) for e in (-1, 1)]

    def index_of(self, g) -> int:
        m, e = g
        return 2 * (m - self.lo) + (0 if e == -1 else 1)

    def __repr__(self):
        return f"DihedralWindow[{self.lo}, {self.hi}]x(-1,1)"


class ElementsWindow:
    """An explicit finite list of group elements (any group kind)."""

    def __init__(self, group: Group, elements):
        self.group = group
        self.elements = list(elements)
        self._index = {g: i for i, g in enumerate(self.elements)}

    @property
    def size(self) -> int:
        return len(self.elements)

    def points(self):
        return self.elements

    def index_of(self, g) -> int:
        return self._index[g]

    def __repr__(self):
        return f"ElementsWindow({len(self.elements)} elements)"


class WindowSet:
    """A window plus a boolean mask over its points.

    `exact` records whether the mask is certified to equal the set's
    restriction to the window (product windows may only be certified
    as lower approximations).
    """

    __slots__ = ("window", "mask", "exact")

    def __init__(self, window, mask, exact: bool = True):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (window.size,):
            raise ValueError("mask length must equal window size")
        self.window = window
        self.mask = mask
        self.exact = exact

    @property
    def count(self) -> int:
        return int(self.mask.sum())

    def members(self):
        if isinstance(self.window, IntWindow):
            return np.flatnonzero(self.mask) + self.window.lo
        pts = self.window.points()
        return [pts[i] for i in np.flatnonzero(self.mask)]

    def __repr__(self):
        return f"WindowSet({self.window!r}, count={self.count}, exact={self.exact})"


def int_window_of(group, lo, hi):
    if not isinstance(group, IntLine):
        raise TypeError("integer windows require the integer line group")
    return IntWindow(lo, hi)
