"""Finite-scale density estimation along Folner families.

Upper/lower asymptotic densities are tail statistics of the counting
series |A n F_n| / |F_n|; Banach densities on the integer line are
extremal sliding-window counts.  Folner defects |F delta gF| / |F| are
computed exactly as rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import GroupMismatchError, PreconditionError, UnsupportedQueryError
from .groups import (DihedralInf, Group, IntLine, PAdicRational, SolvablePK,
                     max_box_elements)
from .setexpr import SetExpr, materialize
from .windows import DihedralWindow, ElementsWindow, IntWindow, WindowSet

__all__ = [
    "FolnerFamily", "DensityEstimate", "symmetric_family", "positive_family",
    "shifted_family", "dihedral_family", "solvable_box_family",
    "density_along", "banach_density", "is_thick_at_scale",
    "is_syndetic_at_scale", "folner_defect", "default_generators",
    "density_ladder", "window_counts",
]


@dataclass
class DensityEstimate:
    """A density value with its scale parameters and convergence series."""

    mode: str
    value: float
    params: dict = field(default_factory=dict)
    series: list = field(default_factory=list)

    def __post_init__(self):
        if not (-1e-12 <= self.value <= 1 + 1e-12):
            raise ValueError(f"density {self.value} outside [0, 1]")
        self.value = min(1.0, max(0.0, float(self.value)))

    def to_json(self):
        return {"mode": self.mode, "value": self.value, "params": self.params,
                "series": [[int(n), float(v)] for n, v in self.series]}


class FolnerFamily:
    """A parametrized family n -> F_n of finite windows in a group."""

    def __init__(self, group: Group, window_fn, name: str):
        self.group = group
        self.window_fn = window_fn
        self.name = name

    def window(self, n: int):
        return self.window_fn(n)

    def __repr__(self):
        return f"FolnerFamily({self.name})"


def symmetric_family() -> FolnerFamily:
    return FolnerFamily(IntLine(), lambda n: IntWindow(-n, n), "sym")


def positive_family() -> FolnerFamily:
    return FolnerFamily(IntLine(), lambda n: IntWindow(1, n), "pos")


def shifted_family(shift_fn, length_fn=None) -> FolnerFamily:
    length_fn = length_fn or (lambda n: n)
    return FolnerFamily(
        IntLine(),
        lambda n: IntWindow(shift_fn(n), shift_fn(n) + length_fn(n)),
        "shifted")


def dihedral_family() -> FolnerFamily:
    return FolnerFamily(DihedralInf(), lambda n: DihedralWindow(-n, n), "dih")


def solvable_box_family(p: int, radius_fn=None) -> FolnerFamily:
    """Default solvable-group boxes {(j p^-n, k): |j| <= J(n), |k| <= n}."""
    group = SolvablePK(p)
    radius_fn = radius_fn or (lambda n: p ** (2 * n))

    def mk(n):
        return ElementsWindow(group, group.enumerate_box(level=n, radius=radius_fn(n)))

    fam = FolnerFamily(group, mk, f"solvable_box(p={p})")
    fam.box_params = lambda n: (n, radius_fn(n))
    return fam


def density_ladder(n_max: int, points: int = 48, n_min: int = 1):
    """Geometrically spaced sample scales, always including n_max."""
    if n_max < n_min:
        raise PreconditionError("n_max below n_min")
    vals = np.unique(np.geomspace(n_min, n_max, num=points).astype(np.int64))
    return [int(v) for v in vals]


def _interval_family_counts(expr, family, ns):
    """Counts |A n F_n| for integer-interval windows via one cumsum."""
    wins = [family.window(n) for n in ns]
    lo = min(w.lo for w in wins)
    hi = max(w.hi for w in wins)
    if hi - lo + 1 > max_box_elements():
        # fall back to per-sample materialization
        out = []
        for n, w in zip(ns, wins):
            ws = materialize(expr, w)
            out.append((n, ws.count, w.size))
        return out
    big = materialize(expr, IntWindow(lo, hi))
    csum = np.concatenate([[0], np.cumsum(big.mask.astype(np.int64))])
    out = []
    for n, w in zip(ns, wins):
        cnt = int(csum[w.hi - lo + 1] - csum[w.lo - lo])
        out.append((n, cnt, w.size))
    return out


def density_along(expr: SetExpr, family: FolnerFamily, n_max: int,
                  tail_fraction: float = 0.2, points: int = 48):
    """Upper and lower asymptotic density estimates along the family.

    The series s(n) = |A n F_n| / |F_n| is sampled on a geometric
    ladder; the reported upper (lower) value is the max (min) of the
    tail window, by default the last 20% of sampled scales.
    """
    if expr.group != family.group:
        raise GroupMismatchError("expression and family live in different groups")
    ns = density_ladder(n_max, points=points)
    if isinstance(family.group, IntLine):
        triples = _interval_family_counts(expr, family, ns)
    else:
        triples = []
        for n in ns:
            w = family.window(n)
            ws = materialize(expr, w)
            triples.append((n, ws.count, w.size))
    series = [(n, cnt / size) for n, cnt, size in triples]
    k = max(1, int(np.ceil(tail_fraction * len(series))))
    tail = [v for _, v in series[-k:]]
    params = {"family": family.name, "n_max": n_max,
              "tail_fraction": tail_fraction, "points": len(series),
              "counts": [[int(n), int(size), int(cnt)] for n, cnt, size in triples]}
    upper = DensityEstimate("upper_along", max(tail), params, series)
    lower = DensityEstimate("lower_along", min(tail), params, series)
    return upper, lower


def window_counts(expr: SetExpr, lo: int, hi: int, L: int) -> np.ndarray:
    """|A n [x, x+L)| for every x in [lo, hi]."""
    if L < 1:
        raise PreconditionError("window length must be >= 1")
    ws = materialize(expr, IntWindow(lo, hi + L - 1))
    csum = np.concatenate([[0], np.cumsum(ws.mask.astype(np.int64))])
    return csum[L:] - csum[:-L]


def banach_density(expr: SetExpr, mode: str, L: int, search_range,
                   series_points: int = 8) -> DensityEstimate:
    """Extremal window-count density over a search range of translates.

    mode 'upper': max_x |A n [x, x+L)| / L; 'lower': min.  The series
    reports the same statistic over a doubling ladder of lengths up to
    L.  Only integer-line (and lattice) groups are supported.
    """
    if mode not in ("upper", "lower"):
        raise PreconditionError("mode must be 'upper' or 'lower'")
    if not isinstance(expr.group, IntLine):
        raise UnsupportedQueryError(
            "Banach densities via window scans are implemented on the integer "
            "line; use density_along over translated boxes for other groups")
    lo, hi = search_range
    Ls = []
    cur = L
    while len(Ls) < series_points and cur >= 1:
        Ls.append(cur)
        cur //= 2
    Ls = sorted(set(Ls))
    ws = materialize(expr, IntWindow(lo, hi + max(Ls) - 1))
    csum = np.concatenate([[0], np.cumsum(ws.mask.astype(np.int64))])
    width = hi - lo + 1
    series = []
    value = None
    for length in Ls:
        counts = csum[length:length + width] - csum[:width]
        stat = counts.max() if mode == "upper" else counts.min()
        series.append((length, stat / length))
        if length == L:
            value = stat / length
    est = DensityEstimate("banach_" + mode, float(value),
                          {"L": L, "search_range": [lo, hi]}, series)
    return est


def is_thick_at_scale(expr: SetExpr, L: int, search_range):
    """Does some translate [x, x+L) lie inside the set?  Returns (bool, x)."""
    lo, hi = search_range
    counts = window_counts(expr, lo, hi, L)
    full = np.flatnonzero(counts == L)
    if full.size:
        return True, int(full[0]) + lo
    return False, None


def is_syndetic_at_scale(expr: SetExpr, gap_bound: int, search_range):
    """Are gaps between consecutive members within the range bounded?

    Boundary gaps count: a set with no member near either end of the
    range fails.  Returns (bool, max_gap).
    """
    lo, hi = search_range
    ws = materialize(expr, IntWindow(lo, hi))
    xs = np.flatnonzero(ws.mask) + lo
    pts = np.concatenate([[lo - 1], xs, [hi + 1]])
    max_gap = int(np.diff(pts).max())
    return max_gap <= gap_bound, max_gap


# ---------------------------------------------------------------------------
# Folner defect |F delta gF| / |F|, exact
# ---------------------------------------------------------------------------


def _interval_overlap(a_lo, a_hi, b_lo, b_hi) -> int:
    return max(0, min(a_hi, b_hi) - max(a_lo, b_lo) + 1)


def _solvable_box_defect(group: SolvablePK, level: int, radius: int, g) -> Fraction:
    """Exact defect for the default solvable-group box under left translation."""
    z, m = g
    p, n, J = group.p, level, radius
    size = (2 * n + 1) * (2 * J + 1)
    # Levels: source k maps to k + m; overlap needs k + m in [-n, n].
    lv = _interval_overlap(-n + m, n + m, -n, n)
    if lv == 0:
        return Fraction(2)
    # x-part: z + p^m * (j p^-n) must equal i p^-n with |i|, |j| <= J.
    c = z.as_fraction() * p ** n
    if c.denominator != 1:
        per_level = 0
    else:
        c = c.numerator
        if m >= 0:
            # |c + j p^m| <= J  <=>  ceil((-J-c)/p^m) <= j <= floor((J-c)/p^m)
            P = p ** m
            lo = -((J + c) // P)
            hi = (J - c) // P
            per_level = _interval_overlap(lo, hi, -J, J)
        else:
            Q = p ** (-m)
            # j = Q t, i = c + t with |t| <= J // Q and |c + t| <= J
            tmax = J // Q
            per_level = _interval_overlap(-J - c, J - c, -tmax, tmax)
    inter = lv * per_level
    return Fraction(2 * (size - inter), size)


def folner_defect(family: FolnerFamily, n: int, g) -> Fraction:
    """Exact |F_n delta g F_n| / |F_n| as a rational in [0, 2]."""
    group = family.group
    group.check(g)
    w = family.window(n)
    if isinstance(w, IntWindow):
        size = w.size
        inter = _interval_overlap(w.lo + g, w.hi + g, w.lo, w.hi)
        return Fraction(2 * (size - inter), size)
    if isinstance(w, DihedralWindow):
        mm, ee = g
        # (m,e)(x,s) = (m + e x, e s): x-image is an interval either way,
        # and the s-components swap when e = -1 but both slots exist.
        img_lo, img_hi = sorted((mm + ee * w.lo, mm + ee * w.hi))
        inter = 2 * _interval_overlap(img_lo, img_hi, w.lo, w.hi)
        size = w.size
        return Fraction(2 * (size - inter), size)
    if isinstance(group, SolvablePK) and hasattr(family, "box_params"):
        level, radius = family.box_params(n)
        return _solvable_box_defect(group, level, radius, g)
    # Generic fallback: explicit sets.
    pts = w.points()
    fset = set(pts)
    gset = {group.op(g, x) for x in pts}
    sym = len(fset ^ gset)
    return Fraction(sym, len(fset))


def default_generators(group: Group):
    """A small generating set used by defect reports."""
    if isinstance(group, IntLine):
        return [1]
    if isinstance(group, DihedralInf):
        return [(1, 1), (0, -1)]
    if isinstance(group, SolvablePK):
        one = PAdicRational(group.p, 1, 0)
        return [(one, 0), (PAdicRational(group.p), 1)]
    raise UnsupportedQueryError(f"no default generators for {group!r}")
