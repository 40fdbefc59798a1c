"""Symbolic set expressions over a group with exact membership.

An expression is an AST over explicit sets, residue classes, half
lines, Sturmian sets and boolean/translation/product combinators.
Membership of a single element is decided exactly; windows are
materialized into bit masks (vectorized on the integer line).

Product (sum) sets are window-only: they are evaluated through exact
symbolic closures where one applies (e.g. sums of Sturmian sets with a
common rotation number), and otherwise by convolution over certified
inflated operand windows, with an explicit lower-approximation flag
when no finite inflation covers all witnesses.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .errors import (GroupMismatchError, PreconditionError,
                     UnsupportedQueryError)
from .groups import (Cyclic, DihedralInf, FiniteGroup, Group, IntLattice,
                     IntLine, PAdicRational, SolvablePK, TableGroup)
from .quadirr import QuadIrr
from .sturmian import SturmianSpec, rotation_mask, sturmian_members
from .torus import TorusInterval, frac_mod1, interval_sum
from .windows import DihedralWindow, ElementsWindow, IntWindow, WindowSet

__all__ = [
    "SetExpr", "Explicit", "Periodic", "HalfLine", "SturmianSet",
    "Singleton", "Union", "Intersect", "Complement", "Translate",
    "ProductSet", "InverseSet", "Builtin", "member", "materialize",
    "product_window", "support_bounds", "try_symbolic_sumset",
    "min_element", "to_json", "from_json", "full_line", "empty_set",
]

_Z = IntLine()


class SetExpr:
    """Base class; every node knows its group."""

    group: Group = _Z

    def member(self, g) -> bool:
        raise NotImplementedError

    # Children, for generic traversal.
    def children(self):
        return ()

    def _check_same_group(self, *exprs):
        for e in exprs:
            if e.group != self.group:
                raise GroupMismatchError(
                    f"mixed groups in expression: {self.group!r} vs {e.group!r}")

    def __repr__(self):
        return f"{type(self).__name__}"


class Explicit(SetExpr):
    """A finite, explicitly listed set."""

    def __init__(self, elements, group: Group = _Z):
        self.group = group
        elems = []
        seen = set()
        for g in elements:
            group.check(g)
            if g not in seen:
                seen.add(g)
                elems.append(g)
        try:
            elems.sort()
        except TypeError:
            pass
        self.elements = tuple(elems)

    def member(self, g):
        return g in self.elements

    def __repr__(self):
        return f"Explicit({list(self.elements)!r})"


def empty_set(group: Group = _Z) -> Explicit:
    return Explicit([], group)


class Singleton(Explicit):
    def __init__(self, g, group: Group = _Z):
        super().__init__([g], group)


class Periodic(SetExpr):
    """A union of residue classes mod m on the integer line."""

    def __init__(self, modulus: int, residues):
        if modulus < 1:
            raise PreconditionError("modulus must be >= 1")
        rs = sorted({r % modulus for r in residues})
        self.modulus = modulus
        self.residues = tuple(rs)
        self.group = _Z

    def member(self, g):
        return (g % self.modulus) in self.residues

    @property
    def is_full(self):
        return len(self.residues) == self.modulus

    def __repr__(self):
        return f"Periodic({self.modulus}, {set(self.residues)})"


def full_line() -> Periodic:
    return Periodic(1, [0])


class HalfLine(SetExpr):
    """{1, 2, ...} for sign +1, {-1, -2, ...} for sign -1 (0 in neither)."""

    def __init__(self, sign: int):
        if sign not in (1, -1):
            raise PreconditionError("sign must be +-1")
        self.sign = sign
        self.group = _Z

    def member(self, g):
        return g >= 1 if self.sign == 1 else g <= -1

    def __repr__(self):
        return f"HalfLine({'+' if self.sign == 1 else '-'})"


class SturmianSet(SetExpr):
    """A Sturmian set (integer line) or its twisted dihedral analogue."""

    def __init__(self, spec: SturmianSpec):
        self.spec = spec
        self.group = DihedralInf() if spec.twisted else _Z

    def member(self, g):
        if self.spec.twisted:
            return self.spec.member_dihedral(g)
        return self.spec.member(g)

    def __repr__(self):
        return f"SturmianSet({self.spec!r})"


class Union(SetExpr):
    def __init__(self, *terms):
        if not terms:
            raise PreconditionError("union of nothing")
        self.terms = tuple(terms)
        self.group = terms[0].group
        self._check_same_group(*terms)

    def children(self):
        return self.terms

    def member(self, g):
        return any(t.member(g) for t in self.terms)

    def __repr__(self):
        return "Union(" + ", ".join(map(repr, self.terms)) + ")"


class Intersect(SetExpr):
    def __init__(self, *terms):
        if not terms:
            raise PreconditionError("intersection of nothing")
        self.terms = tuple(terms)
        self.group = terms[0].group
        self._check_same_group(*terms)

    def children(self):
        return self.terms

    def member(self, g):
        return all(t.member(g) for t in self.terms)

    def __repr__(self):
        return "Intersect(" + ", ".join(map(repr, self.terms)) + ")"


class Complement(SetExpr):
    def __init__(self, term):
        self.term = term
        self.group = term.group

    def children(self):
        return (self.term,)

    def member(self, g):
        return not self.term.member(g)

    def __repr__(self):
        return f"Complement({self.term!r})"


class Translate(SetExpr):
    """g*A (side='left') or A*g (side='right')."""

    def __init__(self, term, by, side: str = "left"):
        if side not in ("left", "right"):
            raise PreconditionError("side must be 'left' or 'right'")
        self.term = term
        self.group = term.group
        self.by = self.group.check(by)
        self.side = side

    def children(self):
        return (self.term,)

    def member(self, g):
        G = self.group
        if self.side == "left":
            return self.term.member(G.op(G.inv(self.by), g))
        return self.term.member(G.op(g, G.inv(self.by)))

    def __repr__(self):
        return f"Translate({self.term!r}, {self.by!r}, {self.side})"


class InverseSet(SetExpr):
    """{ a^-1 : a in A }."""

    def __init__(self, term):
        self.term = term
        self.group = term.group

    def children(self):
        return (self.term,)

    def member(self, g):
        return self.term.member(self.group.inv(g))

    def __repr__(self):
        return f"InverseSet({self.term!r})"


class ProductSet(SetExpr):
    """{ a b : a in A, b in B }.  Window-only; member() is undecidable."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.group = left.group
        self._check_same_group(left, right)

    def children(self):
        return (self.left, self.right)

    def member(self, g):
        raise UnsupportedQueryError(
            "product sets have no symbolic membership; materialize a window")

    def __repr__(self):
        return f"ProductSet({self.left!r}, {self.right!r})"


class Builtin(SetExpr):
    """A named set with a registered membership predicate.

    Used for the solvable-group machine sets, whose closed-form
    membership lives in the counterexample module.
    """

    def __init__(self, name: str, params: dict):
        from . import counterexample  # registers the builtins
        try:
            factory = counterexample.BUILTIN_SETS[name]
        except KeyError:
            raise PreconditionError(f"unknown builtin set {name!r}") from None
        self.name = name
        self.params = dict(params)
        self._fn, self.group = factory(**self.params)

    def member(self, g):
        self.group.check(g)
        return self._fn(g)

    def __repr__(self):
        return f"Builtin({self.name!r}, {self.params!r})"


# ---------------------------------------------------------------------------
# Membership and materialization
# ---------------------------------------------------------------------------


def member(expr: SetExpr, g) -> bool:
    """Exact membership; product nodes raise UnsupportedQueryError."""
    expr.group.check(g)
    return expr.member(g)


def _mask_int(expr: SetExpr, window: IntWindow) -> WindowSet:
    """Vectorized evaluation over an integer window."""
    pts = None

    def points():
        nonlocal pts
        if pts is None:
            pts = window.points()
        return pts

    if isinstance(expr, Explicit):
        mask = np.zeros(window.size, dtype=bool)
        for g in expr.elements:
            if window.lo <= g <= window.hi:
                mask[g - window.lo] = True
        return WindowSet(window, mask)
    if isinstance(expr, Periodic):
        lut = np.zeros(expr.modulus, dtype=bool)
        lut[list(expr.residues)] = True
        return WindowSet(window, lut[points() % expr.modulus])
    if isinstance(expr, HalfLine):
        mask = points() >= 1 if expr.sign == 1 else points() <= -1
        return WindowSet(window, mask)
    if isinstance(expr, SturmianSet):
        return sturmian_members(expr.spec, window)
    if isinstance(expr, Union):
        parts = [_mask_int(t, window) for t in expr.terms]
        mask = np.logical_or.reduce([p.mask for p in parts])
        return WindowSet(window, mask, exact=all(p.exact for p in parts))
    if isinstance(expr, Intersect):
        parts = [_mask_int(t, window) for t in expr.terms]
        mask = np.logical_and.reduce([p.mask for p in parts])
        return WindowSet(window, mask, exact=all(p.exact for p in parts))
    if isinstance(expr, Complement):
        inner = _mask_int(expr.term, window)
        return WindowSet(window, ~inner.mask, exact=inner.exact)
    if isinstance(expr, Translate):
        t = expr.by
        inner = _mask_int(expr.term, IntWindow(window.lo - t, window.hi - t))
        return WindowSet(window, inner.mask, exact=inner.exact)
    if isinstance(expr, InverseSet):
        inner = _mask_int(expr.term, IntWindow(-window.hi, -window.lo))
        return WindowSet(window, inner.mask[::-1], exact=inner.exact)
    if isinstance(expr, ProductSet):
        return sumset_window(expr.left, expr.right, window)
    # Builtin and anything else: per-element loop.
    mask = np.fromiter((expr.member(int(x)) for x in points()),
                       dtype=bool, count=window.size)
    return WindowSet(window, mask)


def materialize(expr: SetExpr, window) -> WindowSet:
    """Evaluate the expression into a bit mask over the window."""
    if isinstance(window, IntWindow):
        if not isinstance(expr.group, IntLine):
            raise GroupMismatchError("integer window given for a non-integer-line expression")
        return _mask_int(expr, window)
    if isinstance(window, DihedralWindow) and isinstance(expr, SturmianSet) and expr.spec.twisted:
        return sturmian_members(expr.spec, window)
    pts = window.points()
    mask = np.fromiter((expr.member(g) for g in pts), dtype=bool, count=window.size)
    return WindowSet(window, mask)


# ---------------------------------------------------------------------------
# Support bounds (conservative: the true support is contained in them)
# ---------------------------------------------------------------------------


def support_bounds(expr: SetExpr):
    """(lo, hi) with None meaning unbounded on that side."""
    if isinstance(expr, Explicit):
        if not expr.elements:
            return (0, -1)  # empty
        return (min(expr.elements), max(expr.elements))
    if isinstance(expr, HalfLine):
        return (1, None) if expr.sign == 1 else (None, -1)
    if isinstance(expr, Union):
        los, his = zip(*(support_bounds(t) for t in expr.terms))
        lo = None if any(x is None for x in los) else min(los)
        hi = None if any(x is None for x in his) else max(his)
        return (lo, hi)
    if isinstance(expr, Intersect):
        lo, hi = None, None
        for t in expr.terms:
            tlo, thi = support_bounds(t)
            if tlo is not None:
                lo = tlo if lo is None else max(lo, tlo)
            if thi is not None:
                hi = thi if hi is None else min(hi, thi)
        return (lo, hi)
    if isinstance(expr, Translate):
        lo, hi = support_bounds(expr.term)
        t = expr.by
        return (None if lo is None else lo + t, None if hi is None else hi + t)
    if isinstance(expr, InverseSet):
        lo, hi = support_bounds(expr.term)
        return (None if hi is None else -hi, None if lo is None else -lo)
    if isinstance(expr, ProductSet):
        alo, ahi = support_bounds(expr.left)
        blo, bhi = support_bounds(expr.right)
        lo = None if alo is None or blo is None else alo + blo
        hi = None if ahi is None or bhi is None else ahi + bhi
        return (lo, hi)
    return (None, None)


def _is_empty_bounds(b):
    lo, hi = b
    return lo is not None and hi is not None and lo > hi


def min_element(expr: SetExpr, scan_limit: int = 1_000_000):
    """Smallest member of a bounded-below integer set, or None.

    Scans upward from the support bound in chunks; gives up (returns
    None) after scan_limit points.
    """
    lo, hi = support_bounds(expr)
    if lo is None:
        raise PreconditionError("expression is not certified bounded below")
    scanned = 0
    chunk = 4096
    start = lo
    while scanned < scan_limit:
        stop = start + chunk - 1
        if hi is not None:
            stop = min(stop, hi)
        ws = materialize(expr, IntWindow(start, stop))
        hits = np.flatnonzero(ws.mask)
        if hits.size:
            return int(hits[0]) + start
        scanned += stop - start + 1
        if hi is not None and stop >= hi:
            return None
        start = stop + 1
        chunk = min(2 * chunk, 1 << 20)
    return None


# ---------------------------------------------------------------------------
# Symbolic sumset closures (integer line)
# ---------------------------------------------------------------------------


def _sturmian_sum(a: SturmianSpec, b: SturmianSpec):
    """Exact sum of two Sturmian sets with the same rotation number.

    The sum is the Sturmian set of the Minkowski sum of the arcs, except
    possibly at the single point x0 = m_a + m_b, where the orbit point
    is rational and the generic density argument degenerates; that point
    is decided separately and patched in.
    """
    if a.twisted or b.twisted:
        return None
    if a.alpha != b.alpha:
        return None
    la, lb = a.interval.length(), b.interval.length()
    if (not a.interval.full and la == 0) or (not b.interval.full and lb == 0):
        return None
    base_spec = SturmianSpec(a.alpha, interval_sum(a.interval, b.interval),
                             a.offset_c + b.offset_c, a.offset_m + b.offset_m)
    base = SturmianSet(base_spec)
    x0 = a.offset_m + b.offset_m
    # Witness arcs for x0: need u with {u*alpha} in (I + c_a) n (-J - c_b).
    arc1 = a.interval.translate(a.offset_c)
    if b.interval.full:
        arc2 = TorusInterval.full_circle()
    else:
        arc2 = TorusInterval(-b.interval.hi - b.offset_c, -b.interval.lo - b.offset_c)
    from .torus import _touch_or_overlap
    interior, touch = _touch_or_overlap(arc1, arc2)
    actual = interior or any(p == 0 for p in touch)
    if actual == base.member(x0):
        return base
    if actual:
        return Union(base, Singleton(x0))
    return Intersect(base, Complement(Singleton(x0)))


def try_symbolic_sumset(a: SetExpr, b: SetExpr):
    """An exact SetExpr for A+B, or None when no closure applies."""
    if not isinstance(a.group, IntLine) or not isinstance(b.group, IntLine):
        return None
    # Unwrap translates.
    if isinstance(a, Translate):
        inner = try_symbolic_sumset(a.term, b)
        return None if inner is None else Translate(inner, a.by)
    if isinstance(b, Translate):
        inner = try_symbolic_sumset(a, b.term)
        return None if inner is None else Translate(inner, b.by)
    # Distribute over unions.
    if isinstance(a, Union):
        parts = [try_symbolic_sumset(t, b) for t in a.terms]
        return None if any(p is None for p in parts) else Union(*parts)
    if isinstance(b, Union):
        parts = [try_symbolic_sumset(a, t) for t in b.terms]
        return None if any(p is None for p in parts) else Union(*parts)
    # Finite operands: a union of translates.
    for x, y in ((a, b), (b, a)):
        if isinstance(x, Explicit):
            if not x.elements:
                return Explicit([], x.group)
            if isinstance(y, Explicit):
                sums = {e + f for e in x.elements for f in y.elements}
                return Explicit(sorted(sums))
            if len(x.elements) <= 128:
                return Union(*(Translate(y, e) for e in x.elements))
            return None
    if isinstance(a, Periodic) and isinstance(b, Periodic):
        import math
        g = math.gcd(a.modulus, b.modulus)
        residues = {(r + s) % g for r in a.residues for s in b.residues}
        return Periodic(g, residues)
    # A positive-length Sturmian set meets every residue class and every
    # half line, so these sums cover the whole line.
    def _dense_unbounded(x):
        return (isinstance(x, SturmianSet) and not x.spec.twisted
                and (x.spec.interval.full or x.spec.interval.length() > 0))

    for x, y in ((a, b), (b, a)):
        if isinstance(x, Periodic) and x.residues:
            if _dense_unbounded(y) or isinstance(y, (HalfLine, Periodic)):
                return full_line()
        if isinstance(x, HalfLine) and _dense_unbounded(y):
            return full_line()
    if isinstance(a, HalfLine) and isinstance(b, HalfLine):
        if a.sign != b.sign:
            return full_line()
        return Translate(HalfLine(a.sign), a.sign)
    if isinstance(a, SturmianSet) and isinstance(b, SturmianSet):
        return _sturmian_sum(a.spec, b.spec)
    # Half line absorbed by a bounded-below set (or mirror image).
    for x, y in ((a, b), (b, a)):
        if isinstance(x, HalfLine):
            lo, hi = support_bounds(y)
            if x.sign == 1 and lo is not None:
                m = min_element(y)
                if m is not None:
                    return Translate(HalfLine(1), m)
                return Explicit([])
            if x.sign == -1 and hi is not None:
                m = min_element(InverseSet(y))
                if m is not None:
                    return Translate(HalfLine(-1), -m)
                return Explicit([])
    return None


# ---------------------------------------------------------------------------
# Sumset windows by convolution over inflated operand windows
# ---------------------------------------------------------------------------

_DIRECT_CONV_CUTOFF = 2048


def _convolve_counts(ma: np.ndarray, mb: np.ndarray) -> np.ndarray:
    """Integer pair counts of the sumset of two masks.

    Small inputs use exact integer convolution.  Large inputs use FFT
    convolution, which is certified after the fact: entries must be
    within 0.25 of integers and the rounded total must equal
    |A| * |B| exactly; on any failure we fall back to the exact path.
    """
    if min(ma.size, mb.size) <= _DIRECT_CONV_CUTOFF:
        return np.convolve(ma.astype(np.int64), mb.astype(np.int64))
    from scipy.signal import fftconvolve
    conv = fftconvolve(ma.astype(np.float64), mb.astype(np.float64))
    counts = np.rint(conv)
    if (np.abs(conv - counts).max() < 0.25
            and int(counts.sum()) == int(ma.sum()) * int(mb.sum())):
        return counts.astype(np.int64)
    return np.convolve(ma.astype(np.int64), mb.astype(np.int64))


def _clip_interval(bounds, fallback_lo, fallback_hi):
    lo, hi = bounds
    clo = fallback_lo if lo is None else max(lo, fallback_lo)
    chi = fallback_hi if hi is None else min(hi, fallback_hi)
    return clo, chi


def sumset_window(a: SetExpr, b: SetExpr, window: IntWindow,
                  inflation: int | None = None) -> WindowSet:
    """(A + B) restricted to the window.

    Prefers an exact symbolic closure.  Otherwise enumerates operands on
    inflated windows and convolves; the result is flagged exact only
    when the support bounds certify that every witness pair was covered.
    """
    sym = try_symbolic_sumset(a, b)
    if sym is not None:
        return materialize(sym, window)
    R = inflation if inflation is not None else window.size
    sa, sb = support_bounds(a), support_bounds(b)
    if _is_empty_bounds(sa) or _is_empty_bounds(sb):
        return WindowSet(window, np.zeros(window.size, dtype=bool))

    def rel(s, other):
        olo, ohi = other
        lo = None if ohi is None else window.lo - ohi
        hi = None if olo is None else window.hi - olo
        rlo = s[0] if lo is None else (lo if s[0] is None else max(s[0], lo))
        rhi = s[1] if hi is None else (hi if s[1] is None else min(s[1], hi))
        return rlo, rhi

    rel_a = rel(sa, sb)
    rel_b = rel(sb, sa)
    if _is_empty_bounds(rel_a) or _is_empty_bounds(rel_b):
        return WindowSet(window, np.zeros(window.size, dtype=bool))
    alo, ahi = _clip_interval(rel_a, window.lo - R, window.hi + R)
    blo_needed = window.lo - ahi
    bhi_needed = window.hi - alo
    blo, bhi = _clip_interval(rel_b, blo_needed, bhi_needed)
    blo, bhi = max(blo, blo_needed), min(bhi, bhi_needed)
    if ahi < alo or bhi < blo:
        return WindowSet(window, np.zeros(window.size, dtype=bool))
    fits_a = rel_a[0] is not None and rel_a[1] is not None and alo <= rel_a[0] and rel_a[1] <= ahi
    fits_b = rel_b[0] is not None and rel_b[1] is not None and blo <= rel_b[0] and rel_b[1] <= bhi
    wa = materialize(a, IntWindow(alo, ahi))
    wb = materialize(b, IntWindow(blo, bhi))
    counts = _convolve_counts(wa.mask, wb.mask)
    # counts[i] corresponds to sum value alo + blo + i
    base = alo + blo
    mask = np.zeros(window.size, dtype=bool)
    start = max(window.lo, base)
    stop = min(window.hi, base + counts.size - 1)
    if start <= stop:
        mask[start - window.lo: stop - window.lo + 1] = counts[start - base: stop - base + 1] > 0
    exact = fits_a and fits_b and wa.exact and wb.exact
    return WindowSet(window, mask, exact=exact)


def product_window(a: SetExpr, b: SetExpr, window,
                   inflation: int | None = None,
                   operand_windows=None) -> WindowSet:
    """The product set AB restricted to a window.

    Integer-line expressions go through the sumset machinery.  For other
    groups, pre-materialized operand windows must be supplied and the
    product is enumerated pairwise; the mask is exact when the operands'
    supports are certified finite (both Explicit), else a lower bound.
    """
    if isinstance(a.group, IntLine):
        if not isinstance(window, IntWindow):
            raise GroupMismatchError("integer-line products need an integer window")
        return sumset_window(a, b, window, inflation)
    if operand_windows is None:
        raise UnsupportedQueryError(
            "products outside the integer line need pre-materialized operand windows")
    wa, wb = operand_windows
    G = a.group
    msk_a = materialize(a, wa)
    msk_b = materialize(b, wb)
    pts_a = [g for g, keep in zip(wa.points(), msk_a.mask) if keep]
    pts_b = [g for g, keep in zip(wb.points(), msk_b.mask) if keep]
    mask = np.zeros(window.size, dtype=bool)
    idx = {g: i for i, g in enumerate(window.points())}
    for x in pts_a:
        for y in pts_b:
            i = idx.get(G.op(x, y))
            if i is not None:
                mask[i] = True
    exact = isinstance(a, Explicit) and isinstance(b, Explicit)
    return WindowSet(window, mask, exact=exact)


# ---------------------------------------------------------------------------
# JSON serialization (tagged AST; fractions as "num/den" strings)
# ---------------------------------------------------------------------------


def _frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def _group_to_json(g: Group):
    if isinstance(g, IntLine):
        return {"kind": "int_line"}
    if isinstance(g, IntLattice):
        return {"kind": "int_lattice", "dim": g.dim}
    if isinstance(g, Cyclic):
        return {"kind": "cyclic", "modulus": g.modulus}
    if isinstance(g, DihedralInf):
        return {"kind": "dihedral_inf"}
    if isinstance(g, SolvablePK):
        return {"kind": "solvable_pk", "p": g.p}
    if isinstance(g, TableGroup):
        return {"kind": "finite_table", "name": g.fg.name,
                "table": g.fg.table.tolist(), "labels": g.fg.labels}
    raise PreconditionError(f"cannot serialize group {g!r}")


def _group_from_json(doc) -> Group:
    kind = doc["kind"]
    if kind == "int_line":
        return IntLine()
    if kind == "int_lattice":
        return IntLattice(doc["dim"])
    if kind == "cyclic":
        return Cyclic(doc["modulus"])
    if kind == "dihedral_inf":
        return DihedralInf()
    if kind == "solvable_pk":
        return SolvablePK(doc["p"])
    if kind == "finite_table":
        return TableGroup(FiniteGroup(doc["table"], labels=doc.get("labels"),
                                      name=doc.get("name", "G")))
    raise PreconditionError(f"unknown group kind {kind!r}")


def _element_to_json(group: Group, g):
    if isinstance(group, (IntLine, Cyclic, TableGroup)):
        return int(g)
    if isinstance(group, IntLattice):
        return list(g)
    if isinstance(group, DihedralInf):
        return [int(g[0]), int(g[1])]
    if isinstance(group, SolvablePK):
        return [_frac_str(g[0].as_fraction()), int(g[1])]
    raise PreconditionError(f"cannot serialize element of {group!r}")


def _element_from_json(group: Group, doc):
    if isinstance(group, (IntLine, Cyclic, TableGroup)):
        return int(doc)
    if isinstance(group, IntLattice):
        return tuple(int(x) for x in doc)
    if isinstance(group, DihedralInf):
        return (int(doc[0]), int(doc[1]))
    if isinstance(group, SolvablePK):
        return (PAdicRational.from_fraction(group.p, Fraction(doc[0])), int(doc[1]))
    raise PreconditionError(f"cannot parse element of {group!r}")


def _interval_to_json(iv: TorusInterval):
    if iv.full:
        return {"full": True}
    return {"lo": _frac_str(iv.lo), "hi": _frac_str(iv.hi)}


def _interval_from_json(doc) -> TorusInterval:
    if doc.get("full"):
        return TorusInterval.full_circle()
    return TorusInterval(Fraction(doc["lo"]), Fraction(doc["hi"]))


def _node_to_json(e: SetExpr):
    g = e.group
    if isinstance(e, Periodic):
        return {"type": "periodic", "modulus": e.modulus, "residues": list(e.residues)}
    if isinstance(e, HalfLine):
        return {"type": "half_line", "sign": e.sign}
    if isinstance(e, SturmianSet):
        s = e.spec
        doc = {"type": "twisted_sturmian" if s.twisted else "sturmian",
               "alpha": {"p": s.alpha.p, "q": s.alpha.q, "r": s.alpha.r, "d": s.alpha.d},
               "interval": _interval_to_json(s.interval),
               "offset_c": _frac_str(s.offset_c), "offset_m": s.offset_m}
        if s.twisted:
            doc["offset_sign"] = s.offset_sign
        return doc
    if isinstance(e, Singleton):
        return {"type": "singleton", "element": _element_to_json(g, e.elements[0])}
    if isinstance(e, Explicit):
        return {"type": "explicit", "elements": [_element_to_json(g, x) for x in e.elements]}
    if isinstance(e, Union):
        return {"type": "union", "terms": [_node_to_json(t) for t in e.terms]}
    if isinstance(e, Intersect):
        return {"type": "intersect", "terms": [_node_to_json(t) for t in e.terms]}
    if isinstance(e, Complement):
        return {"type": "complement", "term": _node_to_json(e.term)}
    if isinstance(e, Translate):
        return {"type": "translate", "term": _node_to_json(e.term),
                "by": _element_to_json(g, e.by), "side": e.side}
    if isinstance(e, InverseSet):
        return {"type": "inverse", "term": _node_to_json(e.term)}
    if isinstance(e, ProductSet):
        return {"type": "product", "left": _node_to_json(e.left),
                "right": _node_to_json(e.right)}
    if isinstance(e, Builtin):
        return {"type": "builtin", "name": e.name, "params": e.params}
    raise PreconditionError(f"cannot serialize {e!r}")


def _node_from_json(doc, group: Group) -> SetExpr:
    t = doc["type"]
    if t == "periodic":
        return Periodic(doc["modulus"], doc["residues"])
    if t == "half_line":
        return HalfLine(doc["sign"])
    if t in ("sturmian", "twisted_sturmian"):
        al = doc["alpha"]
        spec = SturmianSpec(
            QuadIrr(al["p"], al["q"], al["r"], al["d"]),
            _interval_from_json(doc["interval"]),
            Fraction(doc["offset_c"]), doc["offset_m"],
            twisted=(t == "twisted_sturmian"),
            offset_sign=doc.get("offset_sign", 1))
        return SturmianSet(spec)
    if t == "singleton":
        return Singleton(_element_from_json(group, doc["element"]), group)
    if t == "explicit":
        return Explicit([_element_from_json(group, x) for x in doc["elements"]], group)
    if t == "union":
        return Union(*(_node_from_json(d, group) for d in doc["terms"]))
    if t == "intersect":
        return Intersect(*(_node_from_json(d, group) for d in doc["terms"]))
    if t == "complement":
        return Complement(_node_from_json(doc["term"], group))
    if t == "translate":
        return Translate(_node_from_json(doc["term"], group),
                         _element_from_json(group, doc["by"]), doc.get("side", "left"))
    if t == "inverse":
        return InverseSet(_node_from_json(doc["term"], group))
    if t == "product":
        return ProductSet(_node_from_json(doc["left"], group),
                          _node_from_json(doc["right"], group))
    if t == "builtin":
        return Builtin(doc["name"], doc["params"])
    raise PreconditionError(f"unknown node type {t!r}")


def to_json(expr: SetExpr) -> dict:
    return {"group": _group_to_json(expr.group), "expr": _node_to_json(expr)}


def from_json(doc) -> SetExpr:
    if isinstance(doc, str):
        doc = json.loads(doc)
    group = _group_from_json(doc["group"])
    expr = _node_from_json(doc["expr"], group)
    if expr.group != group:
        raise GroupMismatchError("envelope group does not match expression group")
    return expr
