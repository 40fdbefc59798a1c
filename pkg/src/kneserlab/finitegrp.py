"""Exhaustive product-set analysis on finite groups.

Subsets are bit masks (Python ints).  Per-group caches hold vectorized
translation tables over the whole mask space, so all-pairs scans over
groups of order <= 10 and sampled scans up to order 16 run in seconds.

The verification targets: small product sets reduce to proper subsets
of finite quotients (Kemperman), with the exact cardinality identity
|I^-1 J| = |I| + |J| - 1 in a quotient with trivial stabilizer in the
abelian case (Kneser), plus the closure properties of the enlarged
first factor I1 with I1^-1 J = I^-1 J.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from .groups import FiniteGroup

__all__ = [
    "MaskOps", "ReductionWitness", "product_mask", "find_reduction",
    "saturate_factor", "stabilizer_mask", "spread_out_mask",
    "verify_kneser_abelian", "verify_kemperman", "mask_from_indices",
    "indices_from_mask",
]

MAX_TABLE_ORDER = 16


def mask_from_indices(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_from_mask(mask: int):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class MaskOps:
    """Cached bit-parallel subset operations for one finite group."""

    _instances: dict = {}

    def __new__(cls, fg: FiniteGroup):
        key = id(fg)
        inst = cls._instances.get(key)
        if inst is not None:
            return inst
        inst = super().__new__(cls)
        cls._instances[key] = inst
        return inst

    def __init__(self, fg: FiniteGroup):
        if getattr(self, "_ready", False):
            return
        n = fg.order
        if n > MAX_TABLE_ORDER:
            raise ResourceLimitError(
                f"mask tables support order <= {MAX_TABLE_ORDER}, got {n}")
        self.fg = fg
        self.n = n
        self.full = (1 << n) - 1
        size = 1 << n
        tab = fg.table
        # pop[m] = |m|
        pop = np.zeros(size, dtype=np.int64)
        for b in range(n):
            half = 1 << b
            pop[half:2 * half] = pop[:half] + 1
        self.pop = pop
        # left[g][m] = g * m, right[y][m] = m * y, via subset doubling
        self.left = np.zeros((n, size), dtype=np.int64)
        self.right = np.zeros((n, size), dtype=np.int64)
        for g in range(n):
            lg, rg = self.left[g], self.right[g]
            for b in range(n):
                half = 1 << b
                lg[half:2 * half] = lg[:half] | (1 << int(tab[g, b]))
                rg[half:2 * half] = rg[:half] | (1 << int(tab[b, g]))
        # invmask[m] = {x^-1 : x in m}
        inv = fg.inv
        invmask = np.zeros(size, dtype=np.int64)
        for b in range(n):
            half = 1 << b
            invmask[half:2 * half] = invmask[:half] | (1 << int(inv[b]))
        self.invmask = invmask
        self._quotients = None
        self._subgroup_masks = None
        self._spread = {}
        self._ready = True

    # -- elementary products -------------------------------------------

    def translate_left(self, g: int, mask: int) -> int:
        return int(self.left[g][mask])

    def translate_right(self, mask: int, y: int) -> int:
        return int(self.right[y][mask])

    def inverse_mask(self, mask: int) -> int:
        return int(self.invmask[mask])

    def product(self, I: int, J: int) -> int:
        """IJ = { i j }."""
        out = 0
        for i in indices_from_mask(I):
            out |= int(self.left[i][J])
        return out

    def product_inv_left(self, I: int, J: int) -> int:
        """I^-1 J = { i^-1 j }."""
        out = 0
        inv = self.fg.inv
        for i in indices_from_mask(I):
            out |= int(self.left[int(inv[i])][J])
        return out

    def product_inv_right(self, I: int, J: int) -> int:
        """I J^-1 = { i j^-1 }."""
        return self.product(I, self.inverse_mask(J))

    def products_vs_all(self, I: int) -> np.ndarray:
        """Array over all masks J of I^-1 J."""
        inv = self.fg.inv
        rows = [self.left[int(inv[i])] for i in indices_from_mask(I)]
        if not rows:
            return np.zeros(1 << self.n, dtype=np.int64)
        return np.bitwise_or.reduce(rows)

    # -- stabilizers, subgroups, spread-out ------------------------------

    def stabilizer(self, I: int) -> int:
        out = 0
        for g in range(self.n):
            if int(self.left[g][I]) == I:
                out |= 1 << g
        return out

    def subgroup_masks(self):
        if self._subgroup_masks is None:
            self._subgroup_masks = [mask_from_indices(s) for s in self.fg.subgroups()]
        return self._subgroup_masks

    def spread_out_table(self, nontrivial_only: bool = False) -> np.ndarray:
        """Boolean array over masks: does I*U = K hold for all proper U?

        With nontrivial_only the trivial subgroup {e} is excluded from
        the quantifier; by default every proper subgroup counts, under
        which a proper subset is never spread-out.
        """
        key = bool(nontrivial_only)
        if key in self._spread:
            return self._spread[key]
        size = 1 << self.n
        ok = np.ones(size, dtype=bool)
        for u in self.subgroup_masks():
            if u == self.full:
                continue
            if nontrivial_only and self.pop[u] == 1:
                continue
            rows = [self.right[y] for y in indices_from_mask(u)]
            iu = np.bitwise_or.reduce(rows)
            ok &= iu == self.full
        self._spread[key] = ok
        return ok

    # -- quotients -------------------------------------------------------

    def quotient_views(self):
        """[(normal mask, quotient MaskOps, projection-mask table)], |M| asc."""
        if self._quotients is None:
            views = []
            for sub, q, proj in self.fg.quotients():
                prj = np.zeros(1 << self.n, dtype=np.int64)
                for b in range(self.n):
                    half = 1 << b
                    prj[half:2 * half] = prj[:half] | (1 << int(proj[b]))
                views.append((mask_from_indices(sub), MaskOps(q), prj, proj))
            self._quotients = views
        return self._quotients


def product_mask(fg: FiniteGroup, I: int, J: int, kind: str = "inv_left") -> int:
    """Exact product-set mask: I^-1 J (default), IJ, or I J^-1."""
    ops = MaskOps(fg)
    if kind == "inv_left":
        return ops.product_inv_left(I, J)
    if kind == "plain":
        return ops.product(I, J)
    if kind == "inv_right":
        return ops.product_inv_right(I, J)
    raise PreconditionError(f"unknown product kind {kind!r}")


@dataclass
class ReductionWitness:
    """A quotient pair with the same normalized product-set size.

    Records the normal subgroup, the quotient group, and the projected
    masks; verify() re-checks the containments and the measure identity
    |I^-1 J| / |K| = |Io^-1 Jo| / |M|.
    """

    normal_mask: int
    quotient: FiniteGroup
    projection: np.ndarray
    left_reduced: int
    right_reduced: int

    def verify(self, fg: FiniteGroup, I: int, J: int) -> bool:
        ops, qops = MaskOps(fg), MaskOps(self.quotient)
        for i in indices_from_mask(I):
            if not (self.left_reduced >> int(self.projection[i])) & 1:
                return False
        for j in indices_from_mask(J):
            if not (self.right_reduced >> int(self.projection[j])) & 1:
                return False
        lhs = int(ops.pop[ops.product_inv_left(I, J)]) * self.quotient.order
        rhs = int(qops.pop[qops.product_inv_left(self.left_reduced, self.right_reduced)]) * fg.order
        return lhs == rhs


def find_reduction(fg: FiniteGroup, I: int, J: int):
    """Smallest-quotient reduction of (I, J) to proper subsets, or None.

    Projects I and J to each quotient in ascending order and returns the
    first where both projections are proper and the product-set measure
    is preserved.  The identity quotient M = K is admitted.
    """
    ops = MaskOps(fg)
    prod_sz = int(ops.pop[ops.product_inv_left(I, J)])
    for nmask, qops, prj, proj in ops.quotient_views():
        Io, Jo = int(prj[I]), int(prj[J])
        if Io == qops.full or Jo == qops.full:
            continue
        qprod = qops.product_inv_left(Io, Jo)
        if prod_sz * qops.n == int(qops.pop[qprod]) * ops.n:
            w = ReductionWitness(nmask, qops.fg, proj, Io, Jo)
            if not w.verify(fg, I, J):
                raise AssertionError("reduction witness failed re-verification")
            return w
    return None


def saturate_factor(fg: FiniteGroup, I: int, J: int) -> int:
    """The largest I1 >= I with I1^-1 J = I^-1 J.

    I1^-1 is the intersection of the right translates (I^-1 J) y^-1 over
    y in J; by construction s in I1 iff s^-1 J <= I^-1 J.
    """
    if J == 0:
        raise PreconditionError("the second factor must be nonempty")
    ops = MaskOps(fg)
    P = ops.product_inv_left(I, J)
    inv = fg.inv
    acc = ops.full
    for y in indices_from_mask(J):
        acc &= ops.translate_right(P, int(inv[y]))
        if acc == 0:
            break
    return ops.inverse_mask(acc)


def stabilizer_mask(fg: FiniteGroup, I: int) -> int:
    """{ g : gI = I }, always a subgroup."""
    return MaskOps(fg).stabilizer(I)


def spread_out_mask(fg: FiniteGroup, I: int, nontrivial_only: bool = False) -> bool:
    """Does I meet every coset of every proper subgroup (I*U = K)?

    By default the trivial subgroup is included, so a proper subset of a
    finite group is never spread-out; nontrivial_only=True restricts the
    quantifier to subgroups of size >= 2.
    """
    return bool(MaskOps(fg).spread_out_table(nontrivial_only)[I])


def _qualifying_pairs_exhaustive(ops: MaskOps):
    """(I, J, |I^-1 J|) for nonempty pairs with small product set."""
    size = 1 << ops.n
    Js = np.arange(size, dtype=np.int64)
    popJ = ops.pop
    for I in range(1, size):
        prods = ops.products_vs_all(I)
        cap = np.minimum(ops.n, int(ops.pop[I]) + popJ)
        sel = (ops.pop[prods] < cap) & (Js > 0)
        for J in np.flatnonzero(sel):
            yield I, int(J), int(ops.pop[prods[J]])


def verify_kneser_abelian(fg: FiniteGroup, max_violations: int = 10) -> dict:
    """Check the exact small-doubling identity on an abelian group.

    For every nonempty pair with |I^-1 J| < min(|K|, |I| + |J|), some
    quotient M must admit projected masks with trivial stabilizer and
    |Io^-1 Jo| = |Io| + |Jo| - 1; the saturated factor then equals Io.
    Returns counts and any violations found.
    """
    if not fg.is_abelian():
        raise PreconditionError(f"{fg.name} is not abelian")
    ops = MaskOps(fg)
    checked = 0
    violations = []
    for I, J, psz in _qualifying_pairs_exhaustive(ops):
        checked += 1
        ok = False
        for nmask, qops, prj, proj in ops.quotient_views():
            Io, Jo = int(prj[I]), int(prj[J])
            if Io == qops.full or Jo == qops.full:
                continue
            qprod = qops.product_inv_left(Io, Jo)
            sz = int(qops.pop[qprod])
            if sz * ops.n != psz * qops.n:
                continue
            if sz != int(qops.pop[Io]) + int(qops.pop[Jo]) - 1:
                continue
            if qops.stabilizer(Io) != (1 << qops.fg.identity):
                continue
            if saturate_factor(qops.fg, Io, Jo) != Io:
                continue
            ok = True
            break
        if not ok and len(violations) < max_violations:
            violations.append({"I": I, "J": J})
    return {"group": fg.name, "order": fg.order, "pairs_checked": checked,
            "violations": len(violations) if violations else 0,
            "first_violations": violations, "pass": not violations}


def _check_kemperman_pair(ops: MaskOps, I: int, J: int, spread) -> str | None:
    """None if the pair satisfies all conclusions, else a reason string."""
    if spread[I]:
        return "first factor spread-out"
    if spread[J]:
        return "second factor spread-out"
    w = find_reduction(ops.fg, I, J)
    if w is None:
        return "no reduction to proper subsets"
    qops = MaskOps(w.quotient)
    Io, Jo = w.left_reduced, w.right_reduced
    I1 = saturate_factor(w.quotient, Io, Jo)
    if (I1 & Io) != Io:
        return "saturated factor does not contain the original"
    P = qops.product_inv_left(Io, Jo)
    if qops.product_inv_left(I1, Jo) != P:
        return "saturated factor changed the product set"
    # s^-1 Jo <= Io^-1 Jo must force s into the saturated factor.
    inv = w.quotient.inv
    for s in range(qops.n):
        sJ = int(qops.left[int(inv[s])][Jo])
        if (sJ | P) == P and not (I1 >> s) & 1:
            return "inclusion did not force membership in the saturated factor"
    return None


def verify_kemperman(fg: FiniteGroup, sample: int | None = None, seed: int = 0,
                     max_violations: int = 10) -> dict:
    """Scan subset pairs with small product sets for structure failures.

    Exhaustive over all nonempty pairs by default; with `sample`, that
    many pseudo-random pairs are drawn with the given seed.  For each
    qualifying pair the conclusions checked are: neither factor is
    spread-out, a reduction to proper subsets of some (possibly
    identity) quotient exists, and the saturated-factor closure
    properties hold there.
    """
    ops = MaskOps(fg)
    spread = ops.spread_out_table()
    checked = 0
    qualifying = 0
    violations = []

    def handle(I, J):
        nonlocal qualifying
        qualifying += 1
        reason = _check_kemperman_pair(ops, I, J, spread)
        if reason is not None and len(violations) < max_violations:
            violations.append({"I": I, "J": J, "reason": reason})

    if sample is None:
        checked = ((1 << ops.n) - 1) ** 2
        for I, J, _ in _qualifying_pairs_exhaustive(ops):
            handle(I, J)
    else:
        rng = np.random.default_rng(seed)
        size = 1 << ops.n
        pairs = rng.integers(1, size, size=(sample, 2), dtype=np.int64)
        for I, J in pairs:
            I, J = int(I), int(J)
            checked += 1
            psz = int(ops.pop[ops.product_inv_left(I, J)])
            if psz < ops.n and psz < int(ops.pop[I]) + int(ops.pop[J]):
                handle(I, J)
    return {"group": fg.name, "order": fg.order, "mode": "sampled" if sample else "exhaustive",
            "seed": seed if sample else None, "pairs_scanned": checked,
            "qualifying_pairs": qualifying,
            "violations": len(violations), "first_violations": violations,
            "pass": not violations}
