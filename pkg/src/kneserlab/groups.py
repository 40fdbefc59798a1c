"""Group arithmetic for every supported group kind.

Infinite kinds (integer line/lattice, infinite dihedral, the solvable
affine group over Z[1/p]) get exact element arithmetic and finite
truncation boxes; finite groups are ingested as Cayley tables and
support exhaustive subgroup / quotient enumeration.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product as iproduct

import numpy as np

from .errors import GroupMismatchError, PreconditionError, ResourceLimitError

__all__ = [
    "PAdicRational", "IntLine", "IntLattice", "Cyclic", "DihedralInf",
    "SolvablePK", "TableGroup", "FiniteGroup", "cyclic_group",
    "direct_product", "dihedral_group", "quaternion_group",
    "symmetric_group", "alternating_group", "load_cayley_table",
    "dump_cayley_table", "parse_cayley_table", "format_cayley_table",
    "MAX_BOX_ELEMENTS",
]

# Enumeration budget; boxes larger than this raise ResourceLimitError.
# Overridable via set_max_box_elements or the KNESERLAB_MAX_BOX env var.
MAX_BOX_ELEMENTS = 20_000_000


def max_box_elements() -> int:
    return MAX_BOX_ELEMENTS


def set_max_box_elements(n: int) -> None:
    global MAX_BOX_ELEMENTS
    if n < 1:
        raise ValueError("budget must be positive")
    MAX_BOX_ELEMENTS = int(n)


class PAdicRational:
    """Exact rational of the form num * p**val with p not dividing num.

    Keeping the p-valuation explicit makes v_p queries O(1), which the
    membership tests of the solvable-group machinery rely on.
    """

    __slots__ = ("p", "num", "val")

    def __init__(self, p: int, num: int = 0, val: int = 0):
        if p < 2:
            raise ValueError("p must be >= 2")
        self.p = p
        if num == 0:
            self.num, self.val = 0, 0
            return
        while num % p == 0:
            num //= p
            val += 1
        self.num, self.val = num, val

    @classmethod
    def from_fraction(cls, p: int, x) -> "PAdicRational":
        # x must lie in Z[1/p]: its denominator must divide some p**t.
        # (For composite p the denominator need not be a power of p,
        # e.g. 1/2 = 3 * 6**-1 in Z[1/6].)
        x = Fraction(x)
        den, t = x.denominator, 0
        while den > 1:
            g = math.gcd(den, p)
            if g == 1:
                raise ValueError(f"{x} is not in Z[1/{p}]")
            den //= g
            t += 1
        num = x.numerator * p ** t // x.denominator
        return cls(p, num, -t)

    def valuation(self):
        """v_p of the value; +inf for zero."""
        return math.inf if self.num == 0 else self.val

    def as_fraction(self) -> Fraction:
        if self.val >= 0:
            return Fraction(self.num * self.p ** self.val)
        return Fraction(self.num, self.p ** (-self.val))

    def scaled(self, k: int) -> "PAdicRational":
        """The value times p**k."""
        if self.num == 0:
            return self
        return PAdicRational(self.p, self.num, self.val + k)

    def __add__(self, other: "PAdicRational") -> "PAdicRational":
        if self.p != other.p:
            raise ValueError("mixed primes")
        if self.num == 0:
            return other
        if other.num == 0:
            return self
        v = min(self.val, other.val)
        s = self.num * self.p ** (self.val - v) + other.num * self.p ** (other.val - v)
        return PAdicRational(self.p, s, v)

    def __neg__(self) -> "PAdicRational":
        return PAdicRational(self.p, -self.num, self.val)

    def __sub__(self, other: "PAdicRational") -> "PAdicRational":
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, PAdicRational):
            return self.p == other.p and self.num == other.num and self.val == other.val
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def __lt__(self, other):
        o = other.as_fraction() if isinstance(other, PAdicRational) else Fraction(other)
        return self.as_fraction() < o

    def __le__(self, other):
        o = other.as_fraction() if isinstance(other, PAdicRational) else Fraction(other)
        return self.as_fraction() <= o

    def __repr__(self):
        return f"PAdicRational({self.as_fraction()})"


class Group:
    """Common interface: op, inv, identity, membership, boxes."""

    kind = "abstract"

    def op(self, g, h):
        raise NotImplementedError

    def inv(self, g):
        raise NotImplementedError

    def identity(self):
        raise NotImplementedError

    def contains(self, g) -> bool:
        raise NotImplementedError

    def check(self, g):
        if not self.contains(g):
            raise GroupMismatchError(f"{g!r} is not an element of {self!r}")
        return g

    def conjugate_set(self, g, elems):
        """{g f g^-1 : f in elems} with duplicates removed (order kept)."""
        self.check(g)
        gi = self.inv(g)
        out, seen = [], set()
        for f in elems:
            self.check(f)
            c = self.op(self.op(g, f), gi)
            if c not in seen:
                seen.add(c)
                out.append(c)
        return out

    def enumerate_box(self, **params):
        raise NotImplementedError

    def _budget(self, size: int):
        if size > max_box_elements():
            raise ResourceLimitError(
                f"box of {size} elements exceeds budget {max_box_elements()}")

    def __eq__(self, other):
        return type(self) is type(other) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    def descriptor(self):
        return (self.kind,)

    def __repr__(self):
        return f"{type(self).__name__}()"


class IntLine(Group):
    """(Z, +)."""

    kind = "int_line"

    def op(self, g, h):
        return g + h

    def inv(self, g):
        return -g

    def identity(self):
        return 0

    def contains(self, g):
        return isinstance(g, int) and not isinstance(g, bool)

    def enumerate_box(self, lo: int, hi: int):
        self._budget(max(0, hi - lo + 1))
        return list(range(lo, hi + 1))


class IntLattice(Group):
    """(Z^d, +) with componentwise addition."""

    kind = "int_lattice"

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = dim

    def descriptor(self):
        return (self.kind, self.dim)

    def op(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def inv(self, g):
        return tuple(-a for a in g)

    def identity(self):
        return (0,) * self.dim

    def contains(self, g):
        return (isinstance(g, tuple) and len(g) == self.dim
                and all(isinstance(a, int) for a in g))

    def enumerate_box(self, bounds):
        if len(bounds) != self.dim:
            raise PreconditionError("one (lo, hi) pair per dimension")
        size = 1
        for lo, hi in bounds:
            size *= max(0, hi - lo + 1)
        self._budget(size)
        ranges = [range(lo, hi + 1) for lo, hi in bounds]
        return [tuple(v) for v in iproduct(*ranges)]

    def __repr__(self):
        return f"IntLattice({self.dim})"


class Cyclic(Group):
    """(Z/mZ, +) with residue representatives 0..m-1."""

    kind = "cyclic"

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.modulus = modulus

    def descriptor(self):
        return (self.kind, self.modulus)

    def op(self, g, h):
        return (g + h) % self.modulus

    def inv(self, g):
        return (-g) % self.modulus

    def identity(self):
        return 0

    def contains(self, g):
        return isinstance(g, int) and 0 <= g < self.modulus

    def enumerate_box(self):
        return list(range(self.modulus))

    def __repr__(self):
        return f"Cyclic({self.modulus})"


class DihedralInf(Group):
    """Infinite dihedral Z x {-1,1} with (m,e)(m',e') = (m + e m', e e')."""

    kind = "dihedral_inf"

    def op(self, g, h):
        (m, e), (m2, e2) = g, h
        return (m + e * m2, e * e2)

    def inv(self, g):
        m, e = g
        # (m,e)(m',e') = (0,1) forces e' = e and m' = -e*m.
        return (-e * m, e)

    def identity(self):
        return (0, 1)

    def contains(self, g):
        return (isinstance(g, tuple) and len(g) == 2
                and isinstance(g[0], int) and g[1] in (-1, 1))

    def enumerate_box(self, lo: int, hi: int):
        self._budget(2 * max(0, hi - lo + 1))
        return [(m, e) for m in range(lo, hi + 1) for e in (-1, 1)]


class SolvablePK(Group):
    """Z[1/p] x| Z where the integer coordinate acts by powers of p.

    Elements are (a, k) with a a PAdicRational; the law is
    (a, k)(b, l) = (a + p**k * b, k + l).
    """

    kind = "solvable_pk"

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("p must be >= 2")
        self.p = p

    def descriptor(self):
        return (self.kind, self.p)

    def element(self, a, k: int):
        """Build (a, k) from any rational a with p-power denominator."""
        return (PAdicRational.from_fraction(self.p, a), k)

    def op(self, g, h):
        (a, k), (b, l) = g, h
        return (a + b.scaled(k), k + l)

    def inv(self, g):
        a, k = g
        return ((-a).scaled(-k), -k)

    def identity(self):
        return (PAdicRational(self.p), 0)

    def contains(self, g):
        return (isinstance(g, tuple) and len(g) == 2
                and isinstance(g[0], PAdicRational) and g[0].p == self.p
                and isinstance(g[1], int))

    def enumerate_box(self, level: int, radius: int):
        """{ (j * p**-level, k) : |j| <= radius, |k| <= level }."""
        size = (2 * radius + 1) * (2 * level + 1)
        self._budget(size)
        out = []
        for k in range(-level, level + 1):
            for j in range(-radius, radius + 1):
                out.append((PAdicRational(self.p, j, -level) if j else PAdicRational(self.p), k))
        return out

    def __repr__(self):
        return f"SolvablePK({self.p})"


# ---------------------------------------------------------------------------
# Finite groups from Cayley tables
# ---------------------------------------------------------------------------


class FiniteGroup:
    """A finite group given by its Cayley table of element indices.

    The table is validated on construction: Latin square, identity,
    inverses and full associativity.
    """

    def __init__(self, table, labels=None, name: str = "G"):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("Cayley table must be square")
        n = table.shape[0]
        if n == 0 or table.min() < 0 or table.max() >= n:
            raise ValueError("table entries must be indices in [0, n)")
        self.table = table
        self.order = n
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("need one label per element")
        self.name = name
        self._validate()

    def _validate(self):
        n, t = self.order, self.table
        ids = np.arange(n)
        for i in range(n):
            if sorted(t[i]) != list(ids) or sorted(t[:, i]) != list(ids):
                raise ValueError("table rows/columns are not permutations")
        e = None
        for i in range(n):
            if np.array_equal(t[i], ids) and np.array_equal(t[:, i], ids):
                e = i
                break
        if e is None:
            raise ValueError("no identity element")
        self.identity = e
        inv = np.full(n, -1, dtype=np.int64)
        for i in range(n):
            js = np.nonzero(t[i] == e)[0]
            if len(js) != 1 or t[js[0], i] != e:
                raise ValueError("missing or one-sided inverse")
            inv[i] = js[0]
        self.inv = inv
        left = t[t.reshape(-1), :].reshape(n, n, n)   # (i*j)*k
        right = t[:, t.reshape(-1)].reshape(n, n, n)  # i*(j*k)
        if not np.array_equal(left, right):
            raise ValueError("table is not associative")

    def op(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def elements(self):
        return range(self.order)

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- subgroup lattice ----------------------------------------------

    def closure(self, gens) -> frozenset:
        cur = {self.identity} | set(gens)
        frontier = list(cur)
        while frontier:
            new = []
            for a in frontier:
                for b in list(cur):
                    for c in (self.op(a, b), self.op(b, a)):
                        if c not in cur:
                            cur.add(c)
                            new.append(c)
                ia = int(self.inv[a])
                if ia not in cur:
                    cur.add(ia)
                    new.append(ia)
            frontier = new
        return frozenset(cur)

    def subgroups(self):
        """All subgroups, found by closing generator extensions."""
        found = {frozenset([self.identity])}
        frontier = [frozenset([self.identity])]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.elements():
                    if g in h:
                        continue
                    h2 = self.closure(h | {g})
                    if h2 not in found:
                        found.add(h2)
                        nxt.append(h2)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def is_normal(self, sub: frozenset) -> bool:
        sset = set(sub)
        for g in self.elements():
            gi = int(self.inv[g])
            if {int(self.table[int(self.table[g, h]), gi]) for h in sub} != sset:
                return False
        return True

    def normal_subgroups(self):
        return [h for h in self.subgroups() if self.is_normal(h)]

    def quotients(self):
        """All (normal subgroup, quotient group, projection) triples.

        Sorted by quotient order ascending; includes the trivial
        quotient (N = G) and the identity quotient (N = {e}).
        """
        out = []
        for sub in self.normal_subgroups():
            proj, q = self._quotient_by(sub)
            out.append((sub, q, proj))
        out.sort(key=lambda t: t[1].order)
        return out

    def _quotient_by(self, sub: frozenset):
        n = self.order
        coset_of = [-1] * n
        reps = []
        for i in range(n):
            if coset_of[i] >= 0:
                continue
            idx = len(reps)
            reps.append(i)
            for h in sub:
                coset_of[int(self.table[i, h])] = idx
        m = len(reps)
        qt = np.zeros((m, m), dtype=np.int64)
        for a in range(m):
            for b in range(m):
                qt[a, b] = coset_of[int(self.table[reps[a], reps[b]])]
        labels = None
        if self.labels:
            labels = ["{" + ",".join(self.label(g) for g in sorted(
                int(self.table[reps[a], h]) for h in sub)) + "}" for a in range(m)]
        q = FiniteGroup(qt, labels=labels, name=f"{self.name}/N{len(sub)}")
        proj = np.array(coset_of, dtype=np.int64)
        return proj, q


# -- constructors -----------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(table, labels=[str(i) for i in range(n)], name=f"Z{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    na, nb = a.order, b.order
    n = na * nb
    table = np.zeros((n, n), dtype=np.int64)
    for i1 in range(na):
        for j1 in range(nb):
            for i2 in range(na):
                for j2 in range(nb):
                    table[i1 * nb + j1, i2 * nb + j2] = a.op(i1, i2) * nb + b.op(j1, j2)
    labels = [f"({a.label(i)},{b.label(j)})" for i in range(na) for j in range(nb)]
    return FiniteGroup(table, labels=labels, name=f"{a.name}x{b.name}")


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: elements s^e r^k."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = 2 * n

    def mul(x, y):
        e1, k1 = divmod(x, n)
        e2, k2 = divmod(y, n)
        # (s^e1 r^k1)(s^e2 r^k2) = s^(e1+e2) r^(k2 + (-1)^e2 k1)
        return ((e1 + e2) % 2) * n + (k2 + (k1 if e2 == 0 else -k1)) % n

    table = [[mul(x, y) for y in range(size)] for x in range(size)]
    labels = [f"r{k}" for k in range(n)] + [f"sr{k}" for k in range(n)]
    return FiniteGroup(table, labels=labels, name=f"D{n}")


def quaternion_group() -> FiniteGroup:
    """Q8 = {1, -1, i, -i, j, -j, k, -k}."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")}

    def split(x):
        return (-1, x[1:]) if x.startswith("-") else (1, x)

    def unit_mul(u, v):
        tab = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
               ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
               ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
               ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
               ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")}
        return tab[(u, v)]

    def mul(x, y):
        sx, ux = split(x)
        sy, uy = split(y)
        s, u = unit_mul(ux, uy)
        s *= sx * sy
        return u if s == 1 else "-" + u

    table = [[names.index(mul(x, y)) for y in names] for x in names]
    return FiniteGroup(table, labels=names, name="Q8")


def _perm_group(perms, name):
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            comp = tuple(p[q[x]] for x in range(len(p)))  # p after q
            table[i, j] = index[comp]
    labels = ["".join(str(x) for x in p) for p in perms]
    return FiniteGroup(table, labels=labels, name=name)


def symmetric_group(n: int) -> FiniteGroup:
    from itertools import permutations
    return _perm_group(sorted(permutations(range(n))), f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    from itertools import permutations

    def parity(p):
        inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        return inv % 2

    perms = [p for p in sorted(permutations(range(n))) if parity(p) == 0]
    return _perm_group(perms, f"A{n}")


class TableGroup(Group):
    """Adapter presenting a FiniteGroup through the Group interface."""

    kind = "finite_table"

    def __init__(self, fg: FiniteGroup):
        self.fg = fg

    def descriptor(self):
        return (self.kind, self.fg.name, self.fg.order, self.fg.table.tobytes())

    def op(self, g, h):
        return self.fg.op(g, h)

    def inv(self, g):
        return int(self.fg.inv[g])

    def identity(self):
        return self.fg.identity

    def contains(self, g):
        return isinstance(g, int) and 0 <= g < self.fg.order

    def enumerate_box(self):
        return list(self.fg.elements())

    def __repr__(self):
        return f"TableGroup({self.fg.name})"


# -- Cayley table file format ------------------------------------------
#
#   line 1:        "order n"
#   lines 2..n+1:  n rows of n zero-based indices
#   optional line: n whitespace-separated labels


def format_cayley_table(fg: FiniteGroup) -> str:
    lines = [f"order {fg.order}"]
    for i in range(fg.order):
        lines.append(" ".join(str(int(x)) for x in fg.table[i]))
    if fg.labels is not None:
        lines.append(" ".join(fg.labels))
    return "\n".join(lines) + "\n"


def parse_cayley_table(text: str, name: str = "G") -> FiniteGroup:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("order"):
        raise ValueError("first line must be 'order n'")
    n = int(lines[0].split()[1])
    if len(lines) < n + 1:
        raise ValueError(f"expected {n} table rows")
    table = [[int(tok) for tok in lines[1 + i].split()] for i in range(n)]
    if any(len(row) != n for row in table):
        raise ValueError("table rows must each contain n entries")
    labels = None
    if len(lines) > n + 1:
        labels = lines[n + 1].split()
        if len(labels) != n:
            raise ValueError("label row must contain n labels")
    return FiniteGroup(table, labels=labels, name=name)


def load_cayley_table(path, name=None) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_cayley_table(text, name=name or str(path))


def dump_cayley_table(fg: FiniteGroup, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_cayley_table(fg))
