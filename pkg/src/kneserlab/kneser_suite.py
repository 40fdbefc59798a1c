"""A fixed suite of (A, B) pairs probing the density superadditivity
bound lower(A+B) >= upper_banach(A) + lower(B) for non-thick sumsets.

A is always Sturmian (hence spread-out at scale); B is a syndetic union
of Sturmian and periodic pieces.  Pairs whose sumset is thick at scale
pass vacuously; for the rest the inequality is checked with a fixed
tolerance.  The suite is deterministic.
"""

from __future__ import annotations

from fractions import Fraction

from .density import (banach_density, density_along, is_syndetic_at_scale,
                      is_thick_at_scale, symmetric_family)
from .quadirr import QuadIrr, golden_rotation, sqrt_rotation
from .setexpr import Periodic, ProductSet, SturmianSet, Union
from .sturmian import SturmianSpec
from .torus import TorusInterval

__all__ = ["build_suite", "run_suite"]

F = Fraction


def _st(alpha: QuadIrr, lo, hi, c=0, m=0) -> SturmianSet:
    return SturmianSet(SturmianSpec(alpha, TorusInterval(F(lo), F(hi)), F(c), m))


def build_suite():
    """Twenty deterministic (name, A, B) triples."""
    g = golden_rotation()
    s2 = sqrt_rotation(2)
    s3 = sqrt_rotation(3)
    pairs = []

    def add(name, a, b):
        pairs.append((name, a, b))

    # Single Sturmian B with the same rotation number (non-thick sums).
    add("g-20-25", _st(g, 0, F(1, 5)), _st(g, 0, F(1, 4)))
    add("g-30-15", _st(g, 0, F(3, 10)), _st(g, 0, F(3, 20)))
    add("g-15-20-off", _st(g, F(1, 10), F(1, 4)), _st(g, F(1, 2), F(7, 10)))
    add("s2-20-20", _st(s2, 0, F(1, 5)), _st(s2, 0, F(1, 5)))
    add("s2-25-30", _st(s2, F(1, 8), F(3, 8)), _st(s2, 0, F(3, 10)))
    add("s3-20-25", _st(s3, 0, F(1, 5)), _st(s3, F(1, 3), F(7, 12)))
    add("g-tr-1", _st(g, 0, F(1, 5), c=F(1, 7), m=2), _st(g, 0, F(1, 4), c=F(1, 3), m=-1))
    add("s2-tr-2", _st(s2, 0, F(1, 4), m=5), _st(s2, F(1, 6), F(5, 12)))
    add("g-small", _st(g, 0, F(1, 10)), _st(g, 0, F(1, 8)))
    add("s3-tr", _st(s3, F(1, 5), F(2, 5), m=1), _st(s3, 0, F(1, 6)))

    # B a union of two Sturmian pieces (same rotation number as A).
    add("g-union-1", _st(g, 0, F(1, 5)),
        Union(_st(g, 0, F(1, 8)), _st(g, F(1, 2), F(5, 8))))
    add("g-union-2", _st(g, F(1, 4), F(9, 20)),
        Union(_st(g, 0, F(1, 10)), _st(g, F(2, 5), F(1, 2))))
    add("s2-union", _st(s2, 0, F(1, 4)),
        Union(_st(s2, 0, F(3, 20)), _st(s2, F(3, 5), F(7, 10))))
    add("s3-union", _st(s3, 0, F(3, 10)),
        Union(_st(s3, 0, F(1, 10)), _st(s3, F(1, 2), F(3, 5))))
    add("g-union-3", _st(g, 0, F(1, 6)),
        Union(_st(g, F(1, 12), F(1, 4)), _st(g, F(7, 12), F(3, 4))))
    add("g-union-wide", _st(g, 0, F(1, 8)),
        Union(_st(g, 0, F(1, 4)), _st(g, F(3, 8), F(5, 8))))

    # B containing a periodic piece: the sumset covers Z (vacuously thick).
    add("g-periodic", _st(g, 0, F(1, 4)), Periodic(2, [0]))
    add("s2-periodic", _st(s2, 0, F(1, 5)), Periodic(3, [0, 1]))
    add("g-mixed", _st(g, 0, F(1, 5)),
        Union(_st(g, 0, F(1, 8)), Periodic(4, [1])))
    add("s3-mixed", _st(s3, 0, F(1, 4)),
        Union(_st(s3, 0, F(1, 6)), Periodic(5, [0, 2])))

    assert len(pairs) == 20
    return pairs


def run_suite(n: int = 10 ** 6, tol: float = 0.02, thick_L: int = 1000,
              syndetic_gap: int = 64) -> dict:
    """Run every pair; returns per-pair rows and an overall verdict."""
    fam = symmetric_family()
    rows = []
    violations = 0
    for name, A, B in build_suite():
        AB = ProductSet(A, B)
        syndetic, max_gap = is_syndetic_at_scale(B, syndetic_gap, (-n, n))
        thick, _ = is_thick_at_scale(AB, thick_L, (-n, n))
        row = {"pair": name, "B_syndetic": bool(syndetic), "B_max_gap": max_gap,
               "AB_thick_at_scale": bool(thick)}
        if thick:
            row.update({"vacuous": True, "pass": bool(syndetic)})
        else:
            L = min(10_000, max(100, n // 100))
            dA = banach_density(A, "upper", L, (-n, n)).value
            dB = density_along(B, fam, n)[1].value
            dAB = density_along(AB, fam, n)[1].value
            ok = dAB >= dA + dB - tol
            row.update({"vacuous": False, "upper(A)": dA, "lower(B)": dB,
                        "lower(A+B)": dAB, "margin": dAB - (dA + dB) + tol,
                        "pass": bool(ok and syndetic)})
        if not row["pass"]:
            violations += 1
        rows.append(row)
    return {"n": n, "tol": tol, "pairs": rows,
            "violations": violations, "pass": violations == 0}
