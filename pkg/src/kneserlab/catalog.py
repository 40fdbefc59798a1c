"""Standard finite-group stables used by the verification commands."""

from __future__ import annotations

from .groups import (FiniteGroup, alternating_group, cyclic_group,
                     dihedral_group, direct_product, quaternion_group,
                     symmetric_group)

__all__ = ["exhaustive_stable", "sampled_stable", "abelian_stable"]


def exhaustive_stable():
    """Groups scanned over all subset pairs: every group of order 3..8
    except Z2^3 appears in the canonical list; Z2^3 is covered by the
    abelian stable and the unit tests."""
    z2 = cyclic_group(2)
    return [
        cyclic_group(2), cyclic_group(3), cyclic_group(4), cyclic_group(5),
        cyclic_group(6), cyclic_group(7), cyclic_group(8),
        direct_product(z2, z2), direct_product(z2, cyclic_group(4)),
        symmetric_group(3), dihedral_group(4), quaternion_group(),
    ]


def sampled_stable():
    """Representative groups of order 9..16 for seeded random pair scans."""
    z2 = cyclic_group(2)
    return [
        cyclic_group(9), cyclic_group(10), cyclic_group(12),
        cyclic_group(15), cyclic_group(16),
        direct_product(cyclic_group(3), cyclic_group(3)),
        direct_product(z2, cyclic_group(8)),
        direct_product(cyclic_group(4), cyclic_group(4)),
        dihedral_group(5), dihedral_group(6), dihedral_group(8),
        alternating_group(4),
    ]


def abelian_stable(max_order: int = 10):
    """All abelian groups of order 2..max_order up to isomorphism (<= 10)."""
    z2 = cyclic_group(2)
    groups = [
        cyclic_group(2), cyclic_group(3), cyclic_group(4),
        direct_product(z2, z2), cyclic_group(5), cyclic_group(6),
        cyclic_group(7), cyclic_group(8), direct_product(z2, cyclic_group(4)),
        direct_product(z2, direct_product(z2, z2)), cyclic_group(9),
        direct_product(cyclic_group(3), cyclic_group(3)), cyclic_group(10),
    ]
    return [g for g in groups if g.order <= max_order]
