import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneserlab import (Cyclic, DihedralInf, FiniteGroup, IntLattice, IntLine,
                       PAdicRational, SolvablePK, cyclic_group, dihedral_group,
                       direct_product, dump_cayley_table, load_cayley_table,
                       quaternion_group, symmetric_group)
from kneserlab.errors import GroupMismatchError, ResourceLimitError
from kneserlab.groups import format_cayley_table, parse_cayley_table


def _check_axioms(G, box):
    e = G.identity()
    for g in box:
        assert G.op(g, e) == g and G.op(e, g) == g
        assert G.op(g, G.inv(g)) == e
    if len(box) <= 30:
        for a, b, c in itertools.product(box, repeat=3):
            assert G.op(G.op(a, b), c) == G.op(a, G.op(b, c))


def test_int_line():
    Z = IntLine()
    assert Z.op(2, 3) == 5
    assert Z.inv(5) == -5
    assert Z.enumerate_box(lo=-2, hi=2) == [-2, -1, 0, 1, 2]
    _check_axioms(Z, Z.enumerate_box(lo=-10, hi=10))
    with pytest.raises(GroupMismatchError):
        Z.check("x")


def test_dihedral_law():
    D = DihedralInf()
    assert D.op((1, -1), (2, 1)) == (-1, -1)
    box = D.enumerate_box(lo=0, hi=1)
    assert box == [(0, -1), (0, 1), (1, -1), (1, 1)]
    _check_axioms(D, D.enumerate_box(lo=-3, hi=3)[:28])
    # full associativity on a small ball
    ball = D.enumerate_box(lo=-2, hi=2)
    for a, b, c in itertools.product(ball[:10], ball[:10], ball[:10]):
        assert D.op(D.op(a, b), c) == D.op(a, D.op(b, c))


def test_solvable_law():
    G = SolvablePK(2)
    g = G.op(G.element(Fraction(1, 2), 1), G.element(1, 0))
    assert g[0].as_fraction() == Fraction(5, 2) and g[1] == 1
    ball = G.enumerate_box(level=1, radius=2)
    assert len(ball) == 15  # 5 x-values times 3 levels
    _check_axioms(G, ball)
    for a, b, c in itertools.product(ball, ball[:5], ball[:5]):
        assert G.op(G.op(a, b), c) == G.op(a, G.op(b, c))


def test_conjugation():
    G = SolvablePK(2)
    out = G.conjugate_set(G.element(0, 1), [G.element(Fraction(1, 2), 0)])
    assert out == [G.element(1, 0)]
    out = G.conjugate_set(G.element(0, 2),
                          [G.element(Fraction(1, 2), 0), G.element(Fraction(3, 4), 0)])
    assert out == [G.element(2, 0), G.element(3, 0)]
    # identity conjugation and round trip
    F = [G.element(Fraction(3, 8), 0), G.element(5, 2)]
    assert G.conjugate_set(G.identity(), F) == F
    g = G.element(Fraction(1, 4), 3)
    back = G.conjugate_set(G.inv(g), G.conjugate_set(g, F))
    assert back == F


def test_padic_rational():
    x = PAdicRational.from_fraction(2, Fraction(5, 8))
    assert x.valuation() == -3 and x.as_fraction() == Fraction(5, 8)
    z = PAdicRational(2)
    assert z.valuation() == float("inf")
    assert (x + (-x)) == z
    # composite base: 1/2 = 3 * 6^-1 lies in Z[1/6]
    y = PAdicRational.from_fraction(6, Fraction(1, 2))
    assert y.as_fraction() == Fraction(1, 2)
    with pytest.raises(ValueError):
        PAdicRational.from_fraction(2, Fraction(1, 3))


def test_lattice_and_cyclic():
    L = IntLattice(2)
    assert L.op((1, 2), (3, -5)) == (4, -3)
    assert len(L.enumerate_box(bounds=[(0, 2), (0, 1)])) == 6
    C = Cyclic(6)
    assert C.op(4, 5) == 3 and C.inv(2) == 4
    _check_axioms(C, C.enumerate_box())


def test_box_budget():
    Z = IntLine()
    with pytest.raises(ResourceLimitError):
        Z.enumerate_box(lo=0, hi=10 ** 9)


def test_quotients_z6():
    z6 = cyclic_group(6)
    subs = z6.subgroups()
    assert sorted(len(s) for s in subs) == [1, 2, 3, 6]
    orders = [q.order for _, q, _ in z6.quotients()]
    assert orders == [1, 2, 3, 6]
    for sub, q, proj in z6.quotients():
        for i in range(6):
            for j in range(6):
                assert proj[z6.op(i, j)] == q.op(int(proj[i]), int(proj[j]))


def test_quotients_z5_simple():
    z5 = cyclic_group(5)
    assert sorted(len(s) for s in z5.subgroups()) == [1, 5]


def test_quotients_s3():
    s3 = symmetric_group(3)
    normals = s3.normal_subgroups()
    assert sorted(len(s) for s in normals) == [1, 3, 6]
    assert len(s3.subgroups()) == 6  # {e}, 3x order-2, A3, S3


def test_group_constructors_orders():
    assert dihedral_group(4).order == 8
    assert quaternion_group().order == 8
    assert direct_product(cyclic_group(2), cyclic_group(4)).order == 8
    assert not quaternion_group().is_abelian()
    assert cyclic_group(8).is_abelian()


def test_cayley_table_roundtrip(tmp_path):
    for fg in (cyclic_group(5), symmetric_group(3), quaternion_group()):
        path = tmp_path / f"{fg.name}.cayley"
        dump_cayley_table(fg, path)
        text1 = path.read_text()
        back = load_cayley_table(path, name=fg.name)
        assert (back.table == fg.table).all()
        assert back.labels == fg.labels
        dump_cayley_table(back, path)
        assert path.read_text() == text1  # bit-exact round trip


def test_cayley_rejects_garbage():
    with pytest.raises(ValueError):
        parse_cayley_table("order 2\n0 1\n0 1\n")  # not a Latin square
    bad = format_cayley_table(cyclic_group(3)).replace("order 3", "order 2")
    with pytest.raises(ValueError):
        parse_cayley_table(bad)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50),
       st.sampled_from([-1, 1]), st.sampled_from([-1, 1]), st.sampled_from([-1, 1]))
@settings(max_examples=100, deadline=None)
def test_dihedral_associative_property(a, b, c, ea, eb, ec):
    D = DihedralInf()
    x, y, z = (a, ea), (b, eb), (c, ec)
    assert D.op(D.op(x, y), z) == D.op(x, D.op(y, z))
    assert D.op(x, D.inv(x)) == D.identity()
