import json
from fractions import Fraction

import numpy as np
import pytest

from kneserlab import (Builtin, Complement, DihedralInf, Explicit, HalfLine,
                       Intersect, InverseSet, Periodic, ProductSet, Singleton,
                       SolvablePK, SturmianSet, SturmianSpec, TorusInterval,
                       Translate, Union, from_json, materialize, member,
                       min_element, product_window, support_bounds, to_json,
                       try_symbolic_sumset)
from kneserlab.errors import GroupMismatchError, UnsupportedQueryError
from kneserlab.setexpr import sumset_window
from kneserlab.windows import ElementsWindow, IntWindow


def _sturm(alpha, lo, hi, c=0, m=0):
    return SturmianSet(SturmianSpec(alpha, TorusInterval(Fraction(lo), Fraction(hi)),
                                    Fraction(c), m))


def test_member_basics(golden):
    evens = Periodic(2, [0])
    assert member(evens, 4) and not member(evens, 3)
    combo = Intersect(HalfLine(1), Periodic(2, [1]))
    assert member(combo, 7) and not member(combo, -3)
    st = _sturm(golden, 0, "3/10")
    assert member(st, 5) and not member(st, 7)
    with pytest.raises(UnsupportedQueryError):
        member(ProductSet(evens, evens), 0)
    with pytest.raises(GroupMismatchError):
        member(evens, "a")


def test_materialize_examples(golden):
    ws = materialize(Periodic(3, [0]), IntWindow(0, 8))
    assert list(ws.members()) == [0, 3, 6]
    ws = materialize(Complement(HalfLine(1)), IntWindow(-2, 2))
    assert list(ws.members()) == [-2, -1, 0]
    ws = materialize(_sturm(golden, 0, "3/10"), IntWindow(0, 9))
    assert list(ws.members()) == [0, 2, 5]


def test_de_morgan_pointwise(golden):
    a = _sturm(golden, 0, "3/10")
    b = Periodic(3, [0, 2])
    w = IntWindow(-300, 300)
    lhs = materialize(Complement(Union(a, b)), w).mask
    rhs = materialize(Intersect(Complement(a), Complement(b)), w).mask
    assert np.array_equal(lhs, rhs)
    lhs = materialize(Complement(Intersect(a, b)), w).mask
    rhs = materialize(Union(Complement(a), Complement(b)), w).mask
    assert np.array_equal(lhs, rhs)


def test_translate_and_inverse(golden):
    st = _sturm(golden, 0, "3/10")
    t = Translate(st, 4)
    for n in range(-30, 30):
        assert member(t, n) == member(st, n - 4)
    inv = InverseSet(st)
    w = IntWindow(-40, 40)
    assert np.array_equal(materialize(inv, w).mask, materialize(st, w).mask[::-1])


def test_product_window_trivial():
    a = Explicit([0, 1])
    b = Explicit([0, 2])
    ws = product_window(a, b, IntWindow(0, 3))
    assert list(ws.members()) == [0, 1, 2, 3] and ws.exact
    evens = Periodic(2, [0])
    ws = product_window(evens, Explicit([0, 1]), IntWindow(0, 9))
    assert ws.count == 10 and ws.exact


def test_product_window_sturmian_oracle(golden):
    a = _sturm(golden, 0, "3/10")
    ws = product_window(a, a, IntWindow(0, 20))
    inflated = materialize(a, IntWindow(-400, 420)).members()
    oracle = {int(x + y) for x in inflated for y in inflated if 0 <= x + y <= 20}
    assert set(int(v) for v in ws.members()) == oracle
    assert ws.exact  # symbolic closure applies


@pytest.mark.parametrize("mk_a,mk_b", [
    (lambda g: _sturm(g, 0, "1/5"), lambda g: Periodic(3, [1])),
    (lambda g: Intersect(_sturm(g, 0, "3/10"), HalfLine(1)),
     lambda g: Intersect(_sturm(g, 0, "3/10"), HalfLine(1))),
    (lambda g: Explicit(list(range(-7, 5, 2))), lambda g: _sturm(g, "1/10", "2/5")),
    (lambda g: Union(_sturm(g, 0, "1/5"), Periodic(5, [2])), lambda g: Explicit([0, 3])),
    (lambda g: HalfLine(1), lambda g: HalfLine(-1)),
    (lambda g: _sturm(g, 0, "1/4", c="1/3", m=2), lambda g: _sturm(g, "1/2", "3/4", m=-1)),
])
def test_product_window_pairwise_oracle(golden, mk_a, mk_b):
    a, b = mk_a(golden), mk_b(golden)
    w = IntWindow(-30, 30)
    ws = sumset_window(a, b, w)
    # O(|A||B|) oracle over generously inflated windows
    xa = materialize(a, IntWindow(-500, 500)).members()
    xb = materialize(b, IntWindow(-500, 500)).members()
    oracle = np.zeros(w.size, dtype=bool)
    for x in xa:
        ys = x + xb
        sel = ys[(ys >= w.lo) & (ys <= w.hi)]
        oracle[sel - w.lo] = True
    if ws.exact:
        assert np.array_equal(ws.mask, oracle)
    else:
        # computed mask must still dominate the oracle restricted to
        # witnesses within its clip windows; check one-sided containment
        assert np.all(oracle[~ws.mask] == False) or np.all(ws.mask[oracle] | ~oracle[oracle])


def test_translate_containment_invariant(golden):
    # a*B restricted to the window is always inside the product window
    a = _sturm(golden, 0, "3/10")
    b = Periodic(4, [1, 2])
    w = IntWindow(-50, 50)
    prod = sumset_window(a, b, w)
    for x in materialize(a, IntWindow(-20, 20)).members():
        tb = materialize(Translate(b, int(x)), w)
        assert np.all(prod.mask[tb.mask])


def test_sturmian_sum_boundary_point(golden):
    # arcs arranged so the witness intersection is the single point {1/2}
    # != 0: the naive arc-sum predicate says yes at x0, the true sumset
    # says no, and the closure must subtract that point.
    a = SturmianSpec(golden, TorusInterval(0, Fraction(1, 4)), Fraction(1, 4), 0)
    b = SturmianSpec(golden, TorusInterval(0, Fraction(1, 4)), Fraction(1, 4), 0)
    s = try_symbolic_sumset(SturmianSet(a), SturmianSet(b))
    assert s is not None
    big_a = materialize(SturmianSet(a), IntWindow(-3000, 3000)).members()
    set_a = set(int(v) for v in big_a)
    w = IntWindow(-40, 40)
    oracle = np.zeros(w.size, dtype=bool)
    for x in big_a:
        for y in big_a:
            if w.lo <= x + y <= w.hi:
                oracle[int(x + y) - w.lo] = True
    assert np.array_equal(materialize(s, w).mask, oracle)


def test_exactness_flags(golden):
    C = _sturm(golden, 0, "3/10")
    N = HalfLine(1)
    both_bounded = sumset_window(Intersect(C, N), Intersect(C, N), IntWindow(0, 500))
    assert both_bounded.exact
    one_unbounded = sumset_window(Intersect(C, N), C, IntWindow(-100, 100))
    assert not one_unbounded.exact
    # the inexact mask is still a lower approximation of the truth:
    # every flagged member has a genuine witness by construction.


def test_min_element_and_support(golden):
    C = _sturm(golden, 0, "3/10")
    A = Intersect(C, HalfLine(1))
    assert support_bounds(A) == (1, None)
    assert min_element(A) == 2  # {2a} ~ 0.236 is the first positive hit
    assert support_bounds(Explicit([3, 9])) == (3, 9)
    assert support_bounds(Complement(Explicit([]))) == (None, None)


def test_json_roundtrip_int_line(golden):
    exprs = [
        Periodic(6, [0, 2, 5]),
        Union(_sturm(golden, 0, "3/10", c="1/7", m=2), HalfLine(-1)),
        Intersect(Complement(Explicit([1, 5])), Translate(Periodic(2, [1]), 3)),
        ProductSet(_sturm(golden, 0, "1/5"), Explicit([0, 1])),
        InverseSet(Singleton(7)),
    ]
    for e in exprs:
        doc = to_json(e)
        back = from_json(json.loads(json.dumps(doc)))
        w = IntWindow(-60, 60)
        if isinstance(e, ProductSet):
            assert np.array_equal(materialize(e, w).mask, materialize(back, w).mask)
        else:
            for n in range(-60, 60):
                assert member(e, n) == member(back, n)


def test_json_roundtrip_other_groups(golden):
    tw = SturmianSet(SturmianSpec(golden, TorusInterval(0, Fraction(3, 10)),
                                  Fraction(1, 4), 1, twisted=True, offset_sign=-1))
    back = from_json(to_json(tw))
    for m in range(-10, 10):
        for e in (-1, 1):
            assert member(tw, (m, e)) == member(back, (m, e))
    G = SolvablePK(2)
    ex = Explicit([G.element(Fraction(1, 2), 3), G.element(-2, 0)], G)
    back = from_json(to_json(ex))
    assert member(back, G.element(Fraction(1, 2), 3))
    assert not member(back, G.element(1, 1))
    bi = Builtin("cx_base", {"p": 2})
    back = from_json(to_json(bi))
    assert member(back, G.element(4, 2)) and not member(back, G.element(Fraction(1, 2), 0))


def test_product_window_generic_group():
    G = SolvablePK(2)
    a = Explicit([G.element(Fraction(1, 2), 0), G.element(0, 1)], G)
    b = Explicit([G.element(1, 0)], G)
    box = ElementsWindow(G, G.enumerate_box(level=1, radius=4))
    ws = product_window(a, b, box, operand_windows=(box, box))
    got = set(ws.members())
    expect = {G.op(x, y) for x in a.elements for y in b.elements} & set(box.points())
    assert got == expect and ws.exact
