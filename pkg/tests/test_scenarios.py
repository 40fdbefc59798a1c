from fractions import Fraction

import numpy as np
import pytest

from kneserlab import (HalfLine, Intersect, ProductSet, Singleton, SturmianSet,
                       SturmianSpec, TorusInterval, Union, find_shift_n,
                       golden_rotation, materialize, run_e1, run_e2, run_e3,
                       run_scenario, sqrt_rotation, verify_base_identities)
from kneserlab.errors import PreconditionError
from kneserlab.windows import IntWindow

N_FAST = 10 ** 5


def test_base_identities(golden, arc_3_10):
    rep = verify_base_identities(golden, arc_3_10, N_FAST)
    assert rep.passed
    assert set(rep.measured) >= {"lower(C n N)", "lower(C n -N)", "lower(C)",
                                 "lower((C+C) n N)"}


def test_base_identities_wider_arc(golden):
    rep = verify_base_identities(golden, TorusInterval(0, Fraction(2, 5)), N_FAST)
    assert rep.passed
    assert abs(rep.measured["lower((C+C) n N)"] - 0.4) <= rep.tol


def test_base_identities_full_circle(golden):
    rep = verify_base_identities(golden, TorusInterval.full_circle(), 10 ** 4)
    assert rep.measured["lower(C)"] == 1.0
    # the sumset check only applies below measure 1/2
    assert "lower((C+C) n N)" not in rep.measured


def test_e1(golden, arc_3_10):
    rep = run_e1(golden, arc_3_10, N_FAST)
    assert rep.passed
    assert rep.measured["AB_thick_witness"] is not None


def test_e1_smaller_arc(golden):
    rep = run_e1(golden, TorusInterval(0, Fraction(1, 5)), N_FAST)
    assert rep.passed
    # 0.7 < 0.8 shape: lower(A+B) <= 0.7 + tol < 0.8 = upper(A) + lower(B)
    assert rep.measured["lower(A+B)"] <= 0.2 + 0.5 + rep.tol


def test_e1_precondition(golden):
    with pytest.raises(PreconditionError):
        run_e1(golden, TorusInterval(0, Fraction(17, 50)), 10 ** 4)


def test_e2(golden):
    rep = run_e2(golden, TorusInterval(0, Fraction(2, 5)), N_FAST)
    assert rep.passed
    assert abs(rep.measured["lower(B)"] - 0.2) <= rep.tol


def test_e2_smaller(golden):
    rep = run_e2(golden, TorusInterval(0, Fraction(1, 5)), N_FAST)
    assert rep.passed


def test_e2_precondition(golden):
    with pytest.raises(PreconditionError):
        run_e2(golden, TorusInterval(0, Fraction(1, 2)), 10 ** 4)


def test_e3_golden(golden):
    rep = run_e3(golden, TorusInterval(0, Fraction(1, 5)), N_FAST)
    assert rep.passed
    assert rep.measured["n0"] == 1
    assert abs(rep.measured["lower(A+B)"] - 0.3) <= rep.tol


def test_e3_sqrt2():
    rep = run_e3(sqrt_rotation(2), TorusInterval(0, Fraction(1, 5)), N_FAST)
    assert rep.passed


def test_e3_precondition(golden):
    with pytest.raises(PreconditionError):
        run_e3(golden, TorusInterval(0, Fraction(17, 50)), 10 ** 4)


def test_e3_sumset_identity(golden):
    # on positive windows the computed A+B equals (B+B) u (n0 + B)
    iv = TorusInterval(0, Fraction(1, 5))
    n0 = find_shift_n(golden, iv, 50)
    C = SturmianSet(SturmianSpec(golden, iv))
    B = Intersect(C, HalfLine(1))
    A = Union(B, Singleton(n0))
    w = IntWindow(n0 + 2, 10 ** 4)
    left = materialize(ProductSet(A, B), w).mask
    bb = materialize(ProductSet(B, B), w).mask
    shifted = materialize(ProductSet(Singleton(n0), B), w).mask
    assert np.array_equal(left, bb | shifted)


def test_margins_stable_under_doubling(golden, arc_3_10):
    # rerun with n doubled: positive margins must not shrink by > 50%
    for name, iv in (("e1", arc_3_10), ("e2", TorusInterval(0, Fraction(2, 5))),
                     ("e3", TorusInterval(0, Fraction(1, 5)))):
        r1 = run_scenario(name, golden, iv, 50_000)
        r2 = run_scenario(name, golden, iv, 100_000)
        m1 = {a["name"]: a["margin"] for a in r1.assertions}
        for a in r2.assertions:
            base = m1[a["name"]]
            if base > 1e-9:
                assert a["margin"] >= 0.5 * base, (name, a["name"])


def test_report_assertions_list_both_sides(golden, arc_3_10):
    rep = run_e1(golden, arc_3_10, 10 ** 4)
    for a in rep.assertions:
        assert isinstance(a["lhs"], float) and isinstance(a["rhs"], float)
    doc = rep.to_json()
    assert doc["scenario"] == "e1" and "assertions" in doc
