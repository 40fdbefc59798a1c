"""Acceptance gate: one test per criterion, at the stated tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL
line per criterion.  Budgeted runtimes are asserted where stated.
"""

import time
from fractions import Fraction

import numpy as np

from kneserlab import (MaskOps, SolvablePK, TorusInterval, cyclic_group,
                       direct_product, equidistribution_check,
                       folner_defect, golden_rotation, run_scenario,
                       run_suite, saturate_factor, solvable_box_family,
                       symmetric_family, verify_base_identities,
                       verify_kemperman, verify_kneser_abelian)
from kneserlab.catalog import abelian_stable, exhaustive_stable, sampled_stable
from kneserlab.counterexample import CounterexampleContext
from kneserlab.density import default_generators
from kneserlab.finitegrp import indices_from_mask


def _report(num: int, desc: str, ok: bool, extra: str = ""):
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] criterion {num:2d}: {desc}{(' | ' + extra) if extra else ''}")
    assert ok, f"criterion {num} failed: {desc} {extra}"


def test_criterion_1_equidistribution():
    t0 = time.perf_counter()
    ratio, err = equidistribution_check(golden_rotation(),
                                        TorusInterval(0, Fraction(3, 10)), 10 ** 5)
    elapsed = time.perf_counter() - t0
    ok = err <= Fraction(2, 1000) and elapsed < 1.0
    _report(1, "equidistribution |count/n - 3/10| <= 2e-3 at n = 1e5 in < 1 s",
            ok, f"err={float(err):.2e}, {elapsed:.3f}s")


def test_criterion_2_kemperman():
    t0 = time.perf_counter()
    reports = [verify_kemperman(g) for g in exhaustive_stable()]
    reports += [verify_kemperman(g, sample=10 ** 5, seed=0) for g in sampled_stable()]
    elapsed = time.perf_counter() - t0
    violations = sum(r["violations"] for r in reports)
    ok = violations == 0 and elapsed < 300.0
    _report(2, "product-set reduction scan: 0 violations, exhaustive <= 8 "
               "+ 1e5 sampled pairs for orders 9..16, < 5 min",
            ok, f"groups={len(reports)}, violations={violations}, {elapsed:.1f}s")


def test_criterion_3_kneser_abelian():
    reports = [verify_kneser_abelian(g) for g in abelian_stable(10)]
    violations = sum(r["violations"] for r in reports)
    checked = sum(r["pairs_checked"] for r in reports)
    _report(3, "exact equality with trivial stabilizer on every abelian "
               "group of order <= 10", violations == 0,
            f"groups={len(reports)}, qualifying pairs={checked}")


def test_criterion_4_saturated_factor_closure():
    groups = [cyclic_group(k) for k in range(2, 9)]
    z2 = cyclic_group(2)
    groups += [direct_product(z2, z2), direct_product(z2, cyclic_group(4)),
               direct_product(z2, direct_product(z2, z2))]
    from kneserlab import dihedral_group, quaternion_group, symmetric_group
    groups += [symmetric_group(3), dihedral_group(4), quaternion_group()]
    bad = 0
    pairs = 0
    for fg in groups:
        ops = MaskOps(fg)
        size = 1 << fg.order
        for I in range(size):
            for J in range(1, size):
                pairs += 1
                I1 = saturate_factor(fg, I, J)
                P = ops.product_inv_left(I, J)
                if (I1 & I) != I or ops.product_inv_left(I1, J) != P:
                    bad += 1
                    continue
                for s in range(fg.order):
                    sJ = int(ops.left[int(fg.inv[s])][J])
                    if ((sJ | P) == P) != bool((I1 >> s) & 1):
                        bad += 1
                        break
    _report(4, "saturated-factor closure laws on every group of order <= 8, "
               "all pairs", bad == 0, f"groups={len(groups)}, pairs={pairs}")


def test_criterion_5_superadditivity_suite():
    t0 = time.perf_counter()
    rep = run_suite(n=10 ** 6, tol=0.02)
    elapsed = time.perf_counter() - t0
    ok = rep["pass"] and elapsed < 120.0
    nonvac = sum(1 for r in rep["pairs"] if not r.get("vacuous"))
    _report(5, "lower(A+B) >= upper_banach(A) + lower(B) - 0.02 over the "
               "20-pair suite at n = 1e6, < 2 min",
            ok, f"non-vacuous pairs={nonvac}, {elapsed:.1f}s")


def test_criterion_6_appendix_scenarios():
    g = golden_rotation()
    reps = [
        run_scenario("e1", g, TorusInterval(0, Fraction(3, 10)), 10 ** 6, tol=0.01),
        run_scenario("e2", g, TorusInterval(0, Fraction(2, 5)), 10 ** 6, tol=0.01),
        run_scenario("e3", g, TorusInterval(0, Fraction(1, 5)), 10 ** 6, tol=0.01),
    ]
    ok = all(r.passed for r in reps)
    eq = next(a for a in reps[2].assertions if a["name"] == "lower(A+B) = 1.5 m")
    _report(6, "half-line scenarios e1/e2/e3 pass with tol 0.01 at n = 1e6, "
               "including the e3 equality", ok,
            f"e3 equality margin={eq['margin']:.4f}")


def test_criterion_7_base_identities():
    rep = verify_base_identities(golden_rotation(),
                                 TorusInterval(0, Fraction(3, 10)), 10 ** 6, tol=0.01)
    vals = [rep.measured[k] for k in ("lower(C n N)", "lower(C n -N)",
                                      "lower(C)", "lower((C+C) n N)")]
    targets = [0.15, 0.15, 0.3, 0.3]
    ok = rep.passed and all(abs(v - t) <= 0.01 for v, t in zip(vals, targets))
    _report(7, "base identities: four lower densities within 0.01 of "
               "m/2, m/2, m, m at n = 1e6", ok,
            "values=" + ",".join(f"{v:.4f}" for v in vals))


def test_criterion_8_machine_proxies_and_oracle():
    ctx = CounterexampleContext(2)
    G = ctx.group
    a, _, _ = ctx.density_proxy("left_factor", 8)
    arc = TorusInterval(0, Fraction(2, 5))
    b, _, _ = ctx.density_proxy("right_factor", 8, alpha=golden_rotation(), interval=arc)
    ab, _, _ = ctx.density_proxy("product", 8)
    ranges_ok = (Fraction(9, 20) <= a <= Fraction(11, 20)
                 and Fraction(3, 20) <= b <= Fraction(5, 20)
                 and ab <= Fraction(11, 20))
    # closed-form membership vs brute-force pairwise oracle on a ball of
    # <= 1e4 elements (9807 points: levels |k| <= 3, grid 2^-3, |j| <= 700)
    S = []
    for k in range(-4, 5):
        for n in range(-90, 91):
            S.append(G.op(G.element(0, k), G.element(n, 0)))
    diff = set()
    for x in S:
        xi = G.inv(x)
        for y in S:
            diff.add(G.op(xi, y))
    ball = G.enumerate_box(level=3, radius=700)
    assert len(ball) <= 10 ** 4
    oracle_ok = True
    for g in ball:
        if abs(g[0].as_fraction()) <= 10 and abs(g[1]) <= 3:
            if ctx.in_difference_set(g) != (g in diff):
                oracle_ok = False
                break
        if ctx.in_base_set(g):
            scaled = g[0].as_fraction() / Fraction(2) ** g[1]
            if not (scaled.denominator == 1):
                oracle_ok = False
                break
    ok = ranges_ok and oracle_ok
    _report(8, "machine proxies at n = 8: A in [.45,.55], B in [.15,.25], "
               "AB <= .55; closed forms match the ball oracle", ok,
            f"A={float(a):.4f}, B={float(b):.4f}, AB={float(ab):.4f}")


def test_criterion_9_independence_decay():
    ctx = CounterexampleContext(2)
    series = ctx.independence_series(8)
    vals = [v for _, v in series]
    decreasing = all(vals[i] >= vals[i + 1] for i in range(1, len(vals) - 1))
    ok = decreasing and vals[-1] <= Fraction(1, 20)
    _report(9, "independence defect decreasing over n = 2..8 and <= 0.05 "
               "at n = 8", ok, f"final={float(vals[-1]):.4f}")


def test_criterion_10_folner_defects():
    sym = symmetric_family()
    exact_ok = all(folner_defect(sym, n, 1) == Fraction(2, 2 * n + 1)
                   for n in (1, 5, 10, 100, 10 ** 4))
    fam = solvable_box_family(2)
    G = SolvablePK(2)
    mono_ok = True
    for g in default_generators(G):
        vals = [folner_defect(fam, n, g) for n in range(2, 9)]
        mono_ok &= all(vals[i] > vals[i + 1] for i in range(len(vals) - 1))
    ok = exact_ok and mono_ok
    _report(10, "defect of the shift is exactly 2/(2n+1) on [-n, n]; both "
                "solvable-box generator defects decrease for n = 2..8", ok)
