"""The solvable-group machine: a large set A whose product with a small
B gains no density, and a right factor no periodic set controls.

Works in G = Z[1/p] x| Z where the integer coordinate dilates Z[1/p] by
powers of p.  Every membership test below is a closed form in the
p-valuation, validated elsewhere against brute-force ball products.
"""

from fractions import Fraction

from kneserlab import golden_rotation, member
from kneserlab.counterexample import CounterexampleContext, machine_report

ctx = CounterexampleContext(2)
G = ctx.group

print("the contracting mechanism: conjugation by (0, k) dilates by 2^k")
F = [G.element(Fraction(1, 2), 0), G.element(Fraction(3, 4), 0)]
g = ctx.contracting_conjugator(F)
conj = G.conjugate_set(g, F)
print(f"  F = {{1/2, 3/4}} x {{0}}, conjugator g = (0, {g[1]}), "
      f"g F g^-1 = {[(c[0].as_fraction(), c[1]) for c in conj]} (now integral)")

print("\nthe base set S = {(2^k n, k)} is thick; its difference set is sparse:")
print(f"  (0, 5) in S: {ctx.in_base_set(G.element(0, 5))}")
print(f"  (1/2, -1) in S: {ctx.in_base_set(G.element(Fraction(1, 2), -1))}")
print(f"  (1/2, 0) in S: {ctx.in_base_set(G.element(Fraction(1, 2), 0))}")
for n in (2, 4, 6, 8):
    series = dict(ctx.difference_density_series(n))
    print(f"  centered-box frequency of S^-1 S at n = {n}: {float(series[n]):.4f}")

print("\nthe pair (A, B): A on even levels inside S, B on arc-selected odd"
      "\nlevels inside the gap set, plus the identity:")
A, B = ctx.build_pair(Fraction(1, 5), golden_rotation())
print(f"  (4, 2) in A: {member(A, G.element(4, 2))}, "
      f"(2, 2) in A: {member(A, G.element(2, 2))}")
print(f"  identity in B: {member(B, G.identity())}")

rep = machine_report(2, Fraction(1, 5), golden_rotation(), 8)
up = rep["upper_proxy"]
print("\nupper-density proxies over axis-shifted boxes at scale n = 8:")
print(f"  A  : {up['left_factor']['value']:.4f}   (limit value 1/2)")
print(f"  B  : {up['right_factor']['value']:.4f}   (limit value epsilon = 1/5)")
print(f"  AB : {up['product']['value']:.4f}   (bounded by the A value: the"
      " product absorbs B)")
print(f"\nindependence defect |freq(C n D) - freq(C) freq(D)| at n = 2..8:")
for n, v in rep["independence_error_series"][1:]:
    print(f"  n = {n}: {v:.5f}")
print(f"\nmachine verdict: {'PASS' if rep['pass'] else 'FAIL'}")
