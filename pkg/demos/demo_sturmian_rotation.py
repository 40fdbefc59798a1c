"""Exact irrational-rotation sets: membership, windows, equidistribution.

Everything here is decided with integer arithmetic: the rotation number
is a quadratic irrational (p + q*sqrt(d))/r and arc membership reduces
to sign tests, so no orbit point is ever misclassified.
"""

from fractions import Fraction

import numpy as np

from kneserlab import (SturmianSpec, TorusInterval, equidistribution_check,
                       frac_in_interval, golden_rotation, sqrt_rotation,
                       sturmian_members)
from kneserlab.windows import IntWindow

alpha = golden_rotation()
arc = TorusInterval(0, Fraction(3, 10))
print(f"rotation number alpha = (sqrt(5)-1)/2 ~ {float(alpha):.10f}")
print(f"arc I = [0, 3/10], measure {arc.length()}")

# Single-point decisions are exact.  {7 alpha} = 0.32624... misses the
# arc by 0.026; a float test at lower precision could get this wrong,
# the sign test cannot.
for n in (0, 2, 5, 7):
    print(f"  {{{n}*alpha}} in I ? {frac_in_interval(n, alpha, arc)}")

# A window of the Sturmian set C = {n : {n alpha} in I}.
spec = SturmianSpec(alpha, arc)
ws = sturmian_members(spec, IntWindow(0, 60))
members = ws.members()
print(f"\nC on [0, 60]: {list(members)}")

gaps = sorted(set(int(g) for g in np.diff(members)))
print(f"gap values (three-distance theorem allows at most 3): {gaps}")

# Orbit counts converge to the arc measure at speed log(n)/n for
# rotation numbers with bounded continued-fraction digits.
print("\nequidistribution of the orbit against the arc measure:")
for n in (10 ** 3, 10 ** 4, 10 ** 5):
    ratio, err = equidistribution_check(alpha, arc, n)
    print(f"  n = {n:>7}: count/n = {float(ratio):.6f},"
          f"  |count/n - 3/10| = {float(err):.2e}")

# Other quadratic rotation numbers work the same way.
beta = sqrt_rotation(2)
ratio, err = equidistribution_check(beta, TorusInterval(0, Fraction(1, 4)), 10 ** 5)
print(f"\nsqrt(2)-1 rotation, arc [0, 1/4]: count/n = {float(ratio):.6f}, "
      f"err = {float(err):.2e}")
