"""Product sets in finite groups: reductions, saturation, theorem scans.

Subsets are bit masks; the library enumerates subgroups and quotients
of a Cayley table and checks, pair by pair, the structure forced on
subsets whose product set is small.
"""

from kneserlab import (cyclic_group, dihedral_group, find_reduction,
                       format_cayley_table, indices_from_mask,
                       mask_from_indices, parse_cayley_table, product_mask,
                       quaternion_group, saturate_factor, spread_out_mask,
                       stabilizer_mask, symmetric_group, verify_kemperman,
                       verify_kneser_abelian)

z6 = cyclic_group(6)
print("Cayley-table file format (round-trips bit-exactly):")
print(format_cayley_table(cyclic_group(3)))

I = mask_from_indices([0, 2, 4])
print(f"Z6, I = {{0,2,4}}: I^-1 I = {indices_from_mask(product_mask(z6, I, I))}")
print(f"stabilizer of I: {indices_from_mask(stabilizer_mask(z6, I))}")

w = find_reduction(z6, I, I)
print(f"reduction witness: quotient of order {w.quotient.order}, "
      f"projected factors {indices_from_mask(w.left_reduced)} / "
      f"{indices_from_mask(w.right_reduced)}")

z5 = cyclic_group(5)
I5 = mask_from_indices([0, 1])
print(f"\nZ5, I = {{0,1}}: -I+I = {indices_from_mask(product_mask(z5, I5, I5))}")
print(f"saturated first factor I1 = {indices_from_mask(saturate_factor(z5, I5, I5))}"
      " (saturation adds nothing here)")

z4 = cyclic_group(4)
print(f"\nspread-out in Z4 (all proper subgroups): "
      f"{{0,1}} -> {spread_out_mask(z4, mask_from_indices([0, 1]))}, "
      f"Z4 -> {spread_out_mask(z4, (1 << 4) - 1)}")
print(f"spread-out quantified over nontrivial subgroups only: "
      f"{{0,1}} -> {spread_out_mask(z4, mask_from_indices([0, 1]), nontrivial_only=True)}, "
      f"{{0,2}} -> {spread_out_mask(z4, mask_from_indices([0, 2]), nontrivial_only=True)}")

print("\nexhaustive scans (every subset pair with a small product set):")
for fg in (z6, symmetric_group(3), dihedral_group(4), quaternion_group()):
    rep = verify_kemperman(fg)
    print(f"  {fg.name:5s}: qualifying pairs {rep['qualifying_pairs']:6d}, "
          f"violations {rep['violations']}")

print("\nexact small-doubling equality on abelian groups:")
for fg in (cyclic_group(8), cyclic_group(9), cyclic_group(10)):
    rep = verify_kneser_abelian(fg)
    print(f"  {fg.name:5s}: qualifying pairs {rep['pairs_checked']:6d}, "
          f"violations {rep['violations']}")
