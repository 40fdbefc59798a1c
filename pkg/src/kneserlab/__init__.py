"""Exact density combinatorics of product sets in amenable groups.

Exact membership and density estimation for Sturmian, periodic and
product sets; brute-force verification of the Kneser/Kemperman
structure theorems on finite groups; and the solvable-group machinery
producing small product sets with uncontrolled right factors.
"""

from .quadirr import QuadIrr, golden_rotation, sqrt_rotation
from .torus import (TorusInterval, find_shift_n, interval_disjoint,
                    interval_sum, interval_translate)
from .groups import (Cyclic, DihedralInf, FiniteGroup, IntLattice, IntLine,
                     PAdicRational, SolvablePK, TableGroup, alternating_group,
                     cyclic_group, dihedral_group, direct_product,
                     dump_cayley_table, load_cayley_table, quaternion_group,
                     symmetric_group)
from .windows import DihedralWindow, ElementsWindow, IntWindow, WindowSet
from .sturmian import (SturmianSpec, equidistribution_check, frac_in_interval,
                       sturmian_members)
from .setexpr import (Builtin, Complement, Explicit, HalfLine, Intersect,
                      InverseSet, Periodic, ProductSet, SetExpr, Singleton,
                      SturmianSet, Translate, Union, from_json, materialize,
                      member, min_element, product_window, support_bounds,
                      to_json, try_symbolic_sumset)
from .density import (DensityEstimate, FolnerFamily, banach_density,
                      density_along, dihedral_family, folner_defect,
                      is_syndetic_at_scale, is_thick_at_scale,
                      positive_family, shifted_family, solvable_box_family,
                      symmetric_family)
from .finitegrp import (MaskOps, ReductionWitness, find_reduction,
                        indices_from_mask, mask_from_indices, product_mask,
                        saturate_factor, spread_out_mask, stabilizer_mask,
                        verify_kemperman, verify_kneser_abelian)
from .structure import (PeriodicWitness, detect_periodic_superset,
                        find_periodic_run, spread_out_witness_z,
                        verify_sturmian_containment)
from .counterexample import CounterexampleContext, machine_report
from .scenarios import (ScenarioReport, default_tol, run_e1, run_e2, run_e3,
                        run_scenario, verify_base_identities)
from .kneser_suite import build_suite, run_suite
from . import errors

__version__ = "0.1.0"
