"""Cohen-Macaulay analysis: verdicts, failures, and preservation.

Run:  python demos/04_cohen_macaulay.py
"""

from posettop import (
    boolean,
    build_poset,
    chain,
    cm_preservation_suite,
    face_poset,
    is_cm_complex,
    is_cm_poset,
    simplicial_complex,
    weighted_segre,
)

print(is_cm_poset(boolean(3), "Q").describe())

# The known counterexample: a non-strict weighting produces the disjoint
# union of two edges, which is not Cohen-Macaulay.  The failure report
# names the offending interval and dimension.
bad = weighted_segre(build_poset("ab", []), chain(2), {0: 0, 1: 0}).poset
report = is_cm_poset(bad, "Q")
print(report.describe())

# Field dependence: the projective plane's face poset is CM over Q but
# not over GF(2); integrally it fails the spherical (torsion-free) test.
rp2 = simplicial_complex(
    range(1, 7),
    [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
     (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)])
P = face_poset(rp2)
for coeffs in ("Q", 2, "z-spherical"):
    print(f"  over {coeffs}:", "CM" if is_cm_poset(P, coeffs) else "not CM")

print("complex-level check, two disjoint edges:",
      is_cm_complex(simplicial_complex(range(4), [[0, 1], [2, 3]]), "Q").verdict)

# The preservation suite applies weighted Segre products, Rees products
# and rank selections to verified seeds; a defect here would contradict
# a theorem, hence indicate an implementation bug.
suite = cm_preservation_suite(fields=("Q", 2))
print("\npreservation suite:")
print(suite.describe())
