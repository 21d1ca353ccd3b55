"""Exact reduced homology: boundary matrices, Smith normal form, fields.

Run:  python demos/03_exact_homology.py
"""

from posettop import (
    IntegerMatrix,
    betti,
    boundary_matrices,
    check_chain_complex,
    integral_homology,
    order_complex,
    simplex_boundary,
    simplicial_complex,
    smith_normal_form,
    subword,
)

# Smith normal form with the divisibility chain.
M = IntegerMatrix.from_rows([[2, 0], [0, 3]])
print("SNF of diag(2, 3):", smith_normal_form(M).diagonal)

# Boundary matrices of the tetrahedron boundary compose to zero.
sphere = simplex_boundary(4)
mats = boundary_matrices(sphere)
print("boundary of boundary vanishes:", check_chain_complex(mats))
print("2-sphere homology:", integral_homology(sphere))

# The minimal projective plane: trivial over Q, torsion over Z,
# two-dimensional over GF(2).
rp2 = simplicial_complex(
    range(1, 7),
    [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
     (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)])
print("projective plane over Z: ", integral_homology(rp2))
print("projective plane over Q: ", betti(rp2, "Q"))
print("projective plane over F2:", betti(rp2, 2))

# Order complexes of large posets use a homology-preserving reduction
# before Smith normal form; the subword poset on four letters is a
# homology wedge of nine 3-spheres (nine = derangements of four).
K4 = order_complex(subword(4))
print("subword poset n=4:", integral_homology(K4))
