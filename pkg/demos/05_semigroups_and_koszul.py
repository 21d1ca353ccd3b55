"""Affine semigroups: divisibility intervals and the Koszul criterion.

Run:  python demos/05_semigroups_and_koszul.py
"""

from posettop import (
    build_semigroup,
    chain,
    is_isomorphic,
    koszul_necessary_test,
    lower_interval,
    natural_semigroup,
    punctured_veronese_semigroup,
    rees_semigroup,
    segre_semigroup,
)

# A homogeneous semigroup: generators on a common affine hyperplane.
N2 = natural_semigroup(2)
print("layer sizes of N^2:", [len(x) for x in N2.enumerate_up_to(3)])

# Divisibility intervals are graded by degree and always self-dual.
P = lower_interval(N2, (2, 1))
print("interval below (2, 1):", len(P), "elements")

# The poset criterion for Koszulness: every open interval (0, x) must be
# pure with homology concentrated in degree(x) - 2.  Verified up to a
# rank bound; this is a necessary condition, never a certificate.
print(koszul_necessary_test(N2, 4).describe())

# The degree-3 punctured Veronese semigroup (all degree-3 vectors in N^3
# except (1,1,1)) passes the criterion up to rank 3.
L3 = punctured_veronese_semigroup(3)
print("generators:", len(L3.generators))
print(koszul_necessary_test(L3, 3).describe())

# Weighted Segre product as a lazy view: the doubled grading on the
# second factor carves out the Veronese pairs (2m, m).
N = build_semigroup([(1,)])
view = segre_semigroup(N, N, (2,))
print("Veronese pairs up to degree 3:", view.enumerate_up_to(3))
print("its interval below ((4,), (2,)) is a chain:",
      is_isomorphic(view.lower_interval(((4,), (2,))), chain(3)))

# The Rees product semigroup is honestly finitely generated in degree 1.
R = rees_semigroup(N, N)
print("Rees semigroup of N with N, layer 3:", R.enumerate_up_to(3)[3])
print(koszul_necessary_test(R, 3).describe())
