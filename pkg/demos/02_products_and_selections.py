"""Products of posets: direct, weighted Segre, Rees, rank selection.

Run:  python demos/02_products_and_selections.py
"""

from posettop import (
    boolean,
    boolean_minus_bottom,
    chain,
    is_isomorphic,
    minors,
    mobius,
    product,
    rank_map,
    rank_select,
    rees,
    rees_as_segre,
    weighted_segre,
)

B2 = boolean(2)
print("B2 x B2 has", len(product(B2, B2)), "elements")

# The weighted Segre product keeps the pairs where the rank of the first
# coordinate equals a chosen weighting of the second.  The result also
# reports whether the Cohen-Macaulay preservation hypotheses hold.
res = weighted_segre(B2, B2, rank_map(B2))
print("Segre square of B2:", len(res.poset), "elements,",
      "hypotheses satisfied:", res.hypotheses_satisfied)
print("that poset is the submatrix poset:", is_isomorphic(res.poset, minors(2)))
print("its Moebius number:", mobius(res.poset))

# A non-strict weighting is still constructed, but flagged.
flat = weighted_segre(rank_select(B2, {0}),  # a two-element antichain
                      chain(2), {0: 0, 1: 0})
print("non-strict weighting notes:", flat.notes())

# Rank selection keeps chosen rank levels.
mid = rank_select(boolean(3), {1, 2})
print("middle levels of B3:", len(mid), "elements")

# The Rees product pairs elements whose first-coordinate rank dominates,
# with the rank-difference order.
R2 = rees(boolean_minus_bottom(2), chain(2))
print("deranged Rees poset at n=2:", len(R2), "elements")

# Every Rees product is a Segre product in disguise: the projection from
# the chain-extended Segre model is an order isomorphism.
model = rees_as_segre(boolean_minus_bottom(2), chain(2))
image = sorted(model.projection.values())
print("projection lands on:", image == sorted(R2.labels))
