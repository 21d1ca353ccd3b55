"""The derangement story: subword posets, fiber ideals, and the
four-way Moebius identity.

Run:  python demos/06_derangement_homology.py        (about a minute)
"""

from posettop import (
    derangements,
    falling_chains_segre_square,
    fiber_ideal,
    flag_vector_boolean,
    integral_homology,
    minors,
    mobius,
    no_common_ascent_pairs,
    order_complex,
    rees_deranged,
    reduced_euler,
    subword,
    support_descents,
)

# Words with distinct letters under subword order; the support/descent
# projection lands in the deranged Rees poset of the same rank.
K4 = subword(4)
print("subword poset n=4:", len(K4), "elements;",
      "phi('1423') =", support_descents("1423"))

# Both posets carry free homology of derangement rank in top dimension.
for n in (3, 4):
    hk = integral_homology(order_complex(subword(n)))
    hr = integral_homology(order_complex(rees_deranged(n)))
    print(f"n={n}: subword {hk}; deranged Rees {hr}; D_{n} = {derangements(n)}")

# The fibers of the projection over principal ideals are word ideals
# whose reduced Euler characteristic always vanishes; their homology can
# still be nonzero (the (5, 3) ideal carries rank six in two dimensions).
fi = fiber_ideal(5, range(1, 6), 3)
K = order_complex(fi.poset)
print("word ideal (5, 3):", len(fi.poset), "words,",
      "fiber = generated ideal:", fi.consistent)
print("  euler:", reduced_euler(K), " homology:", integral_homology(K))

# Four derivations of one number: the Moebius number of the Segre square
# of the subset lattice, the no-common-ascent pairs, the falling chains,
# and the flag-vector convolution.
for n in (1, 2, 3, 4):
    values = ((-1) ** n * mobius(minors(n)),
              no_common_ascent_pairs(n),
              falling_chains_segre_square(n),
              flag_vector_boolean(n).alpha_beta_sum())
    print(f"n={n}:", values)
