"""Posets from cover relations: ranks, intervals, Moebius values, duality.

Run:  python demos/01_posets_and_intervals.py
"""

from posettop import (
    augment,
    boolean,
    build_poset,
    dual,
    find_isomorphism,
    is_pure,
    mobius,
    open_interval,
    poset_to_json,
    rank_info,
)

# A poset is a list of labels plus its cover pairs; redundant pairs are
# reduced away and cycles rejected at construction.
P = build_poset(["a", "b", "c", "d"],
                [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("a", "d")])
print("diamond covers:", P.cover_pairs())

info = rank_info(P)
print("ranks:", dict(info.rank), "top rank:", info.top_rank)

# An impure poset is reported with witness chains, not an exception.
Q = build_poset("abcxy", [("a", "c"), ("b", "c"), ("a", "x"), ("x", "y")])
print("pure?", is_pure(Q), "->", rank_info(Q).message)

# The subset lattice, its proper part, and the Moebius function.
B3 = boolean(3)
print("mobius of B3:", mobius(B3))
hexagon = open_interval(B3, (), (1, 2, 3))
print("open interval (empty set, {1,2,3}) has", len(hexagon), "elements")

# Fresh bounds are always added, even to a bounded poset.
print("augmented diamond size:", len(augment(P)))

# Duality and isomorphism testing with an explicit witness.
iso = find_isomorphism(B3, dual(B3))
print("B3 is self-dual via, e.g., {1} ->", iso[(1,)])

print("\nposet JSON:")
print(poset_to_json(P), end="")
