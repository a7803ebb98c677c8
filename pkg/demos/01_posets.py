"""
Posets, width and the r+s pattern
=================================

A poset is stored as transitively closed bitset rows.  This walk-through
builds a few small ones and looks at height, width and witnesses.
"""

# %%
# Two disjoint 2-chains form the smallest poset that is not an interval order.
from firstfit.poset import (
    Poset, chain, antichain, disjoint_sum, height, width, dilworth,
    maximum_antichain, contains_r_plus_s,
)

two_plus_two = disjoint_sum(chain(2), chain(2))
print(two_plus_two, "covers:", two_plus_two.covers())

# %%
# Heights come from a longest-path pass over a topological order.
print("heights:", two_plus_two.heights, "height:", height(two_plus_two))

# %%
# Width is computed by a bipartite matching; Dilworth gives a certificate:
# a chain partition and an antichain of the same size.
dec = dilworth(two_plus_two)
print("width:", width(two_plus_two), "chains:", dec.chains, "antichain:", dec.antichain)

# %%
# The witness search reports two chains with no comparabilities between them.
print(contains_r_plus_s(two_plus_two, 2, 2))
print(contains_r_plus_s(chain(5), 2, 2))

# %%
# A slightly bigger example read from cover relations.
p = Poset.from_cover_relations(6, [(0, 2), (1, 2), (2, 3), (2, 4), (4, 5)])
print("width", width(p), "max antichain", maximum_antichain(p))
print("3+1 inside?", contains_r_plus_s(p, 3, 1))
print("antichain of 5 has width", width(antichain(5)))
