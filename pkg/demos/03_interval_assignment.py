"""
Interval assignment and groups
==============================

Each element x gets the integer interval I(x) = {h(x), ..., b(x) - 1}.
Level sets X_k of these intervals have height below r, and incomparable
elements get intervals at most s - 2 apart.
"""

# %%
from firstfit.generators import random_rs_free
from firstfit.intervals import (
    assign_intervals, build_groups, compute_b, dumps_intervals,
    property_1_violations, property_2_violations,
)
from firstfit.poset import chain, disjoint_sum

# %%
# On a 3-chain with r=2 every interval is a single level.
print(compute_b(chain(3), 2))
print(dumps_intervals(assign_intervals(chain(3), 2)))

# %%
# A random 3+3-free poset: both properties hold.
p = random_rs_free(80, 3, 3, 0.1, seed=4)
ia = assign_intervals(p, 3)
gf = build_groups(ia)
print("q =", gf.q, "group sizes:", [len(g) for g in gf.groups])
print("violations:", property_1_violations(p, ia, 3), property_2_violations(p, ia, 3))

# %%
# Feed in a poset that contains 2+2 and property (2) can break.
bad = disjoint_sum(chain(2), chain(3))
ia = assign_intervals(bad, 2)
print(dumps_intervals(ia))
print("pairs too far apart:", property_2_violations(bad, ia, 2))
