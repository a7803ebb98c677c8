"""
First-Fit against the linear bound
==================================

On (r+s)-free posets First-Fit never uses more than 8(r-1)(s-1)w chains.
Here we sample such posets, try several presentation orders and compare.
"""

# %%
from firstfit.generators import random_rs_free, random_interval_order, order_strategies, ORDER_STRATEGIES
from firstfit.partition import first_fit, ff_ratio, dumps_partition
from firstfit.poset import width

# %%
# The hand example: 0<1 and 2<3 presented as 0, 3, 1, 2.
from firstfit.poset import chain, disjoint_sum
print(dumps_partition(first_fit(disjoint_sum(chain(2), chain(2)), (0, 3, 1, 2))))

# %%
# A sweep over (r, s) and order strategies.
for r, s in [(2, 2), (2, 3), (3, 3), (4, 2)]:
    p = random_rs_free(120, r, s, 0.08, seed=r * 10 + s)
    for strategy in ORDER_STRATEGIES:
        res = ff_ratio(p, order_strategies(p, strategy, seed=1), r, s)
        print(f"r={r} s={s} n={p.n:3d} {strategy:18s} m={res.m:3d} w={res.w:3d} bound={res.bound:4d} ratio={res.ratio}")

# %%
# Interval orders are exactly the 2+2-free posets, so the bound is 8w.
worst = 0
for seed in range(50):
    p = random_interval_order(150, seed)
    m = first_fit(p, order_strategies(p, "random", seed)).m
    worst = max(worst, m / width(p))
print("largest m/w over 50 interval orders:", round(worst, 3), "(bound 8)")
