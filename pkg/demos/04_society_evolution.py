"""
Evolving a society along a First-Fit partition
==============================================

The groups X_1 .. X_q start as a society with t = 2(s-1) friendship slots
each.  Every chain C_j of the partition drives one transition; groups
survive by meeting the chain (alpha), having a friend that does (beta) or
by having recently met enough chains (gamma).
"""

# %%
from collections import Counter

from firstfit.generators import random_rs_free, order_strategies
from firstfit.partition import first_fit
from firstfit.poset import chain
from firstfit.society import Kind, check_trace, dumps_trace, run_evolution

# %%
# A 3-chain is one First-Fit chain; all three groups meet it, then coast on
# gamma until the alpha density drops below 1/(2t).
p = chain(3)
trace = run_evolution(p, first_fit(p, range(3)), 2, 2)
print(dumps_trace(trace))

# %%
# A bigger instance.  The last non-empty society has large groups, which
# is what turns n >= m + 2 into a bound on m.
r, s = 3, 2
p = random_rs_free(150, r, s, 0.06, seed=8)
cp = first_fit(p, order_strategies(p, "random", 8))
trace = run_evolution(p, cp, r, s)
print(f"n_elements={p.n} m={cp.m} steps={trace.n} t={trace.t} eps={trace.eps}")
print("society sizes:", [len(soc) for soc in trace.societies])
kinds = Counter(kind for hist in trace.history.values() for kind in hist)
print({k.value: kinds[k] for k in Kind})
last = trace.last_society
print("final groups and sizes:", [(k, trace.groups.size(k)) for k in last.members])
print("bound (n-2)/4t =", (trace.n - 2) / (4 * trace.t))

# %%
# Every lemma check on the finished trace.
for name, ok in check_trace(trace).items():
    print(f"{name:22s} {ok}")
