"""
A width-2 adversary
===================

An exhaustive game search finds the shortest way to present a width-2
poset so that First-Fit opens three chains.
"""

# %%
from firstfit.adversary import adversary_game_value, dumps_transcript, replay

res = adversary_game_value(max_elements=10, width_cap=2, chain_target=3)
print(dumps_transcript(res.transcript))

# %%
rp = replay(res.transcript)
print("colours:", rp.colors, "chains:", rp.chains, "widest prefix:", rp.max_prefix_width)

# %%
# One more chain costs a couple more elements; width 1 never forces two.
for cap, target in [(2, 4), (3, 4), (1, 2)]:
    r = adversary_game_value(8, cap, target)
    print(f"cap={cap} target={target}: forced={r.forced} elements={len(r.transcript)}")
