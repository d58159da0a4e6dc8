# %% [markdown]
# # Decremental beam selection and the hyperbolic bound
#
# Beams are removed one at a time, always the one whose removal least
# increases ``||H_s^+||_F^2``. The result never exceeds
# ``(n_B - n_U + 1) / (K - n_U + 1)`` times the full-channel value.

# %%
import time

import numpy as np

from beamsel import (decremental_select, decremental_select_naive,
                     exhaustive_select, hyperbola_profile, pinv_fro_norm_sq,
                     proof_identities, theorem1_bound)
from beamsel.channel import ChannelParams, generate_beamspace_channel

# %% [markdown]
# A hand-sized example: three beams, two users.

# %%
H = np.array([[1, 0, 1], [0, 1, 1]], dtype=complex)
r = decremental_select(H, 2)
print(r)
print("bound:", theorem1_bound(3, 2, 2, pinv_fro_norm_sq(H)))
print(proof_identities(H))

# %% [markdown]
# The full greedy trajectory on a mid-sized channel against the bound.

# %%
params = ChannelParams(n_B=64, n_U=8, seed=1)
H = generate_beamspace_channel(params)
full = pinv_fro_norm_sq(H)
run = decremental_select(H, params.n_U)
print(" K   greedy/full   bound/full")
for i, cost in enumerate(run.step_costs):
    K = params.n_B - 1 - i
    if K % 8 == 0:
        print(f"{K:3d} {cost / full:12.3f} {theorem1_bound(64, 8, K, full) / full:12.3f}")

prof = hyperbola_profile(256, 32)
print("full-scale hyperbola: a =", prof.a, "vertex =", prof.vertex)

# %% [markdown]
# Greedy versus exhaustive search on a small problem.

# %%
H = generate_beamspace_channel(ChannelParams(n_B=12, n_U=3, seed=2))
for K in (3, 4, 5, 6):
    g, ex = decremental_select(H, K), exhaustive_select(H, K)
    print(f"K={K}: greedy {g.final_norm_sq:.4f} optimal {ex.final_norm_sq:.4f}")

# %% [markdown]
# Sherman-Morrison downdates versus re-inverting every candidate.

# %%
H = generate_beamspace_channel(ChannelParams(n_B=256, n_U=32, seed=3))
for fn in (decremental_select, decremental_select_naive):
    t0 = time.perf_counter()
    res = fn(H, 64)
    print(f"{fn.__name__:26s} {time.perf_counter() - t0:7.3f}s  "
          f"||H_s^+||^2 = {res.final_norm_sq:.6f}")
