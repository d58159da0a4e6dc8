# %% [markdown]
# # Beamspace channels
#
# A user's spatial channel is a sum of a few ULA steering vectors. The
# unitary DFT matrix rotates it into beamspace, where almost all of the
# energy lands on a handful of beams.

# %%
import numpy as np

from beamsel.channel import (ChannelParams, dft_matrix, generate_spatial_channel,
                             to_beamspace)

params = ChannelParams(n_B=64, n_U=4, L=2, los_var=1.0, nlos_var=0.1, seed=0)
spatial = generate_spatial_channel(params)
H = to_beamspace(spatial).matrix

# %% [markdown]
# Path records are kept with the channel, so each row can be rebuilt.

# %%
for k, rec in enumerate(spatial.paths):
    print(f"user {k}: angles (deg) {np.degrees(rec.phi).round(1)}, "
          f"|gains| {np.abs(rec.beta).round(3)}")

# %% [markdown]
# The transform is unitary: total channel power does not change.

# %%
U = dft_matrix(params.n_B)
print("max |U U^H - I| =", np.abs(U @ U.conj().T - np.eye(params.n_B)).max())
print("||H_tilde||_F =", np.linalg.norm(spatial.matrix), " ||H||_F =", np.linalg.norm(H))

# %% [markdown]
# Beamspace sparsity: share of each user's power in its 8 strongest beams.

# %%
power = np.abs(H) ** 2
top8 = np.sort(power, axis=1)[:, -8:].sum(axis=1) / power.sum(axis=1)
print("energy in 8 strongest beams per user:", top8.round(3))
for k in range(params.n_U):
    row = power[k] / power[k].max()
    print(f"user {k} |" + "".join("#" if v > 0.25 else "+" if v > 0.02 else "."
                                   for v in row) + "|")
