"""Reading the parameters off a shape.

On a steady outline c1 A kappa + c2 A y cos(gamma) = 1 at every point, so a
linear least-squares fit recovers (c1, c2).
"""

# %%
import numpy as np

from ooidshape.inverse import recover_params
from ooidshape.nonlocal_map import NonlocalParams, solve_nonlocal

for n in (64, 128, 256, 512):
    shape = solve_nonlocal(NonlocalParams(0.2, 0.1), n)
    rec = recover_params(shape.points)
    print(f"n = {n:3d}: c1 = {rec.c1:.8f}, c2 = {rec.c2:.8f}")

# %% noisy outlines: curvature amplifies noise, so low-pass first
shape = solve_nonlocal(NonlocalParams(0.2, 0.1), 128)
rng = np.random.default_rng(0)
noisy = shape.points + 1e-4 * shape.diameter * rng.standard_normal(shape.points.shape)
# the raw noisy outline is flagged as non-convex (NonConvexWarning)
raw = recover_params(noisy)
smooth = recover_params(noisy, smooth_modes=12)
print(f"raw fit:      c1 = {raw.c1:.5f}, c2 = {raw.c2:.5f}")
print(f"12 harmonics: c1 = {smooth.c1:.5f}, c2 = {smooth.c2:.5f}")
