"""The map F: c1_hat -> c1 at fixed q.

F is strictly decreasing and runs from +inf near c1_hat = 0 to 0 at the
critical value, which makes every physical c1 reachable. Close to the
critical value it decays only logarithmically.
"""

# %%
import numpy as np

from ooidshape.local import c1_crit
from ooidshape.nonlocal_map import c1_floor, invert_F, map_F, sweep

table = sweep(0.5, 16)
print(f"{'c1_hat':>12} {'area':>12} {'c1':>12}")
for c1_hat, area, c1 in table.rows:
    print(f"{c1_hat:12.6g} {area:12.6g} {c1:12.6g}")
print("strictly decreasing:", bool(np.all(np.diff(table.c1) < 0)))

# %% inversion
for c1 in (10.0, 1.0, 0.1, 0.03):
    c1_hat = invert_F(c1, 0.5)
    print(f"c1 = {c1:5g} -> c1_hat = {c1_hat:.12f} -> F = {map_F(c1_hat, 0.5):.12g}")

# %% how slowly F reaches zero
crit = c1_crit(0.5)
for gap in (1e-2, 1e-4, 1e-6, 1e-8, 1e-10):
    print(f"c1_hat = crit * (1 - {gap:g}): F = {map_F(crit * (1 - gap), 0.5):.6f}")
print(f"smallest c1 reachable in double precision at q = 0.5: {c1_floor(0.5):.6f}")
