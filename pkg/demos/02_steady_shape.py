"""Build a steady shape from physical parameters and save it.

The nonlocal problem (enclosed area unknown) is solved by inverting the map
c1_hat -> c1 at fixed q, then realizing the quarter arc and mirroring it.
"""

# %%
import tempfile
from pathlib import Path

import numpy as np

from ooidshape.geometry import is_convex
from ooidshape.nonlocal_map import NonlocalParams, solve_nonlocal, steady_residual
from ooidshape.shapeio import read_shape, write_shape

np_ = NonlocalParams(c1=0.2, c2=0.1)
shape = solve_nonlocal(np_, 512)
lp = shape.local_params
print(f"q = {lp.q:.6f}, c1_hat = {lp.c1_hat:.6f}, area = {shape.area:.6f}")
print(f"{len(shape.points)} points, diameter {shape.diameter:.4f}, convex: {is_convex(shape.points)}")

# %% the steady condition holds pointwise
yc = shape.points[:, 1] * np.cos(shape.gamma)
r = steady_residual(np_.c1, np_.c2, shape.area, shape.kappa, yc)
print(f"max |residual| = {np.max(np.abs(r)):.2e}")

# aspect ratio: friction flattens the grain along y
height = 2 * shape.points[:, 1].max()
print(f"aspect ratio {shape.diameter / height:.4f}")

# %% shape files are CSV with one metadata line and a JSON sidecar
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "gamma_star.shape.csv"
    write_shape(path, shape.points, shape.gamma, shape.kappa,
                {"c1": np_.c1, "c2": np_.c2, "c1_hat": lp.c1_hat, "q": lp.q, "area": shape.area})
    print(path.read_text().splitlines()[0])
    points, _, _, meta = read_shape(path)
    print(f"read back {len(points)} points, metadata {meta}")
