"""Ellipses are not steady.

Steadiness at the two axis endpoints pins c1 and c2; at any other point the
residual is then nonzero unless the ellipse is a circle.
"""

# %%
import math

import numpy as np

from ooidshape.ellipse import EllipseSpec, bracket_residual, ellipse_residual, forced_c1, forced_c2, max_abs_residual, residual_quarter_pi

e = EllipseSpec(2.0, 1.0)
print(f"forced c1 = {forced_c1(e):.10f} (1/(4 pi) = {1 / (4 * math.pi):.10f})")
print(f"forced c2 = {forced_c2(e):.10f} (7/(16 pi) = {7 / (16 * math.pi):.10f})")
print(f"residual at pi/4: {residual_quarter_pi(e):.12f}")

phi = np.linspace(0, math.pi / 2, 7)
for p_, a, b in zip(phi, ellipse_residual(e, phi), bracket_residual(e, phi)):
    print(f"  phi = {p_:.4f}: closed form {a:+.12f}  raw bracket {b:+.12f}")

worst, at = max_abs_residual(e, 1801)
print(f"largest |residual| {worst:.5f} at phi = {at:.4f}")

# %% the residual vanishes only as a -> b
for ratio in (1.1, 1.01, 1.001, 1.0):
    print(f"a/b = {ratio}: max |residual| = {max_abs_residual(EllipseSpec(ratio, 1.0))[0]:.3e}")
