"""Curvature profile of a steady grain.

Walks through the Dawson function, the curvature as a function of height and
the points that matter on it: the zero y0 and the top point ybar.
"""

# %% the Dawson function and its maximum
import numpy as np

from ooidshape.local import LocalParams, c1_crit, cos_gamma, find_y0, find_ybar, kappa
from ooidshape.specfun import dawson, dawson_maximizer, quadrature_oracle

z0 = dawson_maximizer()
print(f"D(x) peaks at x = {z0:.12f} with D = {dawson(z0):.12f}")

# cross-check one value against brute-force quadrature
x = 1.3
ref = quadrature_oracle(lambda t: np.exp(t * t - x * x), 0.0, x, 1e-13)
print(f"D({x}) = {dawson(x):.15f}   quadrature: {ref:.15f}")

# %% curvature against height for c1_hat = 1, q = 0.5
p = LocalParams(1.0, 0.5)
y0 = find_y0(p)
ybar = find_ybar(p)
print(f"kappa(0) = {kappa(0.0, p):.6f}, zero at y0 = {y0:.6f} (= z0 / q = {z0 / p.q:.6f})")
print(f"top point at ybar = {ybar:.6f}, where cos(gamma) = {cos_gamma(ybar, p):.15f}")

for y in np.linspace(0, 2 * y0, 9):
    print(f"  y = {y:6.3f}  kappa = {kappa(y, p):+.6f}")

# %% the critical c1_hat: beyond it the curvature integral never reaches 1
for q in (0.25, 0.5, 1.0, 2.0):
    print(f"q = {q:4.2f}: critical c1_hat = {c1_crit(q):.6f}")
