"""Marker simulation of the growth/abrasion/friction flow.

First the synthesized steady shape is checked to stay put; then a scaled
copy is released and relaxes back onto it.
"""

# %%
import math

from ooidshape.flow import FlowConfig, FlowState, circle_markers, distance_to, evolve_to_steady, markers_from_shape, residual, step
from ooidshape.nonlocal_map import NonlocalParams, solve_nonlocal

np_ = NonlocalParams(0.2, 0.1)
target = solve_nonlocal(np_, 1024)

for m in (128, 256, 512):
    state = FlowState(markers_from_shape(target, m))
    _, rmax = residual(state, np_)
    moved = step(state, np_).max_displacement / state.diameter
    print(f"{m:4d} markers: max residual {rmax:.2e}, one-step displacement/diameter {moved:.1e}")

# %% relaxation from a 10% larger copy
state = FlowState(1.1 * markers_from_shape(target, 64))
cfg = FlowConfig(dt_safety=0.9, redistribute_every=5, stop_residual=5e-3)
result = evolve_to_steady(state, np_, cfg)
for row in result.history[:: max(1, len(result.history) // 8)]:
    print("step {:5d}  t = {:8.4f}  area = {:.5f}  max residual = {:.2e}".format(*row))
d = distance_to(result.state, target.points)
print(f"converged: {result.converged}, distance to steady shape / diameter = {d / target.diameter:.1e}")

# %% circles relax to R = 1 / (pi c1)
unit = NonlocalParams(1 / math.pi, 0.0)
cfg = FlowConfig(dt_safety=0.9, max_steps=10_000, redistribute_every=5, stop_residual=1e-9)
for r0 in (1.1, 0.9):
    res = evolve_to_steady(FlowState(circle_markers(r0, 256)), unit, cfg)
    print(f"R0 = {r0}: R after {res.state.step_count} steps = {math.sqrt(res.state.area / math.pi):.5f}")
