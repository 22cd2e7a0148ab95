import math

import numpy as np
import pytest

from ooidshape.ellipse import EllipseSpec, forced_c1, forced_c2
from ooidshape.errors import DomainError, TopologyError
from ooidshape.flow import (
    FlowConfig,
    FlowState,
    circle_markers,
    distance_to,
    ellipse_markers,
    evolve_to_steady,
    geometry_of,
    markers_from_shape,
    residual,
    step,
)
from ooidshape.nonlocal_map import NonlocalParams

UNIT = NonlocalParams(1 / math.pi, 0.0)
GAMMA_STAR = NonlocalParams(0.2, 0.1)


def test_state_validation():
    with pytest.raises(DomainError):
        FlowState(circle_markers(1.0, 16))
    with pytest.raises(DomainError):
        FlowState(np.zeros((40, 3)))


def test_state_reoriented_counterclockwise():
    s = FlowState(circle_markers(1.0, 64)[::-1])
    assert s.area > 0


def test_config_validation():
    with pytest.raises(DomainError):
        FlowConfig(dt_safety=0.0)
    with pytest.raises(DomainError):
        FlowConfig(dt_safety=1.5)
    with pytest.raises(DomainError):
        FlowConfig(max_steps=0)


def test_geometry_unit_circle():
    g = geometry_of(FlowState(circle_markers(1.0, 256)))
    assert np.allclose(g.kappa, 1.0, atol=1e-3)
    assert np.allclose(np.hypot(*g.normal.T), 1.0)


def test_geometry_ellipse_major_axis():
    state = FlowState(ellipse_markers(2.0, 1.0, 256))
    g = geometry_of(state)
    # marker 0 sits at (-a, 0)
    assert g.kappa[0] == pytest.approx(2.0, rel=1e-3)


def test_inward_normals_convex_polygon():
    state = FlowState(ellipse_markers(3.0, 1.0, 128))
    g = geometry_of(state)
    to_center = state.centroid - state.markers
    assert np.all(np.sum(g.normal * to_center, axis=1) > 0)


def test_residual_unit_circle():
    _, rmax = residual(FlowState(circle_markers(1.0, 256)), UNIT)
    assert rmax < 1e-3


def test_residual_steady_shape(gamma_star):
    _, rmax = residual(FlowState(markers_from_shape(gamma_star, 256)), GAMMA_STAR)
    assert rmax < 1e-3


def test_residual_refinement_second_order(gamma_star):
    r = [residual(FlowState(markers_from_shape(gamma_star, m)), GAMMA_STAR)[1] for m in (128, 256, 512)]
    orders = np.log2(np.array(r[:-1]) / np.array(r[1:]))
    assert np.all(np.abs(orders - 2) < 0.2), orders
    assert r[-1] < 1e-4


def test_residual_ellipse_not_small():
    e = EllipseSpec(2.0, 1.0)
    r, rmax = residual(FlowState(ellipse_markers(2.0, 1.0, 256)), NonlocalParams(forced_c1(e), forced_c2(e)))
    assert rmax > 0.1
    # the marker at phi = pi/4 (index 3m/8 from (-a, 0))
    assert abs(r[96]) == pytest.approx(0.1936, abs=2e-3)


def test_steady_circle_barely_moves():
    s = FlowState(circle_markers(1.0, 256))
    nxt = step(s, UNIT)
    assert nxt.max_displacement < 1e-6
    assert nxt.step_count == 1 and nxt.time == nxt.dt > 0


def test_displacement_cap():
    s = FlowState(circle_markers(1.0, 64))
    nxt = step(s, NonlocalParams(5.0, 0.0), FlowConfig(dt_safety=1.0))
    h = 2 * math.sin(math.pi / 64)
    assert nxt.max_displacement <= 0.25 * h + 1e-15


def test_oversized_circle_shrinks():
    s = FlowState(circle_markers(2.0, 128))
    areas = [s.area]
    for _ in range(200):
        s = step(s, UNIT)
        areas.append(s.area)
    assert np.all(np.diff(areas) < 0)


def test_undersized_circle_grows():
    s = FlowState(circle_markers(0.5, 128))
    areas = [s.area]
    for _ in range(200):
        s = step(s, UNIT)
        areas.append(s.area)
    assert np.all(np.diff(areas) > 0)


def test_spacing_uniform_after_redistribution():
    s = FlowState(ellipse_markers(3.0, 1.0, 128))
    for _ in range(20):
        s = step(s, NonlocalParams(0.1, 0.05))
    seg = np.hypot(*np.diff(np.vstack([s.markers, s.markers[:1]]), axis=0).T)
    assert seg.max() < 2 * seg.mean() and seg.min() > 0.5 * seg.mean()


def anchored_reflection(markers, sx, sy):
    out = markers * np.array([sx, sy])
    if sx * sy < 0:
        # reflection reverses orientation; keep marker 0 as the anchor
        out = np.roll(out[::-1], 1, axis=0)
    return out


@pytest.mark.parametrize("sx, sy", [(1, -1), (-1, 1), (-1, -1)])
def test_mirror_equivariance(sx, sy):
    rng = np.random.default_rng(7)
    t = 2 * math.pi * np.arange(96) / 96
    base = np.column_stack([(2 + 0.1 * np.sin(3 * t)) * np.cos(t), (1 + 0.05 * np.cos(2 * t)) * np.sin(t)])
    base += 1e-3 * rng.standard_normal(base.shape)
    a = FlowState(base)
    b = FlowState(anchored_reflection(base, sx, sy))
    for _ in range(25):
        a, b = step(a, GAMMA_STAR), step(b, GAMMA_STAR)
        expected = anchored_reflection(a.markers, sx, sy)
        assert np.max(np.abs(b.markers - expected)) < 1e-10


def test_evolve_from_steady_converges_immediately(gamma_star):
    state = FlowState(markers_from_shape(gamma_star, 256))
    # the 256-marker discretization floor is about 2e-4
    result = evolve_to_steady(state, GAMMA_STAR, FlowConfig(stop_residual=1e-3))
    assert result.converged
    assert result.state.step_count <= 1
    assert result.history[0][0] == 0


def test_evolve_history_rows():
    result = evolve_to_steady(FlowState(circle_markers(1.2, 64)), UNIT, FlowConfig(max_steps=5))
    assert not result.converged
    assert [row[0] for row in result.history] == list(range(6))
    assert all(len(row) == 4 for row in result.history)


@pytest.mark.parametrize("radius", [1.1, 0.9])
def test_circle_law_recovered(radius):
    cfg = FlowConfig(dt_safety=0.9, max_steps=10_000, redistribute_every=5, stop_residual=1e-9)
    result = evolve_to_steady(FlowState(circle_markers(radius, 256)), UNIT, cfg)
    r = math.sqrt(result.state.area / math.pi)
    assert abs(r - 1.0) < 0.01


def test_scaled_steady_shape_converges(gamma_star):
    m = 64
    state = FlowState(1.1 * markers_from_shape(gamma_star, m))
    cfg = FlowConfig(dt_safety=0.9, max_steps=10_000, redistribute_every=5, stop_residual=5e-3)
    result = evolve_to_steady(state, GAMMA_STAR, cfg)
    assert result.converged
    diameter = gamma_star.diameter
    assert distance_to(result.state, gamma_star.points) < 1e-2 * diameter


def test_topology_error_carries_history():
    t = 2 * math.pi * np.arange(128) / 128
    # figure eight: turning number 0
    eight = np.column_stack([np.sin(t), np.sin(t) * np.cos(t)])
    with pytest.raises(TopologyError) as info:
        evolve_to_steady(FlowState(eight), UNIT, FlowConfig(max_steps=10))
    assert info.value.state is not None
    assert len(info.value.history) >= 1
