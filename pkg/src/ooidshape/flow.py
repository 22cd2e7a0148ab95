"""Marker simulation of the nonlocal evolution

    Gamma_t = c3 * (-1 + c1 A kappa + c2 A y cos(gamma)) * n_inward.

Explicit Euler in time, circumscribed-circle curvature, and arclength
redistribution through a periodic cubic spline.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DomainError, TopologyError
from .geometry import (
    centroid,
    hausdorff_distance,
    polyline_geometry,
    resample_uniform,
    shoelace_area,
    turning_number,
)
from .nonlocal_map import steady_residual

__all__ = [
    "FlowState",
    "FlowConfig",
    "FlowResult",
    "MIN_MARKERS",
    "geometry_of",
    "residual",
    "step",
    "evolve_to_steady",
    "circle_markers",
    "ellipse_markers",
    "markers_from_shape",
    "distance_to",
]

MIN_MARKERS = 32


@dataclass(frozen=True, eq=False)
class FlowState:
    markers: np.ndarray
    time: float = 0.0
    step_count: int = 0
    # diagnostics of the step that produced this state
    dt: float = 0.0
    max_displacement: float = 0.0

    def __post_init__(self):
        m = np.asarray(self.markers, dtype=float)
        if m.ndim != 2 or m.shape[1] != 2:
            raise DomainError("markers must be an (N, 2) array")
        if len(m) < MIN_MARKERS:
            raise DomainError(f"need at least {MIN_MARKERS} markers, got {len(m)}")
        if shoelace_area(m) < 0:
            m = m[::-1].copy()
        object.__setattr__(self, "markers", m)

    @property
    def area(self):
        return shoelace_area(self.markers)

    @property
    def diameter(self):
        d = self.markers[:, None, :] - self.markers[None, :, :]
        return float(np.sqrt((d ** 2).sum(-1).max()))

    @property
    def centroid(self):
        return centroid(self.markers)


@dataclass(frozen=True)
class FlowConfig:
    """Time stepping controls.

    The step is ``dt_safety * h_min**2 / (c3 c1 A + c3 c2 A y_max + 1)``.
    Explicit curvature motion is stable for ``dt_safety <= 0.5`` whatever
    ``c1 A`` is; larger values only stay stable while ``c1 A`` is near 1.
    """

    dt_safety: float = 0.2
    max_steps: int = 10_000
    redistribute_every: int = 1
    stop_residual: float = 1e-6

    def __post_init__(self):
        if not 0 < self.dt_safety <= 1:
            raise DomainError("dt_safety must lie in (0, 1]")
        if self.max_steps < 1:
            raise DomainError("max_steps must be >= 1")
        if self.redistribute_every < 0:
            raise DomainError("redistribute_every must be >= 0 (0 disables)")


@dataclass
class FlowResult:
    state: FlowState
    converged: bool
    # rows of (step, time, area, max_residual)
    history: list = field(default_factory=list)


def geometry_of(state):
    """Per-marker curvature, tangent inclination, height and inward normal."""
    return polyline_geometry(state.markers)


def residual(state, np_, geom=None):
    """Per-marker steady residual and its max norm."""
    geom = geometry_of(state) if geom is None else geom
    r = steady_residual(np_.c1, np_.c2, geom.area, geom.kappa, geom.y * geom.cos_gamma)
    return r, float(np.max(np.abs(r)))


def step(state, np_, cfg=FlowConfig()):
    """Advance one explicit time step along the inward normal."""
    geom = geometry_of(state)
    return _advance(state, np_, cfg, geom, *residual(state, np_, geom))


def _advance(state, np_, cfg, geom, r, rmax):
    h = float(geom.spacing.min())
    area = geom.area
    y_max = float(np.max(np.abs(geom.y)))
    c3 = np_.c3
    dt = cfg.dt_safety * h * h / (c3 * np_.c1 * area + c3 * np_.c2 * area * y_max + 1.0)
    if rmax > 0:
        dt = min(dt, 0.25 * h / (c3 * rmax))
    velocity = c3 * r
    markers = state.markers + (velocity * dt)[:, None] * geom.normal

    count = state.step_count + 1
    if cfg.redistribute_every and count % cfg.redistribute_every == 0:
        markers = resample_uniform(markers)

    new = FlowState(
        markers=markers,
        time=state.time + dt,
        step_count=count,
        dt=dt,
        max_displacement=float(np.max(np.abs(velocity))) * dt,
    )
    if shoelace_area(markers) <= 0 or turning_number(markers) != 1:
        raise TopologyError(f"polygon lost simplicity at step {count}", state=new)
    return new


def evolve_to_steady(state, np_, cfg=FlowConfig()):
    """Step until the max residual drops below ``cfg.stop_residual``.

    Nothing guarantees convergence; the history is returned either way. A
    :class:`TopologyError` carries the partial history on ``.history``.
    """
    history = []
    while True:
        geom = geometry_of(state)
        r, rmax = residual(state, np_, geom)
        history.append((state.step_count, state.time, state.area, rmax))
        if rmax < cfg.stop_residual:
            return FlowResult(state, True, history)
        if state.step_count >= cfg.max_steps:
            return FlowResult(state, False, history)
        try:
            state = _advance(state, np_, cfg, geom, r, rmax)
        except TopologyError as exc:
            exc.history = history
            raise


def circle_markers(radius, m=256, center=(0.0, 0.0)):
    t = 2 * math.pi * np.arange(m) / m + math.pi
    return np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)])


def ellipse_markers(a, b, m=256):
    """Counterclockwise markers at equal parameter steps, starting at (-a, 0)."""
    t = 2 * math.pi * np.arange(m) / m + math.pi
    return np.column_stack([a * np.cos(t), b * np.sin(t)])


def markers_from_shape(shape, m=256):
    """Equally spaced markers on a steady shape, anchored at the leftmost point."""
    return resample_uniform(shape.points, m)


def distance_to(state, points, refine=16):
    """Hausdorff distance between the marker curve and a reference polyline.

    Both curves are densified through their periodic splines first, so the
    result measures shape mismatch rather than marker spacing.
    """
    m = refine * max(len(state.markers), len(points))
    return hausdorff_distance(resample_uniform(state.markers, m), resample_uniform(points, m))
