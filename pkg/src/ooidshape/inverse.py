"""Recover ``(c1, c2)`` from the sampled outline of a steady shape.

On the true steady curve ``c1 A kappa + c2 A y cos(gamma) = 1`` at every
point, which is linear in the two unknowns. A least-squares fit over all
samples absorbs discretization error and noise.
"""

from dataclasses import dataclass
import warnings

import numpy as np

from .errors import DomainError
from .geometry import centroid, fourier_smooth, is_convex, polyline_geometry, shoelace_area

__all__ = ["ShapeGeometry", "Recovery", "NonConvexWarning", "estimate_geometry", "recover_params"]

MIN_POINTS = 32
_COND_LIMIT = 1e12


class NonConvexWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class ShapeGeometry:
    kappa: np.ndarray
    gamma: np.ndarray
    y: np.ndarray
    area: float
    convex: bool


@dataclass(frozen=True)
class Recovery:
    c1: float
    c2: float
    residual_norm: float
    degenerate: bool = False
    clamped: bool = False
    convex: bool = True


def estimate_geometry(points, center=True):
    """Curvature, tangent inclination and height at every sample.

    The outline is expected in its symmetry frame (major axis along x); with
    ``center=True`` it is shifted so its area centroid sits at the origin.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < MIN_POINTS:
        raise DomainError(f"need an (N, 2) outline with N >= {MIN_POINTS}")
    if shoelace_area(pts) < 0:
        pts = pts[::-1]
    if center:
        pts = pts - centroid(pts)
    convex = is_convex(pts)
    if not convex:
        warnings.warn("outline is not convex; recovered parameters are unreliable", NonConvexWarning, stacklevel=2)
    g = polyline_geometry(pts)
    return ShapeGeometry(kappa=g.kappa, gamma=g.gamma, y=g.y, area=g.area, convex=convex)


def recover_params(points, center=True, smooth_modes=None):
    """Least-squares ``(c1, c2)`` with ``c2 >= 0`` for a sampled outline.

    Curvature estimates amplify point noise by ``1/h**2``; for noisy outlines
    pass ``smooth_modes`` to low-pass the outline first (about 12 harmonics
    suit a smooth convex grain).
    """
    pts = np.asarray(points, dtype=float)
    if smooth_modes is not None:
        pts = fourier_smooth(pts, smooth_modes)
    geo = estimate_geometry(pts, center=center)
    a_col = geo.area * geo.kappa
    b_col = geo.area * geo.y * np.cos(geo.gamma)
    c1, c2, degenerate, clamped = _solve_normal(a_col, b_col)
    if degenerate:
        # columns carry no independent friction signal: circle law
        c1 = 1.0 / (geo.area * float(np.mean(geo.kappa)))
    res = -1.0 + c1 * a_col + c2 * b_col
    return Recovery(
        c1=float(c1),
        c2=float(c2),
        residual_norm=float(np.sqrt(np.mean(res * res))),
        degenerate=degenerate,
        clamped=clamped,
        convex=geo.convex,
    )


def _solve_normal(a_col, b_col):
    """Least squares for ``c1 a + c2 b = 1`` with ``c2 >= 0``.

    Returns ``(c1, c2, degenerate, clamped)``. Columns are scaled to unit norm
    before the conditioning test so that a change of length unit alone never
    flags the system as degenerate.
    """
    na, nb = np.linalg.norm(a_col), np.linalg.norm(b_col)
    if nb == 0 or na == 0:
        return (1.0 / na ** 2 * a_col.sum() if na else 0.0), 0.0, True, False
    u, v = a_col / na, b_col / nb
    m = np.array([[u @ u, u @ v], [u @ v, v @ v]])
    rhs = np.array([u.sum(), v.sum()])
    if np.linalg.cond(m) > _COND_LIMIT:
        return rhs[0] / m[0, 0] / na, 0.0, True, False
    s1, s2 = np.linalg.solve(m, rhs)
    if s2 < 0:
        return rhs[0] / m[0, 0] / na, 0.0, False, True
    return s1 / na, s2 / nb, False, False
