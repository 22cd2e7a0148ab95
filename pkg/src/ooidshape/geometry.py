"""Discrete geometry on closed polylines stored as ``(N, 2)`` arrays.

Polylines are implicitly closed (the last point connects back to the first)
and counterclockwise unless stated otherwise.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.spatial.distance import directed_hausdorff

from .errors import DegeneracyError

__all__ = [
    "PolylineGeometry",
    "shoelace_area",
    "centroid",
    "is_convex",
    "is_simple",
    "turning_number",
    "polyline_geometry",
    "resample_uniform",
    "hausdorff_distance",
    "fourier_smooth",
]


def _next(a):
    return np.concatenate((a[1:], a[:1]))


def _prev(a):
    return np.concatenate((a[-1:], a[:-1]))


def shoelace_area(points):
    """Signed polygon area (positive for counterclockwise order)."""
    x, y = points[:, 0], points[:, 1]
    return 0.5 * float(np.dot(x, _next(y)) - np.dot(_next(x), y))


def centroid(points):
    x, y = points[:, 0], points[:, 1]
    xn, yn = _next(x), _next(y)
    cross = x * yn - xn * y
    a = 0.5 * cross.sum()
    return np.array([((x + xn) * cross).sum(), ((y + yn) * cross).sum()]) / (6.0 * a)


def _edge_cross(points):
    e = _next(points) - points
    e_prev = _prev(e)
    return e_prev[:, 0] * e[:, 1] - e_prev[:, 1] * e[:, 0]


def is_convex(points, rtol=1e-12):
    """True when all consecutive edge pairs turn the same way.

    Turns with magnitude below ``rtol * diag**2`` (``diag`` the bounding-box
    diagonal) count as straight.
    """
    cross = _edge_cross(points)
    diag = float(np.hypot(*np.ptp(points, axis=0)))
    tol = rtol * diag * diag
    return bool(np.all(cross >= -tol) or np.all(cross <= tol))


def turning_number(points):
    e = _next(points) - points
    ang = np.arctan2(e[:, 1], e[:, 0])
    d = np.diff(np.append(ang, ang[0]))
    d = (d + math.pi) % (2 * math.pi) - math.pi
    return int(round(d.sum() / (2 * math.pi)))


def is_simple(points):
    """Brute-force check that no two non-adjacent edges intersect."""
    a = points
    b = _next(points)
    n = len(points)

    def orient(p, q, r):
        return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0])

    for i in range(n):
        j = np.arange(i + 2, n)
        if i == 0:
            j = j[j != n - 1]
        if len(j) == 0:
            continue
        o1 = orient(a[i], b[i], a[j])
        o2 = orient(a[i], b[i], b[j])
        o3 = orient(a[j], b[j], a[i])
        o4 = orient(a[j], b[j], b[i])
        if np.any((o1 * o2 < 0) & (o3 * o4 < 0)):
            return False
    return True


@dataclass(frozen=True, eq=False)
class PolylineGeometry:
    """Per-vertex estimates on a closed counterclockwise polyline.

    ``kappa`` is the inverse circumradius of each vertex with its two
    neighbours, signed positive on convex turns. ``gamma`` is the inclination
    of the clockwise tangent, so ``y * cos(gamma)`` is the friction factor.
    ``normal`` points inward.
    """

    kappa: np.ndarray
    gamma: np.ndarray
    y: np.ndarray
    normal: np.ndarray
    spacing: np.ndarray
    area: float

    @property
    def cos_gamma(self):
        return np.cos(self.gamma)


def polyline_geometry(points):
    prev = _prev(points)
    nxt = _next(points)
    ab = points - prev
    bc = nxt - points
    ca = nxt - prev
    lab = np.hypot(ab[:, 0], ab[:, 1])
    lbc = np.hypot(bc[:, 0], bc[:, 1])
    lca = np.hypot(ca[:, 0], ca[:, 1])
    if np.any(lab == 0) or np.any(lca == 0):
        raise DegeneracyError("coincident markers")
    cross = ab[:, 0] * bc[:, 1] - ab[:, 1] * bc[:, 0]
    kap = 2.0 * cross / (lab * lbc * lca)
    t = ca / lca[:, None]
    normal = np.column_stack([-t[:, 1], t[:, 0]])
    gamma = np.arctan2(-t[:, 1], -t[:, 0])
    return PolylineGeometry(
        kappa=kap,
        gamma=gamma,
        y=points[:, 1].copy(),
        normal=normal,
        spacing=lbc,
        area=shoelace_area(points),
    )


def resample_uniform(points, m=None):
    """Resample a closed polyline to ``m`` points equally spaced in chord length.

    A periodic cubic spline through the points (parametrized by cumulative
    chord length) is evaluated at equal steps starting from ``points[0]``.
    """
    m = len(points) if m is None else int(m)
    closed = np.vstack([points, points[:1]])
    seg = np.hypot(*np.diff(closed, axis=0).T)
    if np.any(seg == 0):
        raise DegeneracyError("coincident markers")
    s = np.concatenate([[0.0], np.cumsum(seg)])
    spline = CubicSpline(s, closed, bc_type="periodic")
    # equal steps in the spline's own arc length, measured on a finer grid
    u = np.linspace(0.0, s[-1], 8 * m + 1)
    fine = spline(u)
    arc = np.concatenate([[0.0], np.cumsum(np.hypot(*np.diff(fine, axis=0).T))])
    t = np.interp(np.linspace(0.0, arc[-1], m, endpoint=False), arc, u)
    return spline(t)


def hausdorff_distance(a, b):
    """Symmetric Hausdorff distance between two point clouds."""
    return max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0])


def fourier_smooth(points, modes):
    """Keep only harmonics ``|k| <= modes`` of the outline, taken as x + iy over sample index."""
    z = points[:, 0] + 1j * points[:, 1]
    f = np.fft.fft(z)
    k = np.fft.fftfreq(len(z), 1.0 / len(z))
    f[np.abs(k) > modes] = 0.0
    z = np.fft.ifft(f)
    return np.column_stack([z.real, z.imag])
