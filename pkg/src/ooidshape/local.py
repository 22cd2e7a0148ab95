"""Steady states of the local equation (enclosed area absorbed into the constants).

With ``c1_hat = c1 * A`` and ``q = sqrt(c2 / (2 c1))`` the smooth steady
solution has curvature, as a function of the height ``y`` above the major
axis,

    kappa(y) = (1 - 2 q y D(q y)) / c1_hat,

and tangent inclination ``gamma(y) = arccos(D(q y) / (q c1_hat))``. A quarter
arc from the leftmost point P (vertical tangent) to the top point Q
(horizontal tangent) is built here and mirrored into a closed D2-symmetric
curve.
"""

from dataclasses import dataclass, field
import functools
import math

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DegenerateLimitError,
    DomainError,
    InvariantError,
    NoZeroError,
    NotRealizableError,
)
from .geometry import is_convex, shoelace_area
from .specfun import dawson, dawson_maximizer

__all__ = [
    "LocalParams",
    "CurveSegment",
    "SteadyShape",
    "kappa",
    "cos_gamma",
    "gamma_of_y",
    "cumulative_curvature",
    "find_y0",
    "c1_crit",
    "in_chi_q",
    "find_ybar",
    "realize_segment",
    "segment_area",
    "assemble_shape",
    "DEFAULT_SAMPLES",
    "MIN_SAMPLES",
]

DEFAULT_SAMPLES = 256
MIN_SAMPLES = 16
# relative band around the critical value treated as the degenerate limit
_CRIT_RTOL = 1e-12
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class LocalParams:
    """Parameters ``(c1_hat, q)`` of the local equation; ``c2_hat`` is derived."""

    c1_hat: float
    q: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.c1_hat) and self.c1_hat > 0):
            raise DomainError(f"c1_hat must be positive and finite, got {self.c1_hat!r}")
        if not (math.isfinite(self.q) and self.q >= 0):
            raise DomainError(f"q must be non-negative and finite, got {self.q!r}")

    @classmethod
    def from_hats(cls, c1_hat, c2_hat):
        if not c2_hat >= 0:
            raise DomainError("c2_hat must be non-negative")
        return cls(c1_hat, math.sqrt(c2_hat / (2.0 * c1_hat)))

    @property
    def c2_hat(self):
        return 2.0 * self.q * self.q * self.c1_hat


def _check_y(y):
    arr = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("y must be finite")
    if np.any(arr < 0):
        raise DomainError("y must be non-negative")
    return arr


def _scalar_or_array(out):
    return float(out) if np.ndim(out) == 0 else out


def _kappa_even(y, p):
    # valid for negative y too (kappa is even); used by finite differences
    y = np.asarray(y, dtype=float)
    if p.q == 0:
        return np.full_like(y, 1.0 / p.c1_hat) if y.ndim else 1.0 / p.c1_hat
    z = p.q * y
    return (1.0 - 2.0 * z * dawson(z)) / p.c1_hat


def kappa(y, p):
    """Curvature of the steady curve at height ``y >= 0``."""
    y = _check_y(y)
    return _scalar_or_array(_kappa_even(y, p))


def cumulative_curvature(y, p):
    """``integral_0^y kappa`` in closed form, with no range check.

    For ``q > 0`` this is ``D(q y) / (q c1_hat)``; for ``q = 0`` it is
    ``y / c1_hat``.
    """
    y = _check_y(y)
    if p.q == 0:
        return _scalar_or_array(y / p.c1_hat)
    return _scalar_or_array(dawson(p.q * y) / (p.q * p.c1_hat))


def cos_gamma(y, p):
    """cos of the tangent inclination at height ``y`` on the arc P..Q."""
    ybar = find_ybar(p)
    y = _check_y(y)
    if np.any(y > ybar * (1.0 + 1e-12)):
        raise DomainError(f"y exceeds the height of the top point ({ybar:.17g}); cos(gamma) > 1")
    return _scalar_or_array(np.minimum(cumulative_curvature(y, p), 1.0))


def gamma_of_y(y, p):
    return _scalar_or_array(np.arccos(cos_gamma(y, p)))


@functools.lru_cache(maxsize=256)
def find_y0(p):
    """First (and only) positive zero of the curvature profile."""
    if p.q == 0:
        raise NoZeroError("q = 0: curvature is constant and never vanishes")
    return brentq(lambda y: _kappa_even(y, p), 0.5 / p.q, 1.5 / p.q, xtol=1e-300, rtol=4 * _EPS)


def c1_crit(q):
    """Largest ``c1_hat`` for which the integrated curvature reaches 1 by ``y0``."""
    if not (math.isfinite(q) and q > 0):
        raise DomainError("critical c1_hat is only defined for q > 0")
    return dawson(dawson_maximizer()) / q


def in_chi_q(p):
    return p.q == 0 or p.c1_hat <= c1_crit(p.q)


def _check_realizable(p):
    if p.q == 0:
        return
    crit = c1_crit(p.q)
    if p.c1_hat > crit * (1.0 + _CRIT_RTOL):
        raise NotRealizableError(
            f"c1_hat={p.c1_hat:.17g} exceeds the critical value {crit:.17g} for q={p.q:.17g}"
        )
    if p.c1_hat >= crit * (1.0 - _CRIT_RTOL):
        raise DegenerateLimitError(
            f"c1_hat={p.c1_hat:.17g} equals the critical value; the steady curve is unbounded"
        )


@functools.lru_cache(maxsize=256)
def find_ybar(p):
    """Height of the top point Q, where the integrated curvature reaches 1."""
    _check_realizable(p)
    if p.q == 0:
        return p.c1_hat
    y0 = find_y0(p)
    return brentq(lambda y: cumulative_curvature(y, p) - 1.0, 0.0, y0, xtol=1e-300, rtol=4 * _EPS)


def _z_of_target(target, zmax, iters=100):
    """Solve ``D(z) = target`` for z in [0, zmax] on the rising branch of D.

    Safeguarded Newton (D' = 1 - 2 z D); falls back to bisection whenever a
    step leaves the bracket.
    """
    lo = np.zeros_like(target)
    hi = np.full_like(target, zmax)
    z = np.clip(target, 0.0, zmax)
    for _ in range(iters):
        d = dawson(z)
        f = d - target
        lo = np.where(f < 0, z, lo)
        hi = np.where(f > 0, z, hi)
        deriv = 1.0 - 2.0 * z * d
        with np.errstate(divide="ignore", invalid="ignore"):
            z_new = z - f / deriv
        bad = ~np.isfinite(z_new) | (z_new <= lo) | (z_new >= hi)
        z_new = np.where(bad, 0.5 * (lo + hi), z_new)
        done = np.abs(z_new - z) <= 2 * _EPS * np.maximum(np.abs(z), 1e-300)
        z = z_new
        if np.all(done | (f == 0)):
            break
    return z


def _height_of_gamma(gamma, p, ybar):
    c = np.cos(gamma)
    if p.q == 0:
        return p.c1_hat * c
    z = _z_of_target(p.q * p.c1_hat * c, p.q * ybar)
    y = z / p.q
    y[gamma == 0.0] = ybar
    return y


@dataclass(frozen=True, eq=False)
class CurveSegment:
    """Sampled quarter arc from P (``gamma = pi/2``) to Q (``gamma = 0``).

    Coordinates put Q on the positive y axis and P on the negative x axis.
    Midpoint values between consecutive samples are kept for the fourth-order
    integration rules.
    """

    params: LocalParams
    gamma: np.ndarray
    y: np.ndarray
    kappa: np.ndarray
    x: np.ndarray
    area_bar: float
    y_bar: float
    y_mid: np.ndarray = field(repr=False)
    kappa_mid: np.ndarray = field(repr=False)

    @property
    def n(self):
        return len(self.gamma)

    @property
    def samples(self):
        return list(zip(self.y, self.gamma, self.kappa, self.x))


def _stepwise_simpson(f, f_mid, h):
    """Per-interval Simpson integrals (``h`` holds the signed steps)."""
    return h / 6.0 * (f[:-1] + 4.0 * f_mid + f[1:])


def _spike_width(p, ybar):
    """Width in gamma of the peak of ``1/kappa`` next to Q.

    Near the critical value the curvature at Q is small and the arc turns
    through its last few degrees over a long stretch; the integrands of x and
    of the area peak over ``gamma ~ kappa(Q) sqrt(3 / |kappa'(Q)|)``.
    """
    if p.q == 0:
        return math.pi / 2
    z = p.q * ybar
    d = dawson(z)
    k_top = (1.0 - 2.0 * z * d) / p.c1_hat
    slope = 2.0 * p.q * (d + z * (1.0 - 2.0 * z * d)) / p.c1_hat
    # a vanishing slope (tiny q) means a wide peak: the uniform grid suffices
    if slope < 1e-300:
        return math.pi / 2
    return min(k_top * math.sqrt(3.0 / slope), math.pi / 2)


def _gamma_grid(p, ybar, n):
    """Samples from pi/2 down to 0: uniform unless the peak at Q needs grading.

    The first step next to Q is kept below a sixteenth of the peak width; when
    the uniform step is too coarse the grid becomes ``sinh`` graded toward 0.
    """
    s = np.linspace(1.0, 0.0, n)
    ratio = _spike_width(p, ybar) * (n - 1) / (8.0 * math.pi)
    if ratio >= 1.0:
        gamma = math.pi / 2 * s
    else:
        alpha = brentq(lambda a: a / math.sinh(a) - ratio, 1e-6, 700.0)
        gamma = math.pi / 2 * np.sinh(alpha * s) / math.sinh(alpha)
    gamma[0], gamma[-1] = math.pi / 2, 0.0
    return gamma


def segment_area(seg):
    """Area between the arc P..Q and the x axis.

    Evaluated as ``integral_0^{pi/2} y(gamma) cos(gamma) / kappa(gamma)``.
    """
    if np.any(seg.kappa[:-1] <= 0) or np.any(seg.kappa_mid <= 0):
        raise InvariantError("non-positive curvature inside the arc")
    g = seg.gamma
    h = -np.diff(g)
    g_mid = 0.5 * (g[:-1] + g[1:])
    f = seg.y * np.cos(g) / seg.kappa
    f_mid = seg.y_mid * np.cos(g_mid) / seg.kappa_mid
    return float(math.fsum(_stepwise_simpson(f, f_mid, h)))


def realize_segment(p, n=DEFAULT_SAMPLES):
    """Build the quarter arc for strictly realizable local parameters.

    The arc is parametrized by the tangent inclination, on a uniform grid
    except close to the critical value where it is graded toward Q; ``x``
    comes from integrating ``dx/dgamma = -cos(gamma) / kappa``, which stays
    finite at Q as long as ``c1_hat`` is strictly below the critical value.
    """
    if int(n) != n or n < MIN_SAMPLES:
        raise DomainError(f"need at least {MIN_SAMPLES} samples, got {n!r}")
    n = int(n)
    ybar = find_ybar(p)
    gamma = _gamma_grid(p, ybar, n)
    g_mid = 0.5 * (gamma[:-1] + gamma[1:])
    y = _height_of_gamma(gamma, p, ybar)
    y[0] = 0.0
    y_mid = _height_of_gamma(g_mid, p, ybar)
    kap = np.asarray(_kappa_even(y, p), dtype=float)
    kap_mid = np.asarray(_kappa_even(y_mid, p), dtype=float)
    if np.any(kap[:-1] <= 0):
        raise InvariantError("curvature vanished before the top point")

    h = -np.diff(gamma)
    # x(gamma) = -integral_0^gamma cos/kappa, accumulated from Q backwards to P
    pieces = _stepwise_simpson(np.cos(gamma) / kap, np.cos(g_mid) / kap_mid, h)
    x = np.zeros(n)
    x[:-1] = -np.cumsum(pieces[::-1])[::-1]

    seg = CurveSegment(
        params=p,
        gamma=gamma,
        y=y,
        kappa=kap,
        x=x,
        area_bar=0.0,
        y_bar=ybar,
        y_mid=y_mid,
        kappa_mid=kap_mid,
    )
    object.__setattr__(seg, "area_bar", segment_area(seg))
    return seg


def segment_shoelace_area(seg):
    """Polygon area of the sampled arc closed through (0, 0)."""
    pts = np.column_stack([np.append(seg.x, 0.0), np.append(seg.y, 0.0)])
    return abs(shoelace_area(pts))


@dataclass(frozen=True, eq=False)
class SteadyShape:
    """Closed counterclockwise polyline of a steady curve.

    ``gamma`` follows the clockwise-tangent convention under which
    ``y * cos(gamma) >= 0`` around the whole curve.
    """

    points: np.ndarray
    gamma: np.ndarray
    kappa: np.ndarray
    area: float
    local_params: LocalParams
    nonlocal_params: object = None

    @property
    def diameter(self):
        return 2.0 * float(np.max(np.abs(self.points[:, 0])))


def assemble_shape(seg, nonlocal_params=None):
    """Mirror the quarter arc across both axes into a closed convex curve."""
    x, y, g, k = seg.x, seg.y, seg.gamma, seg.kappa
    r = slice(None, None, -1)
    # counterclockwise from P: lower-left, lower-right, upper-right, upper-left
    quarters = [
        (x, -y, math.pi - g, k),
        (-x[r], -y[r], g[r] - math.pi, k[r]),
        (-x, y, -g, k),
        (x[r], y[r], g[r], k[r]),
    ]
    xs, ys, gs, ks = [], [], [], []
    for qx, qy, qg, qk in quarters:
        xs.append(qx[:-1])
        ys.append(qy[:-1])
        gs.append(qg[:-1])
        ks.append(qk[:-1])
    points = np.column_stack([np.concatenate(xs), np.concatenate(ys)])
    gamma = np.concatenate(gs)
    gamma = np.where(gamma <= -math.pi, gamma + 2 * math.pi, gamma)
    shape = SteadyShape(
        points=points,
        gamma=gamma,
        kappa=np.concatenate(ks),
        area=4.0 * seg.area_bar,
        local_params=seg.params,
        nonlocal_params=nonlocal_params,
    )
    if not is_convex(points):
        raise InvariantError("assembled steady shape is not convex")
    return shape
