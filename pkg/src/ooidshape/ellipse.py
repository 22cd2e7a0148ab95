"""Ellipses with a > b are not steady states.

Requiring the steady condition at both axis endpoints fixes ``c1`` and ``c2``;
the residual at any third point is then nonzero unless ``a == b``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError

__all__ = [
    "EllipseSpec",
    "forced_c1",
    "forced_c2",
    "ellipse_residual",
    "bracket_residual",
    "residual_quarter_pi",
    "max_abs_residual",
]


@dataclass(frozen=True)
class EllipseSpec:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("semi-axes must be finite")
        if not (self.a >= self.b > 0):
            raise DomainError(f"need a >= b > 0, got a={self.a!r}, b={self.b!r}")

    @property
    def area(self):
        return math.pi * self.a * self.b


def forced_c1(e):
    """``c1`` forced by steadiness at the end of the major axis (phi = 0)."""
    return e.b / (e.a ** 2 * math.pi)


def forced_c2(e):
    """``c2`` forced by steadiness at the end of the minor axis (phi = pi/2)."""
    return (e.a ** 3 - e.b ** 3) / (e.a ** 4 * e.b ** 2 * math.pi)


def _check_phi(phi):
    phi = np.asarray(phi, dtype=float)
    if np.any(phi < 0) or np.any(phi > math.pi / 2 + 1e-15):
        raise DomainError("phi must lie in [0, pi/2]")
    return phi


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def ellipse_residual(e, phi, c1=None, c2=None):
    """Steady residual at ``(a cos(phi), b sin(phi))`` in the closed form

        -1 + c1 a^2 b^2 pi / (b^2 cos^2 + a^2 sin^2)^(3/2)
           + c2 a b^2 pi sin / sqrt(1 + b^2 cos^2 / (a^2 sin^2)).

    At ``phi = 0`` the friction term is replaced by its limit, 0. The forced
    constants are used unless ``c1``/``c2`` are given.
    """
    phi = _check_phi(phi)
    a, b = e.a, e.b
    c1 = forced_c1(e) if c1 is None else c1
    c2 = forced_c2(e) if c2 is None else c2
    s, c = np.sin(phi), np.cos(phi)
    curv = c1 * a * a * b * b * math.pi / (b * b * c * c + a * a * s * s) ** 1.5
    with np.errstate(divide="ignore", invalid="ignore"):
        fric = c2 * a * b * b * math.pi * s / np.sqrt(1.0 + (b * b * c * c) / (a * a * s * s))
    fric = np.where(s == 0, 0.0, fric)
    return _out(-1.0 + curv + fric)


def bracket_residual(e, phi, c1=None, c2=None):
    """Same residual from the raw bracket ``-1 + c1 A kappa + c2 A y cos(gamma)``.

    Curvature and tangent come straight from the parametric derivatives,
    without the simplifications of :func:`ellipse_residual`.
    """
    phi = _check_phi(phi)
    a, b = e.a, e.b
    c1 = forced_c1(e) if c1 is None else c1
    c2 = forced_c2(e) if c2 is None else c2
    dx, dy = -a * np.sin(phi), b * np.cos(phi)
    ddx, ddy = -a * np.cos(phi), -b * np.sin(phi)
    speed = np.hypot(dx, dy)
    kap = np.abs(dx * ddy - ddx * dy) / speed ** 3
    y = b * np.sin(phi)
    cos_gamma = np.abs(dx) / speed
    area = e.area
    return _out(-1.0 + c1 * area * kap + c2 * area * y * cos_gamma)


def residual_quarter_pi(e):
    """Residual at ``phi = pi/4`` with the forced constants substituted."""
    a, b = e.a, e.b
    return (
        -1.0
        + b ** 3 / (0.5 * a * a + 0.5 * b * b) ** 1.5
        + math.sqrt(2) / 2 * (a ** 3 - b ** 3) / (a ** 3 * math.sqrt(1 + b * b / (a * a)))
    )


def max_abs_residual(e, n_phi=181):
    phi = np.linspace(0.0, math.pi / 2, n_phi)
    r = np.asarray(ellipse_residual(e, phi))
    i = int(np.argmax(np.abs(r)))
    return float(abs(r[i])), float(phi[i])
