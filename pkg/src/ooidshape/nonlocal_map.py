"""The map between local parameters ``c1_hat`` and physical parameters ``c1``.

At fixed ``q = sqrt(c2 / (2 c1))`` a realizable ``c1_hat`` produces a steady
curve of area ``A``; the physical abrasion constant is ``c1 = c1_hat / A``.
That map is strictly decreasing from +inf (``c1_hat -> 0``) to 0
(``c1_hat -> critical``), so it can be inverted by bracketing.
"""

from dataclasses import dataclass, field
import functools
import math

import numpy as np
from scipy.optimize import brentq

from .errors import AccuracyError, DomainError, InvariantError
from .local import (
    DEFAULT_SAMPLES,
    LocalParams,
    _check_realizable,
    assemble_shape,
    c1_crit,
    realize_segment,
)

__all__ = [
    "NonlocalParams",
    "MapSweep",
    "MAP_SAMPLES",
    "q_of",
    "map_F",
    "invert_F",
    "c1_floor",
    "solve_nonlocal",
    "steady_residual",
    "sweep",
]

# fixed sampling so F is a deterministic function of (c1_hat, q)
MAP_SAMPLES = 1024
# closest relative approach to the critical value used when inverting F
MIN_GAP = 1e-11
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class NonlocalParams:
    """Physical parameters: abrasion ``c1``, friction ``c2``, time scale ``c3``."""

    c1: float
    c2: float = 0.0
    c3: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.c1) and self.c1 > 0):
            raise DomainError(f"c1 must be positive and finite, got {self.c1!r}")
        if not (math.isfinite(self.c2) and self.c2 >= 0):
            raise DomainError(f"c2 must be non-negative and finite, got {self.c2!r}")
        if not (math.isfinite(self.c3) and self.c3 > 0):
            raise DomainError(f"c3 must be positive and finite, got {self.c3!r}")

    @property
    def q(self):
        return q_of(self)


def q_of(np_):
    return math.sqrt(np_.c2 / (2.0 * np_.c1))


# below this q * c1_hat the curve is a circle to within (q c1_hat)^2
_CIRCLE_LIMIT = 1e-9


@functools.lru_cache(maxsize=4096)
def _unit_area(z_hat):
    # area of the steady curve for q = 1 and c1_hat = z_hat
    return 4.0 * realize_segment(LocalParams(z_hat, 1.0), MAP_SAMPLES).area_bar


def _area(c1_hat, q):
    """Steady area for ``(c1_hat, q)``.

    The curve for ``(c1_hat, q)`` is the ``q = 1`` curve for ``q c1_hat``
    shrunk by ``q``, so every evaluation is done at ``q = 1``, where the
    numbers stay O(1) whatever ``q`` is.
    """
    z_hat = q * c1_hat
    if z_hat < _CIRCLE_LIMIT:
        return math.pi * c1_hat * c1_hat
    return _unit_area(z_hat) / (q * q)


def map_F(c1_hat, q):
    """Physical ``c1`` that reproduces the steady curve of ``(c1_hat, q)``."""
    p = LocalParams(c1_hat, q)
    if p.q == 0:
        return 1.0 / (math.pi * p.c1_hat)
    _check_realizable(p)
    return p.c1_hat / _area(p.c1_hat, p.q)


def c1_floor(q):
    """Smallest ``c1`` that :func:`invert_F` resolves at this ``q`` (0 for q = 0).

    F tends to 0 at the critical value only like an inverse logarithm of the
    gap, so the floor is reached long before the gap hits round-off.
    """
    if q == 0:
        return 0.0
    return q * map_F(c1_crit(1.0) * (1.0 - MIN_GAP), 1.0)


def invert_F(c1, q, max_expand=60):
    """Local ``c1_hat`` mapped to ``c1`` at fixed ``q``.

    Raises :class:`AccuracyError` when ``c1`` is so small that the matching
    ``c1_hat`` would sit within ``MIN_GAP`` (relative) of the critical value,
    i.e. below :func:`c1_floor`.
    """
    if not (math.isfinite(c1) and c1 > 0):
        raise DomainError("c1 must be positive and finite")
    if not (math.isfinite(q) and q >= 0):
        raise DomainError("q must be non-negative and finite")
    if q == 0:
        return 1.0 / (math.pi * c1)

    crit = c1_crit(q)
    # the steady area is at least the circle's, so F(c1_hat) <= 1 / (pi c1_hat):
    # brackets around the circle estimate keep tiny q away from huge c1_hat
    lo = min(1e-3 * crit, 0.5 / (math.pi * c1))
    for _ in range(max_expand):
        if map_F(lo, q) >= c1:
            break
        lo *= 0.1
    else:
        raise AccuracyError(f"could not bracket c1={c1:g} from below")
    # F only decays like an inverse logarithm of the distance to the critical
    # value, so small c1 is out of reach in double precision
    circle = 1.0 / (math.pi * c1)
    candidates = [crit * (1.0 - gap) for gap in (1e-6, 1e-7, 1e-8, 1e-9, 1e-10, MIN_GAP)]
    if circle < candidates[0]:
        candidates.insert(0, circle)
    for hi in candidates:
        if map_F(hi, q) <= c1:
            break
    else:
        raise AccuracyError(
            f"c1={c1:g} is below c1_floor(q)={map_F(hi, q):.6g}: out of reach in double precision at q={q:g}"
        )

    # the bracket can span many decades (small q), so solve in log(c1_hat)
    u_lo, u_hi = math.log(lo), math.log(hi)

    def c1_hat_of(v):
        # exact endpoints: exp(log(x)) can be an ulp off
        return lo if v <= u_lo else hi if v >= u_hi else math.exp(v)

    u = brentq(lambda v: map_F(c1_hat_of(v), q) - c1, u_lo, u_hi, xtol=1e-16, rtol=4 * _EPS, maxiter=400)
    root = c1_hat_of(u)
    if abs(map_F(root, q) - c1) > 1e-10 * c1 and not _best_double(root, c1, q, hi):
        raise AccuracyError(f"inversion of F at c1={c1:g} did not converge", estimate=root)
    return root


def _best_double(root, c1, q, hi, ulps=4):
    """True if F crosses ``c1`` within a few ulps of ``root``.

    Very close to the critical value F changes by more than 1e-10 relative
    between neighbouring doubles, so no representable c1_hat does better.
    """
    below, above = root, root
    for _ in range(ulps):
        below = np.nextafter(below, 0.0)
        above = min(np.nextafter(above, math.inf), hi)
    return (map_F(float(below), q) - c1) * (map_F(float(above), q) - c1) <= 0


def steady_residual(c1, c2, area, kappa, y_cos_gamma):
    """Pointwise ``-1 + c1 A kappa + c2 A y cos(gamma)``."""
    return -1.0 + c1 * area * np.asarray(kappa) + c2 * area * np.asarray(y_cos_gamma)


def solve_nonlocal(np_, n=DEFAULT_SAMPLES):
    """Steady curve of the nonlocal equation for physical parameters ``np_``."""
    q = q_of(np_)
    c1_hat = invert_F(np_.c1, q)
    seg = realize_segment(LocalParams(c1_hat, q), n)
    shape = assemble_shape(seg, nonlocal_params=np_)
    res = steady_residual(np_.c1, np_.c2, shape.area, shape.kappa, shape.points[:, 1] * np.cos(shape.gamma))
    worst = float(np.max(np.abs(res)))
    if worst > 1e-6:
        raise InvariantError(f"steady residual {worst:.3g} exceeds 1e-6")
    return shape


@dataclass
class MapSweep:
    q: float
    rows: list = field(default_factory=list)

    @property
    def c1_hat(self):
        return np.array([r[0] for r in self.rows])

    @property
    def area(self):
        return np.array([r[1] for r in self.rows])

    @property
    def c1(self):
        return np.array([r[2] for r in self.rows])


def sweep(q, n_rows=16, eps=1e-3):
    """Tabulate F on geometrically spaced ``c1_hat`` across the realizable range."""
    if not (math.isfinite(q) and q > 0):
        raise DomainError("sweep needs q > 0")
    if n_rows < 8:
        raise DomainError("sweep needs at least 8 rows")
    crit = c1_crit(q)
    out = MapSweep(q=q)
    for c1_hat in np.geomspace(eps * crit, (1.0 - eps) * crit, n_rows):
        c1_hat = float(c1_hat)
        area = _area(c1_hat, q)
        out.rows.append((c1_hat, area, c1_hat / area))
    c1 = out.c1
    if not np.all(np.diff(c1) < 0):
        i = int(np.argmax(np.diff(c1) >= 0))
        raise InvariantError(f"F is not strictly decreasing between rows {i} and {i + 1}")
    return out
