"""Real-valued special functions for the steady-state curvature profile.

The curvature profile of a smooth steady shape involves ``erf(i z)`` terms.
Everything here is written with real arithmetic through the Dawson function

    D(x) = exp(-x**2) * integral_0^x exp(t**2) dt,

using ``i * erf(i x) = -erfi(x)`` and ``erfi(x) * exp(-x**2) = 2 D(x) / sqrt(pi)``.
"""

from dataclasses import dataclass
import functools
import heapq
import math

import numpy as np
from scipy.optimize import brentq

from .errors import AccuracyError, DomainError

__all__ = [
    "Accuracy",
    "DEFAULT_ACCURACY",
    "dawson",
    "dawson_derivative",
    "erfi_scaled",
    "dawson_maximizer",
    "quadrature_oracle",
]

_SERIES_CUT = 1.0
_ASYMPTOTIC_CUT = 8.0
_TERM_RTOL = 1e-17


@dataclass(frozen=True)
class Accuracy:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be strictly positive")


DEFAULT_ACCURACY = Accuracy()


def _maclaurin(x):
    # D(x) = sum_k (-2 x^2)^k x / (2k+1)!!   (alternating, |x| < 1)
    term = x.copy()
    total = x.copy()
    x2 = -2.0 * x * x
    k = 0
    while True:
        term = term * x2 / (2 * k + 3)
        total += term
        k += 1
        if np.all(np.abs(term) <= _TERM_RTOL * np.abs(total)):
            return total


def _positive_series(x):
    # integral_0^x exp(t^2) dt = sum_k x^(2k+1) / (k! (2k+1)), all terms > 0
    ax = np.abs(x)
    x2 = ax * ax
    a = ax.copy()
    total = ax.copy()
    k = 0
    while True:
        a = a * x2 / (k + 1)
        term = a / (2 * k + 3)
        total += term
        k += 1
        if k > x2.max() and np.all(term <= _TERM_RTOL * total):
            break
    return np.sign(x) * total * np.exp(-x2)


def _asymptotic(x):
    # D(x) ~ sum_k (2k-1)!! / (2^(k+1) x^(2k+1)); divergent, stop before terms grow
    term = 0.5 / x
    total = term.copy()
    inv = 1.0 / (2.0 * x * x)
    for k in range(60):
        nxt = term * (2 * k + 1) * inv
        if np.all(np.abs(nxt) <= _TERM_RTOL * np.abs(total)):
            break
        if np.any(np.abs(nxt) > np.abs(term)):
            break
        term = nxt
        total += term
    return total


def dawson(x):
    """Dawson function D(x).

    Accepts a float or an array of floats. Non-finite input raises
    :class:`DomainError`.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("dawson: argument must be finite")
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)
    ax = np.abs(flat)

    small = ax < _SERIES_CUT
    large = ax >= _ASYMPTOTIC_CUT
    mid = ~(small | large)
    if small.any():
        out[small] = _maclaurin(flat[small])
    if mid.any():
        out[mid] = _positive_series(flat[mid])
    if large.any():
        out[large] = _asymptotic(flat[large])

    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def dawson_derivative(x):
    """D'(x) = 1 - 2 x D(x)."""
    out = 1.0 - 2.0 * np.asarray(x, dtype=float) * dawson(x)
    return float(out) if np.ndim(out) == 0 else out


def erfi_scaled(x):
    """erfi(x) * exp(-x**2), evaluated as 2 D(x) / sqrt(pi)."""
    return 2.0 / math.sqrt(math.pi) * dawson(x)


@functools.cache
def dawson_maximizer():
    """Location z0 of the unique positive maximum of D (root of D' on [0.5, 1.5])."""
    return brentq(lambda z: 1.0 - 2.0 * z * dawson(z), 0.5, 1.5, xtol=1e-16, rtol=4 * np.finfo(float).eps)


# Gauss-Kronrod 7/15 nodes on [0, 1] half of the symmetric rule
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])


def _gk15(f, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    kron = _WK[7] * fc
    gauss = _WG[3] * fc
    for j in range(7):
        fsum = f(c - h * _XK[j]) + f(c + h * _XK[j])
        kron += _WK[j] * fsum
        if j % 2 == 1:
            gauss += _WG[j // 2] * fsum
    return kron * h, abs((kron - gauss) * h)


def quadrature_oracle(f, a, b, tol=1e-10, max_intervals=4000):
    """Adaptive Gauss-Kronrod (7/15) integral of ``f`` over ``[a, b]``.

    The interval with the largest error estimate is bisected until the summed
    estimate drops below ``tol``. Raises :class:`AccuracyError` (carrying the
    best estimate) when ``max_intervals`` is exhausted.
    """
    if not (tol > 0):
        raise DomainError("tol must be positive")
    if not (math.isfinite(a) and math.isfinite(b)) or a > b:
        raise DomainError("quadrature_oracle needs finite a <= b")
    if a == b:
        return 0.0
    val, err = _gk15(f, a, b)
    heap = [(-err, a, b, val)]
    total_val, total_err = val, err
    while total_err > tol:
        if len(heap) >= max_intervals:
            raise AccuracyError(
                f"quadrature did not reach tol={tol:g}; error estimate {total_err:g}",
                estimate=total_val,
                error=total_err,
            )
        neg_err, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        # resum to keep rounding from drifting across many refinements
        total_val = math.fsum(item[3] for item in heap)
        total_err = math.fsum(-item[0] for item in heap)
    return total_val
