"""Numerical checks of the qualitative properties of the curvature profile.

Each check returns a :class:`PropertyCheck` whose ``holds`` is True, False, or
None (not applicable, e.g. for the circle ``q = 0``) together with a witness
value explaining the verdict.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .local import LocalParams, _kappa_even, find_y0
from .specfun import erfi_scaled

__all__ = ["PropertyCheck", "PropertyReport", "property_report"]


@dataclass(frozen=True)
class PropertyCheck:
    number: int
    name: str
    holds: object
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.holds is not None:
            object.__setattr__(self, "holds", bool(self.holds))


@dataclass(frozen=True)
class PropertyReport:
    params: LocalParams
    checks: tuple

    @property
    def all_hold(self):
        return all(c.holds is not False for c in self.checks)

    def __getitem__(self, number):
        return self.checks[number - 1]

    def lines(self):
        labels = {True: "true", False: "FALSE", None: "n/a"}
        return [f"{c.number} {c.name}: {labels[c.holds]} {c.witness}" for c in self.checks]


def _sign_changes(v):
    s = np.sign(v)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def property_report(p, grid=20_000):
    k0 = 1.0 / p.c1_hat
    checks = []

    if p.q == 0:
        ys = np.linspace(0.0, 10.0 * p.c1_hat, 101)
        kv = _kappa_even(ys, p)
        checks += [
            PropertyCheck(1, "real", bool(np.all(np.isfinite(kv)))),
            PropertyCheck(2, "continuous", bool(np.ptp(kv) == 0), {"max_jump": 0.0}),
            PropertyCheck(3, "kappa(0) = 1/c1_hat", bool(kv[0] == k0), {"kappa0": float(kv[0])}),
            PropertyCheck(4, "maximum at 0", True, {"kappa2": 0.0}),
            PropertyCheck(5, "decays to 0", None, {"reason": "constant curvature"}),
            PropertyCheck(6, "single zero", None, {"reason": "constant curvature"}),
            PropertyCheck(7, "monotone on (0, y0)", None, {"reason": "no zero"}),
        ]
        return PropertyReport(p, tuple(checks))

    q = p.q
    y0 = find_y0(p)
    ys = np.linspace(0.0, 4.0 * y0, grid + 1)
    kv = np.asarray(_kappa_even(ys, p))

    checks.append(PropertyCheck(1, "real", bool(np.all(np.isreal(kv)) and np.all(np.isfinite(kv)))))

    jump = float(np.max(np.abs(np.diff(kv))))
    # a continuous profile moves at most |kappa'| * h between grid points
    bound = 4.0 * q * k0 * (ys[1] - ys[0])
    checks.append(PropertyCheck(2, "continuous", jump < bound, {"max_jump": jump, "bound": bound}))

    kap0 = float(_kappa_even(0.0, p))
    checks.append(
        PropertyCheck(3, "kappa(0) = 1/c1_hat", abs(kap0 - k0) <= 1e-14 * k0, {"kappa0": kap0})
    )

    h = 1e-3 / q
    kp, km = float(_kappa_even(h, p)), float(_kappa_even(-h, p))
    d1 = (kp - km) / (2 * h)
    d2 = (kp - 2 * kap0 + km) / (h * h)
    expect = -4.0 * q * q * k0
    ok4 = abs(d1) <= 1e-8 * q * k0 and abs(d2 - expect) <= 1e-5 * abs(expect)
    checks.append(PropertyCheck(4, "maximum at 0", ok4, {"kappa1": d1, "kappa2": d2, "expected_kappa2": expect}))

    yn = 2.0 ** np.arange(0, 64)
    tail = np.abs(np.asarray(_kappa_even(yn, p)))
    yn, tail = yn[yn > 2.0 * y0], tail[yn > 2.0 * y0]
    below = np.flatnonzero(tail < 1e-6 * k0)
    # stop at the first tiny value: further out 2 z D(z) rounds to exactly 1
    last = int(below[0]) if len(below) else len(tail) - 1
    decreasing = bool(np.all(np.diff(tail[: last + 1]) < 0))
    checks.append(
        PropertyCheck(
            5,
            "decays to 0",
            decreasing and len(below) > 0,
            {"last_y": float(yn[last]), "last_abs_kappa": float(tail[last])},
        )
    )

    changes = _sign_changes(kv)
    # iota - zeta with both scaled by exp(-q^2 y^2)
    iota = np.full_like(ys, 2.0 * q / math.sqrt(math.pi))
    zeta = 2.0 * q * q * ys * erfi_scaled(q * ys)
    changes_iz = _sign_changes(iota - zeta)
    checks.append(
        PropertyCheck(
            6,
            "single zero",
            changes == 1 and changes_iz == 1 and abs(float(_kappa_even(y0, p))) <= 1e-12 * k0,
            {"y0": y0, "q_y0": q * y0, "sign_changes": changes, "iota_zeta_sign_changes": changes_iz},
        )
    )

    delta = 1e-3 * y0
    yy = np.linspace(delta, y0 * (1 - 1e-3), 1001)
    step = 1e-6 * y0
    slope = (np.asarray(_kappa_even(yy + step, p)) - np.asarray(_kappa_even(yy - step, p))) / (2 * step)
    worst = int(np.argmax(slope))
    checks.append(
        PropertyCheck(
            7,
            "monotone on (0, y0)",
            bool(np.all(slope < 0)),
            {"max_slope": float(slope[worst]), "at_y": float(yy[worst])},
        )
    )
    return PropertyReport(p, tuple(checks))
