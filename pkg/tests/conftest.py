import math

import numpy as np
import pytest

from ooidshape.local import LocalParams
from ooidshape.nonlocal_map import NonlocalParams, solve_nonlocal


@pytest.fixture
def base():
    # c1_hat = 1, q = 0.5 (c2_hat = 0.5)
    return LocalParams(1.0, 0.5)


@pytest.fixture(scope="session")
def gamma_star():
    """Dense steady shape for c1 = 0.2, c2 = 0.1."""
    return solve_nonlocal(NonlocalParams(0.2, 0.1), 1024)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_local(rng, n, fraction=(0.01, 0.99), q_range=(0.05, 5.0)):
    """Random strictly realizable local parameters."""
    from ooidshape.local import c1_crit

    out = []
    for _ in range(n):
        q = math.exp(rng.uniform(math.log(q_range[0]), math.log(q_range[1])))
        c1_hat = rng.uniform(*fraction) * c1_crit(q)
        out.append(LocalParams(c1_hat, q))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
