import pytest
from hypothesis import given, settings, strategies as st

from ooidshape.local import LocalParams, c1_crit
from ooidshape.properties import property_report


@pytest.mark.parametrize("c1_hat, q", [(1.0, 0.5), (0.2, 1.0), (5.0, 0.05), (0.01, 10.0)])
def test_all_properties_hold(c1_hat, q):
    rep = property_report(LocalParams(c1_hat, q))
    assert [c.number for c in rep.checks] == list(range(1, 8))
    assert all(c.holds is True for c in rep.checks), rep.lines()


def test_circle_not_applicable():
    rep = property_report(LocalParams(1.0, 0.0))
    assert rep[3].holds and rep[4].holds
    assert rep[4].witness["kappa2"] == 0.0
    assert rep[5].holds is None and rep[6].holds is None
    assert rep.all_hold


def test_witness_contents():
    rep = property_report(LocalParams(1.0, 0.5))
    assert rep[3].witness["kappa0"] == 1.0
    assert rep[4].witness["kappa2"] == pytest.approx(-4 * 0.25, rel=1e-5)
    assert rep[6].witness["sign_changes"] == 1
    assert rep[6].witness["iota_zeta_sign_changes"] == 1
    assert rep[6].witness["q_y0"] == pytest.approx(0.9241388730045919, rel=1e-13)
    assert len(rep.lines()) == 7


@given(q=st.floats(min_value=0.05, max_value=20.0), fraction=st.floats(min_value=0.01, max_value=1.0))
@settings(max_examples=30, deadline=None)
def test_properties_hold_randomly(q, fraction):
    rep = property_report(LocalParams(fraction * c1_crit(q), q), grid=4000)
    assert rep.all_hold, rep.lines()
