import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from octon.convergence import EXACT_FLOOR, ConvergenceResult, observed_order, pairwise_orders, study, study_many


@given(st.floats(0.5, 4.0), st.floats(1e-3, 1e3))
def test_power_law_order_recovered(p, c):
    hs = [1 / 16, 1 / 32, 1 / 64]
    assert observed_order(hs, [c * h**p for h in hs]) == pytest.approx(p, rel=1e-9)


def test_pairwise_orders():
    assert pairwise_orders([16.0, 4.0, 1.0]) == pytest.approx([2.0, 2.0])


def test_exact_zero_handling():
    r = ConvergenceResult("z", [16, 32], [0.0, EXACT_FLOOR / 2])
    assert r.exact and math.isnan(r.order)
    assert r.within() and r.at_least(1.8) and not r.non_convergent(1e-3)
    assert r.as_dict()["order"] is None


def test_non_convergent_detection():
    r = ConvergenceResult("flat", [16, 32, 64], [600.0, 630.0, 634.0])
    assert r.non_convergent(1e-3) and not r.at_least(1.8)
    r = ConvergenceResult("fast", [16, 32, 64], [1.0, 0.25, 0.0625])
    assert r.within(2.0, 0.2) and not r.non_convergent(1e-3)


def test_study_helpers():
    r = study("q", [8, 16], lambda n: 1.0 / n**2)
    assert r.order == pytest.approx(2.0)
    many = study_many([8, 16], lambda n: {"a": 1.0 / n, "b": 1.0 / n**3})
    assert many["a"].order == pytest.approx(1.0) and many["b"].order == pytest.approx(3.0)
