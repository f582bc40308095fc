import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldens import BETA_PQ_1_1_1_1
from pqwhittaker.errors import DomainError
from pqwhittaker.pq_beta import beta_p_reduction, beta_pq
from pqwhittaker.scalar_core import beta_classical


def test_classical_value():
    res = beta_pq(2, 3)
    assert res.converged
    assert abs(res.value - 1 / 12) < 1e-14


def test_golden_damped():
    assert abs(beta_pq(1, 1, 1, 1).value - BETA_PQ_1_1_1_1) < 1e-13


@pytest.mark.parametrize("x,y", [(0.5, 0.5), (0.3, 2.0), (4.0, 0.7), (1.0, 1.0)])
def test_reduces_to_classical(x, y):
    assert abs(beta_pq(x, y).value - beta_classical(x, y)) <= 1e-12 * beta_classical(x, y)


def test_damping_lifts_exponent_condition():
    # p > 0 makes t^(x-1) integrable at 0 for any real x
    assert beta_pq(-1.5, 2.0, 0.5, 0.0).value > 0
    assert beta_pq(2.0, -3.0, 0.0, 0.5).value > 0
    with pytest.raises(DomainError):
        beta_pq(-1.5, 2.0, 0.0, 0.5)
    with pytest.raises(DomainError):
        beta_pq(2.0, 0.0, 0.5, 0.0)


def test_negative_damping_rejected():
    with pytest.raises(DomainError):
        beta_pq(1, 1, -0.1, 0)
    with pytest.raises(DomainError):
        beta_pq(1, 1, 0, math.nan)


def test_kernel_identity_bit_exact():
    for x, y, p in [(0.5, 1.3, 0.4), (2.7, 2.7, 0.9), (1.3, 0.5, 0.0)]:
        assert beta_p_reduction(x, y, p).value == beta_pq(x, y, p, p).value


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 5), st.floats(0.2, 5), st.floats(0, 2), st.floats(0, 2))
def test_symmetry(x, y, p, q):
    a = beta_pq(x, y, p, q).value
    b = beta_pq(y, x, q, p).value
    assert abs(a - b) <= 1e-10 * max(a, b)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 5), st.floats(0.2, 5), st.floats(0, 2), st.floats(0, 2))
def test_positive_and_dominated(x, y, p, q):
    v = beta_pq(x, y, p, q).value
    assert 0 < v <= beta_classical(x, y) * (1 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.2, 5), st.floats(0.2, 5), st.floats(0, 2), st.floats(0.05, 1), st.floats(0, 2))
def test_decreasing_in_p(x, y, p, dp, q):
    assert beta_pq(x, y, p + dp, q).value < beta_pq(x, y, p, q).value
