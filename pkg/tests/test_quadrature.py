import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldens import FINITE_EXP_KERNEL, MELLIN_BOX_R1_S1_L0_RHO1_Z1
from pqwhittaker.errors import ConvergenceError, DomainError, NonFiniteIntegrandError
from pqwhittaker.quadrature import (
    DEFAULT_CONFIG,
    FiniteInterval,
    QuadConfig,
    integrate_2d_semi_infinite,
    integrate_finite,
    integrate_semi_infinite,
)
from pqwhittaker.scalar_core import ToleranceSpec


def test_finite_polynomial():
    res = integrate_finite(lambda x: x**2, (0, 1))
    assert res.converged
    assert abs(res.value - 1 / 3) < 1e-14


@pytest.mark.parametrize("deg", range(11))
def test_finite_monomials(deg):
    res = integrate_finite(lambda x: x**deg, (-1, 2))
    exact = (2 ** (deg + 1) - (-1) ** (deg + 1)) / (deg + 1)
    assert abs(res.value - exact) <= 1e-12 * max(1, abs(exact))


def test_finite_endpoint_singularity():
    res = integrate_finite(lambda x: 1 / np.sqrt(x), (0, 1))
    assert abs(res.value - 2) < 1e-10


def test_finite_distances_beta_half_half():
    res = integrate_finite(lambda x, dl, dr: dl**-0.5 * dr**-0.5, (0, 1), with_distances=True)
    assert abs(res.value - math.pi) < 1e-13


def test_finite_exponential_kernel_golden():
    def f(_, t, tc):
        return np.exp(-1 / t - 1 / tc)

    res = integrate_finite(f, (0, 1), with_distances=True)
    assert abs(res.value - FINITE_EXP_KERNEL) < 1e-12


def test_semi_infinite_examples():
    assert abs(integrate_semi_infinite(lambda x: np.exp(-x)).value - 1) < 1e-12
    res = integrate_semi_infinite(lambda x: 1 / (1 + x * x))
    assert abs(res.value - math.pi / 2) < 1e-10
    res = integrate_semi_infinite(lambda x: x ** -0.5 * np.exp(-x))
    assert abs(res.value - math.sqrt(math.pi)) < 1e-10


def test_2d_gaussian_product():
    res = integrate_2d_semi_infinite(lambda p, q: np.exp(-p - 2 * q))
    assert res.converged
    assert abs(res.value - 0.5) < 1e-10


def test_2d_nonseparable():
    # int int exp(-(p+q)) / (1+p+q)^0 weighted by p q  ->  1
    res = integrate_2d_semi_infinite(lambda p, q: p * q * np.exp(-(p + q)))
    assert abs(res.value - 1) < 1e-10


def test_2d_mellin_golden():
    # the Mellin integrand at r = s = 1, lambda = 0, rho = 1, z = 1, against a GL box oracle
    from pqwhittaker.transforms import mellin_numeric

    res = mellin_numeric(1.0, 0.0, 1.0, 1.0, 1.0)
    # the box oracle truncates at 40 and carries ~1e-9 discretisation error
    assert abs(res.value - MELLIN_BOX_R1_S1_L0_RHO1_Z1) < 5e-9


def test_complex_and_batched_integrands():
    res = integrate_finite(lambda x: np.stack([np.exp(1j * x), x], axis=-1), (0, 1))
    assert res.value.shape == (2,)
    assert abs(res.value[0] - (np.exp(1j) - 1) / 1j) < 1e-13
    assert abs(res.value[1] - 0.5) < 1e-14


def test_scalar_integrand_broadcast():
    assert abs(integrate_finite(lambda x: 3.0, (0, 2)).value - 6) < 1e-13


def test_nonconvergence_reported():
    cfg = QuadConfig(tol=ToleranceSpec(0.0, 1e-16), max_level=3)
    res = integrate_finite(lambda x: np.abs(x - 0.3) ** 0.5, (0, 1), cfg)
    assert not res.converged
    with pytest.raises(ConvergenceError) as exc:
        res.check()
    assert exc.value.result is res


def test_nonfinite_integrand():
    with pytest.raises(NonFiniteIntegrandError):
        integrate_finite(lambda x: 1 / (x - 0.5) ** 2 * np.where(np.abs(x - 0.5) < 1e-300, np.nan, 1), (0, 1))


def test_interval_validation():
    with pytest.raises(DomainError):
        FiniteInterval(1.0, 1.0)
    with pytest.raises(DomainError):
        FiniteInterval(0.0, math.inf)
    with pytest.raises(DomainError):
        QuadConfig(max_level=2)


def test_determinism():
    f = lambda x: np.exp(-x) * np.cos(3 * x)
    a = integrate_semi_infinite(f)
    b = integrate_semi_infinite(f)
    assert a.value == b.value and a.err_estimate == b.err_estimate and a.evaluations == b.evaluations


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(alpha, beta):
    f = lambda x: np.exp(x)
    g = lambda x: x**3 - x
    iv = (-0.5, 1.5)
    lhs = integrate_finite(lambda x: alpha * f(x) + beta * g(x), iv).value
    rhs = alpha * integrate_finite(f, iv).value + beta * integrate_finite(g, iv).value
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs))


@settings(max_examples=30, deadline=None)
@given(st.floats(-5, 5), st.floats(0.1, 5))
def test_affine_mapping(a, width):
    # int_a^b f(x) dx = (b - a) int_0^1 f(a + (b - a) u) du
    b = a + width
    f = lambda x: np.sin(x) + x * x
    lhs = integrate_finite(f, (a, b)).value
    rhs = width * integrate_finite(lambda u: f(a + width * u), (0, 1)).value
    assert abs(lhs - rhs) <= 1e-11 * (1 + abs(rhs))


def test_error_estimate_bounds_actual_error():
    res = integrate_finite(lambda x: np.log(x), (0, 1))
    assert abs(res.value + 1) <= max(res.err_estimate, 1e-15) * 10
    assert res.levels <= DEFAULT_CONFIG.max_level
