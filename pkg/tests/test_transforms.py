import math

import mpmath
import pytest

from goldens import LAPLACE_D1_A3_M1_L025_RHO1_P03_Q06, MELLIN_CLOSED_Z1_L0_RHO1_R1_S1
from pqwhittaker.errors import DomainError
from pqwhittaker.transforms import (
    laplace_closed,
    laplace_numeric,
    laplace_s3,
    mellin_closed,
    mellin_numeric,
)


def test_mellin_closed_golden():
    assert abs(mellin_closed(1.0, 0.0, 1.0, 1.0, 1.0) - MELLIN_CLOSED_Z1_L0_RHO1_R1_S1) < 1e-14


def test_mellin_closed_against_mpmath():
    z, lam, rho, r, s = 0.5, 0.25, 1.0, 1.5, 2.0
    ref = (
        mpmath.mpf(z) ** (rho + 0.5)
        * mpmath.exp(-z / 2)
        * mpmath.gamma(r)
        * mpmath.gamma(s)
        * mpmath.beta(rho + r - lam + 0.5, rho + s + lam + 0.5)
        / mpmath.beta(rho - lam + 0.5, rho + lam + 0.5)
        * mpmath.hyp1f1(rho + r - lam + 0.5, 2 * rho + r + s + 1, z)
    )
    assert abs(mellin_closed(z, lam, rho, r, s) - complex(ref)) < 1e-13 * abs(complex(ref))


def test_mellin_numeric_matches_closed():
    res = mellin_numeric(1.0, 0.0, 1.0, 1.0, 1.0)
    assert res.converged
    assert abs(res.value - mellin_closed(1.0, 0.0, 1.0, 1.0, 1.0)) < 1e-4 * abs(res.value)


def test_mellin_order_swap():
    a = mellin_numeric(0.5, 0.25, 1.0, 2.0, 1.0, order="pq").value
    b = mellin_numeric(0.5, 0.25, 1.0, 2.0, 1.0, order="qp").value
    assert abs(a - b) < 1e-8 * abs(a)


def test_mellin_domain():
    with pytest.raises(DomainError):
        mellin_closed(1.0, 0.0, 1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        mellin_numeric(1j, 0.0, 1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        mellin_numeric(1.0, 0.0, 1.0, 1.0, 1.0, order="xy")


def test_laplace_golden():
    v = laplace_closed(1.0, 3.0, 1.0, 0.25, 1.0, 0.3, 0.6)
    assert abs(v - LAPLACE_D1_A3_M1_L025_RHO1_P03_Q06) < 1e-13


def test_laplace_positive_mu():
    args = (1.5, 2.0, 1.0, 0.25, 1.0, 0.3, 0.6)
    res = laplace_numeric(*args)
    assert res.converged
    assert abs(res.value - laplace_closed(*args)) < 1e-6 * abs(res.value)


def test_laplace_negative_mu_is_complex():
    args = (1.0, 2.0, -1.0, 0.0, 0.5, 0.2, 0.4)
    closed = laplace_closed(*args)
    num = laplace_numeric(*args).value
    assert abs(closed.imag) > 0
    assert abs(num - closed) < 1e-5 * abs(closed)


def test_laplace_classical_limit():
    # p = q = 0: int_0^inf e^(-alpha z) M_{0,1/2}(z) dz = int e^(-alpha z) 2 sinh(z/2) dz
    alpha = 2.0
    exact = 1 / (alpha - 0.5) - 1 / (alpha + 0.5)
    assert abs(laplace_closed(1.0, alpha, 1.0, 0.0, 0.5) - exact) < 1e-13


def test_laplace_s3_identity():
    for alpha in (2.0, 3.0):
        a = laplace_s3(alpha, 0.25, 1.0, 0.2, 0.4)
        b = laplace_closed(1.0, alpha, -1.0, 0.25, 1.0, 0.2, 0.4)
        assert abs(a - b) <= 1e-12 * abs(b)


def test_laplace_domain():
    with pytest.raises(DomainError):
        laplace_closed(1.0, 2.0, 0.0, 0.0, 0.5)
    with pytest.raises(DomainError):
        laplace_closed(1.0, 0.4, 1.0, 0.0, 0.5)  # e^(-alpha z) cannot beat e^(z/2)
    with pytest.raises(DomainError):
        laplace_s3(1.5, 0.0, 0.5)
    with pytest.raises(DomainError):
        laplace_closed(-1.5, 2.0, 1.0, 0.0, 0.5)
