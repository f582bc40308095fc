import cmath
import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldens import WHITTAKER_INT1_Z15_L025_R1_P03_Q07
from pqwhittaker.errors import BranchCutError, DomainError
from pqwhittaker.pq_whittaker import (
    INTEGRAL_REPS,
    Representation,
    principal_power,
    whittaker_classical,
    whittaker_derivative_formula,
    whittaker_pq,
    whittaker_reflect,
)
from pqwhittaker.verify import central_difference, representation_values

ALL_REPS = [r for r in Representation]


def test_sinh_case():
    assert abs(whittaker_pq(1.0, 0.0, 0.5) - 2 * math.sinh(0.5)) < 1e-14


@pytest.mark.parametrize("rep", ALL_REPS)
def test_golden_every_representation(rep):
    v = whittaker_pq(1.5, 0.25, 1.0, 0.3, 0.7, rep)
    assert abs(v - WHITTAKER_INT1_Z15_L025_R1_P03_Q07) < 1e-12


def test_classical_against_mpmath():
    for z, lam, rho in [(0.5, 0.0, 0.5), (2.0, 0.25, 1.0), (1.0, -0.3, 0.8)]:
        ref = complex(mpmath.whitm(lam, rho, z))
        assert abs(whittaker_classical(z, lam, rho) - ref) < 1e-13 * abs(ref)
        assert abs(whittaker_pq(z, lam, rho) - ref) < 1e-13 * abs(ref)


def test_int3_interval_independence():
    vals = [
        whittaker_pq(1.0, 0.25, 1.0, 0.5, 0.5, "int3", interval=iv)
        for iv in [(-1.0, 1.0), (0.5, 3.0), (-4.0, -2.0)]
    ]
    for a, b in itertools.combinations(vals, 2):
        assert abs(a - b) < 1e-12 * abs(a)


def test_int5_matches_int3_tightly():
    for z in (0.5, 1.0, 2.0):
        a = whittaker_pq(z, -0.3, 0.8, 0.3, 0.9, "int5")
        b = whittaker_pq(z, -0.3, 0.8, 0.3, 0.9, "int3", interval=(-1.0, 1.0))
        assert abs(a - b) <= 1e-12 * abs(b)


def test_representation_values_agree():
    vals = representation_values({"z": 2.0, "lambda": 0.25, "rho": 1.0, "p": 0.3, "q": 0.9})
    assert len(vals) == 8
    ref = vals["definition"]
    for v in vals.values():
        assert abs(v - ref) < 1e-10 * abs(ref)


def test_complex_argument_representations():
    z = 1.0 + 0.8j
    ref = whittaker_pq(z, 0.25, 1.0, 0.4, 0.2)
    for rep in INTEGRAL_REPS + (Representation.REFLECTED,):
        assert abs(whittaker_pq(z, 0.25, 1.0, 0.4, 0.2, rep) - ref) < 1e-10 * abs(ref)


def test_batched_p_q():
    p = np.array([0.0, 0.3, 1.0])
    v = whittaker_pq(1.0, 0.25, 1.0, p, 0.5, "int1")
    for pi, vi in zip(p, v):
        assert abs(vi - whittaker_pq(1.0, 0.25, 1.0, pi, 0.5, "int1")) < 1e-14


def test_branch_cut():
    with pytest.raises(BranchCutError) as exc:
        whittaker_pq(-1.0, 0.0, 0.5)
    assert exc.value.code == "branch-cut"
    with pytest.raises(BranchCutError):
        whittaker_pq(0.0, 0.0, 0.5)
    # the arg-pi convention evaluates on the cut
    v = whittaker_pq(-1.0, 0.0, 0.5, on_cut="arg-pi")
    assert abs(v - (-2 * math.sinh(0.5))) < 1e-14 * 2


def test_parameter_domain():
    with pytest.raises(DomainError):
        whittaker_pq(1.0, 0.0, -0.6)
    with pytest.raises(DomainError):
        whittaker_pq(1.0, 1.0, 0.25)  # rho - lam < -1/2 without p
    assert math.isfinite(abs(whittaker_pq(1.0, 1.0, 0.25, 0.5, 0.0, "int1")))
    with pytest.raises(DomainError):
        whittaker_pq(1.0, 0.0, 0.5, on_cut="wrap")


def test_principal_power():
    assert abs(principal_power(-1, 0.5) - 1j) < 1e-15
    assert abs(principal_power(complex(-1, -0.0), 0.5) - 1j) < 1e-15
    assert principal_power(4.0, 0.5) == 2.0
    assert principal_power(0.0, 1.5) == 0
    with pytest.raises(DomainError):
        principal_power(0.0, -0.5)


@pytest.mark.parametrize("lam,rho", [(0.0, 0.5), (0.25, 1.0), (-0.3, 0.8)])
def test_transformation_upper_half_plane(lam, rho):
    z = 1.0 + 0.7j
    lhs = whittaker_pq(z, lam, rho, 0.3, 0.9)
    rhs = whittaker_reflect(z, lam, rho, 0.3, 0.9)
    assert abs(lhs - rhs) < 1e-10 * abs(lhs)


@pytest.mark.parametrize("lam,rho", [(0.25, 1.0), (-0.3, 0.8), (0.0, 0.25)])
def test_transformation_phase_on_positive_axis(lam, rho):
    # with arg(-1) = pi on both powers, the right side picks up exp(2 pi i (rho + 1/2))
    lhs = whittaker_pq(1.0, lam, rho, 0.3, 0.9)
    rhs = whittaker_reflect(1.0, lam, rho, 0.3, 0.9)
    phase = cmath.exp(2j * math.pi * (rho + 0.5))
    assert abs(rhs - phase * lhs) < 1e-10 * abs(lhs)


def test_transformation_exact_at_integer_exponent():
    lhs = whittaker_pq(1.5, 0.2, 0.5, 0.3, 0.9)
    rhs = whittaker_reflect(1.5, 0.2, 0.5, 0.3, 0.9)
    assert abs(lhs - rhs) < 1e-10 * abs(lhs)


@pytest.mark.parametrize("n", [1, 2])
def test_derivative_formula(n):
    z, lam, rho, p, q = 1.0, 0.25, 1.0, 0.4, 0.6

    def g(x):
        return cmath.exp(x / 2) * x ** (-rho - 0.5) * whittaker_pq(x, lam, rho, p, q, "int1")

    fd = central_difference(g, z, n)
    exact = whittaker_derivative_formula(z, lam, rho, p, q, n)
    assert abs(fd - exact) < 1e-5 * abs(exact)


@settings(max_examples=30, deadline=None)
@given(
    st.floats(0.1, 4),
    st.floats(-0.4, 0.4),
    st.floats(0.1, 2),
    st.floats(0, 1.5),
    st.floats(0, 1.5),
)
def test_positive_on_real_parameters(z, lam, rho, p, q):
    v = whittaker_pq(z, lam, rho, p, q, "int1")
    assert v.real > 0 and abs(v.imag) <= 1e-14 * v.real


@settings(max_examples=20, deadline=None)
@given(st.floats(0.1, 4), st.floats(-0.4, 0.4), st.floats(0.1, 2), st.floats(0, 1.5), st.floats(0, 1.5))
def test_definition_matches_int4(z, lam, rho, p, q):
    a = whittaker_pq(z, lam, rho, p, q, "definition")
    b = whittaker_pq(z, lam, rho, p, q, "int4")
    assert abs(a - b) < 1e-9 * abs(a)
