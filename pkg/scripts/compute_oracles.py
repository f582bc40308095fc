"""Independent reference values for the test suite.

Uses only numpy, math and mpmath (no package code): composite Simpson for
one-dimensional integrals, series summed term by term with Simpson
coefficients, and tensor Gauss-Legendre for the quadrant integral. The
printed values are frozen into tests/goldens.py.

    python scripts/compute_oracles.py
"""

import math

import mpmath
import numpy as np

PANELS = 10**6


def simpson(f, lo, hi, panels=PANELS):
    x = np.linspace(lo, hi, panels + 1)
    y = f(x)
    h = (hi - lo) / panels
    return h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())


def beta(x, y):
    return math.gamma(x) * math.gamma(y) / math.gamma(x + y)


def beta_pq_simpson(x, y, p, q):
    def f(t):
        return np.exp((x - 1) * np.log(t) + (y - 1) * np.log1p(-t) - p / t - q / (1 - t))

    return simpson(f, 1e-8, 1 - 1e-8)


def series(b, c, z, p, q, a=None, terms=60):
    norm = beta(b, c - b)
    total = 0.0
    poch = 1.0
    fact = 1.0
    for n in range(terms):
        coef = beta_pq_simpson(b + n, c - b, p, q) / norm
        total += coef * (poch if a is not None else 1.0) * z**n / fact
        if a is not None:
            poch *= a + n
        fact *= n + 1
    return total


def whittaker_int1_simpson(z, lam, rho, p, q):
    bnorm = beta(rho - lam + 0.5, rho + lam + 0.5)

    def f(t):
        return np.exp(
            (rho - lam - 0.5) * np.log(t)
            + (rho + lam - 0.5) * np.log1p(-t)
            + z * t
            - p / t
            - q / (1 - t)
        )

    return z ** (rho + 0.5) * math.exp(-z / 2) / bnorm * simpson(f, 1e-8, 1 - 1e-8)


def mellin_gl_box(z, lam, rho, r, s, box=40.0, nodes=400, t_nodes=400):
    # M_{p,q} via t = sin^2(theta), which removes the algebraic endpoint behaviour
    assert lam == 0 and rho == 1, "the sin^2 map below assumes exponents 1/2, 1/2"
    g, gw = np.polynomial.legendre.leggauss(nodes)
    pk = 0.5 * box * (g + 1)
    pw = 0.5 * box * gw
    th, thw = np.polynomial.legendre.leggauss(t_nodes)
    theta = 0.25 * math.pi * (th + 1)
    thw = 0.25 * math.pi * thw
    s2, c2 = np.sin(theta) ** 2, np.cos(theta) ** 2
    bnorm = beta(rho - lam + 0.5, rho + lam + 0.5)
    pref = z ** (rho + 0.5) * math.exp(-z / 2) / bnorm
    base = 2 * s2 * c2 * np.exp(z * s2)  # t^(1/2)(1-t)^(1/2) dt -> 2 s^2 c^2 dtheta
    total = 0.0
    for p, wp in zip(pk, pw):
        e = np.exp(-p / s2[None, :] - pk[:, None] / c2[None, :])  # (q, theta)
        m = pref * (e * base[None, :]) @ thw
        total += wp * p ** (r - 1) * np.sum(pw * pk ** (s - 1) * m)
    return total


def main():
    mpmath.mp.dps = 30
    out = {}
    out["finite_exp_kernel"] = simpson(lambda t: np.exp(-1 / t - 1 / (1 - t)), 1e-6, 1 - 1e-6)
    out["beta_pq_1_1_1_1"] = beta_pq_simpson(1.0, 1.0, 1.0, 1.0)
    out["phi_0.5_0.3_b1.5_c3_z2"] = series(1.5, 3.0, 2.0, 0.5, 0.3)
    out["f_0.2_0.7_a1.1_b1.5_c3_z0.4"] = series(1.5, 3.0, 0.4, 0.2, 0.7, a=1.1)
    out["whittaker_int1_z1.5_l0.25_r1_p0.3_q0.7"] = whittaker_int1_simpson(1.5, 0.25, 1.0, 0.3, 0.7)
    out["mellin_box_r1_s1_l0_r1_z1"] = mellin_gl_box(1.0, 0.0, 1.0, 1.0, 1.0)
    z, lam, rho, r, s = 1.0, 0.0, 1.0, 1.0, 1.0
    out["mellin_closed_z1_l0_r1_r1_s1"] = float(
        z ** (rho + 0.5)
        * mpmath.e ** (-z / 2)
        * mpmath.gamma(r)
        * mpmath.gamma(s)
        * mpmath.beta(rho + r - lam + 0.5, rho + s + lam + 0.5)
        / mpmath.beta(rho - lam + 0.5, rho + lam + 0.5)
        * mpmath.hyp1f1(rho + r - lam + 0.5, 2 * rho + r + s + 1, z)
    )
    delta, alpha, mu, lam, rho, p, q = 1.0, 3.0, 1.0, 0.25, 1.0, 0.3, 0.6
    zf = 2 * mu / (2 * alpha + mu)
    fpq = series(rho - lam + 0.5, 2 * rho + 1, zf, p, q, a=delta + rho + 0.5)
    out["laplace_d1_a3_m1_l0.25_r1_p0.3_q0.6"] = (
        mu ** (rho + 0.5) * math.gamma(delta + rho + 0.5) / (alpha + mu / 2) ** (delta + rho + 0.5) * fpq
    )
    for k, v in out.items():
        print(f"{k} = {float(v)!r}")


if __name__ == "__main__":
    main()
