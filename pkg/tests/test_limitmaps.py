"""The limiting conformal map, its inverses, g-functions and constants."""

import cmath
import math

import numpy as np
import pytest

from mbedge.limitmaps import (
    LimitMapError,
    PreMapData,
    airy_conformal,
    airy_f_prime_at_1,
    conj_factor,
    g_functions,
    i_pre,
    j_pre,
    tau_constants,
)

D2 = PreMapData(2)
D3 = PreMapData(3)


def test_premap_constants():
    assert D2.sigma0 == pytest.approx(-(2.0 ** (-2.0 / 3.0)), rel=1e-15)
    assert D2.Cg == pytest.approx(8.0 / 6.0, rel=1e-15)
    assert D3.Cg == pytest.approx(27.0 / (2.0 * 4.0 * 4.0), rel=1e-15)


def test_j_pre_critical_point():
    for d in (D2, D3):
        assert j_pre(d, d.sigma0) == pytest.approx(1.0, abs=1e-14)
        h = 1e-4
        first = (j_pre(d, d.sigma0 + h) - j_pre(d, d.sigma0 - h)) / (2 * h)
        assert abs(first) <= 1e-7
        second = (j_pre(d, d.sigma0 + h) + j_pre(d, d.sigma0 - h)
                  - 2 * j_pre(d, d.sigma0)) / h**2
        t = d.theta
        assert second.real == pytest.approx(-(t + 1) * t ** (-2.0 / (t + 1.0)), abs=1e-5)


def test_j_pre_point_value():
    assert j_pre(D2, -1.0).real == pytest.approx(-1.0 + 3.0 * 2.0 ** (-2.0 / 3.0), rel=1e-14)


def test_j_pre_branch_cut():
    with pytest.raises(LimitMapError):
        j_pre(D2, 0.5)


def test_i_pre_round_trips():
    rng = np.random.default_rng(0)
    for d in (D2, D3):
        for _ in range(50):
            # branch 1 domain: radially outside the dividing curve
            r = rng.uniform(1.2, 8.0)
            phi = rng.uniform(-0.8, 0.8)
            sig = -r * abs(d.sigma0) * cmath.exp(1j * phi)
            assert abs(i_pre(d, j_pre(d, sig), 1) - sig) <= 1e-11 * (1 + abs(sig))
            # branch 2 domain: near the segment (sigma0, 0)
            tpar = rng.uniform(0.05, 0.95)
            eps = rng.uniform(-0.2, 0.2)
            sig2 = d.sigma0 * tpar + 1j * eps * abs(d.sigma0) * min(tpar, 1 - tpar)
            assert abs(i_pre(d, j_pre(d, sig2), 2) - sig2) <= 1e-11 * (1 + abs(sig2))


def test_i_pre_expansion_coefficient_at_1():
    # fit a + b sqrt(1-z) + c (1-z) through z = 1 - 10^{-k}, k = 4..6; the
    # sqrt coefficient is -/+ theta^{1/(th+1)} sqrt(2/(th+1))
    for d, sgn in ((D2, -1.0), (D2, 1.0), (D3, -1.0)):
        t = d.theta
        target = sgn * t ** (1.0 / (t + 1.0)) * math.sqrt(2.0 / (t + 1.0))
        branch = 1 if sgn < 0 else 2
        zs = [1.0 - 10.0 ** (-k) for k in (4, 5, 6)]
        rows = np.array([[math.sqrt(1 - z), (1 - z), (1 - z) ** 1.5] for z in zs])
        rhs = np.array([(i_pre(d, z, branch) - d.sigma0).real for z in zs])
        coef = np.linalg.solve(rows, rhs)
        assert coef[0] == pytest.approx(target, abs=1e-6)


def test_i_pre_image_of_cut_on_level_curve():
    # Ipre_1((1, inf)) lands where Im Jpre = 0
    for d in (D2, D3):
        for x in (1.5, 3.0, 10.0):
            s = i_pre(d, x + 1e-12j, 1)
            assert abs(j_pre(d, s).imag) <= 1e-9


def test_g_jump_relations():
    eps = 1e-11
    for d in (D2, D3):
        for x in (2.0, 3.5, 5.0):
            a = g_functions(d, x + 1j * eps, 0) - g_functions(d, x - 1j * eps, 1)
            b = g_functions(d, x - 1j * eps, 0) - g_functions(d, x + 1j * eps, 1)
            assert abs(a) <= 1e-9 and abs(b) <= 1e-9
        for x in (-0.5, -1.5, -4.0):
            for k in range(1, d.theta + 1):
                k_next = k + 1 if k < d.theta else 1
                v = g_functions(d, x + 1j * eps, k) - g_functions(d, x - 1j * eps, k_next)
                assert abs(v) <= 1e-9


def test_g0_minus_g1_positive_inside():
    for d in (D2, D3):
        for x in (0.2, 0.5, 0.8):
            assert (g_functions(d, x, 0) - g_functions(d, x, 1)).real > 0


def test_g0_large_z_expansion():
    # two-point fit of the leading and subleading coefficients at |z| = 1e3, 1e4
    for d in (D2, D3):
        t = d.theta
        z1, z2 = 1e3j, 1e4j
        g1v, g2v = g_functions(d, z1, 0), g_functions(d, z2, 0)
        ze1 = (z1 / t) ** (1.0 / (t + 1.0))
        ze2 = (z2 / t) ** (1.0 / (t + 1.0))
        M = np.array([[ze1**2, ze1], [ze2**2, ze2]])
        A, B = np.linalg.solve(M, np.array([g1v, g2v]))
        A_ref = -d.Cg * cmath.exp(-2j * math.pi / (t + 1.0))
        B_ref = d.Cg * (2.0 / t) * (t - 1.0) * cmath.exp(-1j * math.pi / (t + 1.0))
        assert abs(A - A_ref) <= 0.01 * abs(A_ref)
        assert abs(B - B_ref) <= 0.01 * abs(B_ref)


def test_branch_classification_against_region():
    # branch-1 images stay outside the dividing curve, branch-2 inside,
    # detected through the sign of Im Jpre on perturbed points
    d = D2
    rng = np.random.default_rng(5)
    for _ in range(25):
        z = complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3))
        s1 = i_pre(d, z, 1)
        s2 = i_pre(d, z, 2)
        assert abs(s1 - s2) > 1e-6
        assert abs(j_pre(d, s1) - z) <= 1e-11 * (1 + abs(z))
        assert abs(j_pre(d, s2) - z) <= 1e-11 * (1 + abs(z))


def test_airy_conformal_value_and_slope():
    for d, expect in ((D2, -(2.0 ** (4.0 / 3.0)) / 3.0 ** (5.0 / 3.0)), (D3, None)):
        assert airy_conformal(d, 1.0) == 0.0
        h = 1e-5
        fd = (airy_conformal(d, 1 + h).real - airy_conformal(d, 1 - h).real) / (2 * h)
        assert fd == pytest.approx(airy_f_prime_at_1(d), abs=1e-7)
        if expect is not None:
            assert airy_f_prime_at_1(d) == pytest.approx(expect, rel=1e-12)
            assert expect == pytest.approx(-0.403800, abs=5e-6)


def test_airy_conformal_domain_guard():
    with pytest.raises(LimitMapError):
        airy_conformal(D2, 2.0)


def test_tau_constants_values():
    c1, c2 = tau_constants(D2)
    assert c1 == pytest.approx((4.0 / 3.0) * 2.0 ** (-1.0 / 3.0), rel=1e-14)
    assert c1 == pytest.approx(1.05827, abs=1e-5)
    assert c2 == pytest.approx(3.0 ** (5.0 / 3.0) / (2.0 ** (1.0 / 3.0) * 4.0), rel=1e-14)
    assert c2 == pytest.approx(1.23822, abs=1e-5)
    # c2 = -1 / (theta f'(1))
    assert c2 == pytest.approx(-1.0 / (2.0 * airy_f_prime_at_1(D2)), rel=1e-12)


def test_conj_factor_at_origin():
    # x = 0 gives xi = 1 where g_0(1) = g_1(1)
    tau = 5.0
    g01 = g_functions(D2, 1.0 + 1e-14j, 0).real
    assert conj_factor(D2, 0.0, tau) == pytest.approx(math.exp(tau**2 * g01), rel=1e-9)


def test_conj_factor_reciprocal():
    v = conj_factor(D2, 0.7, 4.0)
    assert v * (1.0 / v) == pytest.approx(1.0, rel=1e-15)
