"""Universal limiting kernels: Meijer hard-edge and Airy soft-edge."""

import math

import numpy as np
import pytest

from mbedge.kernels import (
    LimitKernelSpec,
    _airy_kernel_integral,
    kernel_airy,
    kernel_meijer,
    kernel_tau_limits,
    phi_mei,
    phitilde_mei,
)
from mbedge.limitmaps import PreMapData, conj_factor, tau_constants
from mbedge.specialfn import mellin_barnes_oracle


def test_limit_kernel_spec_validation():
    with pytest.raises(ValueError):
        LimitKernelSpec(2, 0.0, "bessel")
    with pytest.raises(ValueError):
        LimitKernelSpec(2, -1.2)


# ---------------------------------------------------------------------------
# limit functions
# ---------------------------------------------------------------------------

def test_phitilde_at_zero():
    s = LimitKernelSpec(2, 0.0)
    assert phitilde_mei(s, 0.0) == pytest.approx(0.5641895835, abs=1e-10)


def test_phitilde_smooth_across_one():
    s = LimitKernelSpec(2, 0.7)
    left = phitilde_mei(s, 1.0 - 1e-9)
    right = phitilde_mei(s, 1.0 + 1e-9)
    assert abs(left - right) <= 1e-7


def test_phi_oracle_agreement():
    s = LimitKernelSpec(2, 0.25)
    p = s.meijer_params
    x = 0.8
    mine = phi_mei(s, x)
    oracle = x ** (2 - 0.25 - 1) * mellin_barnes_oracle(x**2, p, "gtheta0")
    assert abs(mine - oracle) <= 1e-9 * max(1.0, abs(oracle))


def test_phi_small_x_exponent():
    # the leading residue power cancels the prefactor: phi is finite at 0
    s = LimitKernelSpec(2, 0.45)
    v0 = phi_mei(s, 0.0)
    assert v0 == pytest.approx(phi_mei(s, 1e-7), rel=1e-5)
    assert math.isfinite(v0) and v0 != 0.0
    # log-log slope of |phi - phi(0)| is the next integer power
    xs = np.power(10.0, np.linspace(-5, -3, 6))
    ys = np.abs([phi_mei(s, float(x)) - v0 for x in xs])
    slope = np.polyfit(np.log(xs), np.log(ys), 1)[0]
    assert slope == pytest.approx(1.0, abs=0.05)


# ---------------------------------------------------------------------------
# Meijer kernel
# ---------------------------------------------------------------------------

def test_meijer_kernel_node_doubling_stability():
    from mbedge.kernels import _kernel_meijer_quad
    s = LimitKernelSpec(2, 0.0)
    a = _kernel_meijer_quad(s, 1.0, 1.0, 64)
    b = _kernel_meijer_quad(s, 1.0, 1.0, 128)
    assert abs(a - b) <= 1e-8 * max(1.0, abs(b))


def test_meijer_kernel_diagonal_positive():
    s = LimitKernelSpec(2, 0.0)
    for x in np.linspace(0.2, 3.9, 8):
        assert kernel_meijer(s, float(x), float(x)) > 0


def test_meijer_kernel_integer_alpha_routes_without_failure():
    s = LimitKernelSpec(2, 1.0)
    v = kernel_meijer(s, 1.0, 1.0)
    assert math.isfinite(v)


def test_meijer_kernel_self_convergence_grid():
    from mbedge.kernels import _kernel_meijer_quad
    s = LimitKernelSpec(2, 0.25)
    for x in np.linspace(0.4, 2.5, 5):
        for y in np.linspace(0.4, 2.5, 5):
            a = _kernel_meijer_quad(s, float(x), float(y), 64)
            b = _kernel_meijer_quad(s, float(x), float(y), 128)
            assert abs(a - b) <= 1e-8 * max(1.0, abs(b))


def test_meijer_kernel_theta1_bessel_reduction():
    # cross-check only: at theta = 1 the machinery reduces to the Bessel kernel
    from scipy import special as sp
    s = LimitKernelSpec(1, 0.5)
    x, y = 0.9, 1.4

    def bessel_kernel(x, y):
        val, _ = __import__("scipy.integrate", fromlist=["quad"]).quad(
            lambda u: sp.jv(0.5, 2 * math.sqrt(u * x)) * sp.jv(0.5, 2 * math.sqrt(u * y)),
            0.0, 1.0, limit=200)
        return (x / y) ** 0.25 * val

    assert kernel_meijer(s, x, y) == pytest.approx(bessel_kernel(x, y), rel=1e-7)


# ---------------------------------------------------------------------------
# Airy kernel
# ---------------------------------------------------------------------------

def test_airy_kernel_origin_value():
    # Ai'(0)^2 = 0.06698748377966397 (the trailing digits of the quoted
    # 0.0669874808 are a transcription slip; see the decisions ledger)
    assert kernel_airy(0.0, 0.0) == pytest.approx(0.0669874838, abs=1e-9)


def test_airy_kernel_symmetry_exact():
    assert kernel_airy(0.3, -0.2) == kernel_airy(-0.2, 0.3)


def test_airy_kernel_two_paths_at_spec_point():
    assert abs(kernel_airy(0.3, -0.2) - _airy_kernel_integral(0.3, -0.2)) <= 1e-9


def test_airy_kernel_two_paths_grid():
    for x in np.linspace(-3, 3, 10):
        for y in np.linspace(-3, 3, 10):
            cd = kernel_airy(float(x), float(y))
            integral = _airy_kernel_integral(float(x), float(y))
            assert abs(cd - integral) <= 1e-9


# ---------------------------------------------------------------------------
# tau-limit harness
# ---------------------------------------------------------------------------

def test_tau_limits_negative_direction():
    s = LimitKernelSpec(2, 0.25)
    tau = -5.0
    scale = (-tau) ** 1.5
    expect = scale * kernel_meijer(s, scale * 0.5, scale * 0.7)
    assert kernel_tau_limits(s, tau, 0.5, 0.7) == expect


def test_tau_limits_positive_direction():
    s = LimitKernelSpec(2, 0.0)
    tau = 6.0
    d = PreMapData(2)
    c1, c2 = tau_constants(d)
    fac = conj_factor(d, 0.7, tau) / conj_factor(d, 0.5, tau)
    scale = (c1 * tau) ** 1.5 * c2 * tau ** (-4.0 / 3.0)
    expect = fac / scale * kernel_airy(0.5, 0.7)
    assert kernel_tau_limits(s, tau, 0.5, 0.7) == pytest.approx(expect, rel=1e-12)


def test_tau_limits_constants_shared_source():
    d = PreMapData(3)
    c1, c2 = tau_constants(d)
    assert c1 == 9.0 / 8.0 * 3.0 ** (-0.25)
    assert c2 == 2.0 ** (2.0 / 3.0) * 4.0 ** (5.0 / 3.0) / (2.0 ** (1.0 / 3.0) * 9.0)


def test_tau_limits_rejects_zero():
    with pytest.raises(ValueError):
        kernel_tau_limits(LimitKernelSpec(2, 0.0), 0.0, 1.0, 1.0)
