"""High-precision moments, biorthogonal families and finite-n kernels."""

import math

import mpmath
import numpy as np
import pytest
from mpmath import mp
from scipy.integrate import quad

from mbedge.biorth import (
    BiorthError,
    MomentTable,
    biorth_solve,
    default_bits,
    kernel_Kn,
    KernelGrid,
    moments_general,
    moments_quadratic,
    rescaled_kernel_origin,
    rescaled_kernel_soft,
)
from mbedge.equilibrium import Potential, solve_C1, solve_C2

GAUSS = Potential(2, 0.0, (0.0, 1.0), 1.0)     # V = x^2
TRANS = Potential(2, 0.0, (-2.0, 1.0), 1.0)    # V = x^2 - 2x


@pytest.fixture(scope="module")
def family_n6():
    T = moments_quadratic(TRANS, 6, 6 * 3 + 2, default_bits(6))
    return T, biorth_solve(T, 6)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

def test_gaussian_moment_seed():
    T = moments_quadratic(GAUSS, 1, 6, 128)
    assert float(T.values[0]) == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-15)


def test_recurrence_identity_i2():
    # integration by parts: 2 I_2 = I_0 for the n=1 Gaussian weight
    T = moments_quadratic(GAUSS, 1, 6, 128)
    assert float(T.values[2]) == pytest.approx(math.sqrt(math.pi) / 4.0, rel=1e-14)


def test_moment_monotone_scale():
    T = moments_quadratic(TRANS, 4, 30, 160)
    ratios = [float(T.values[m + 1] / T.values[m]) for m in range(25)]
    # ratios grow like the effective support edge but stay finite and positive
    assert all(r > 0 for r in ratios)
    assert max(ratios) < 50.0


def test_quadratic_vs_general_every_index():
    Tq = moments_quadratic(TRANS, 3, 14, 160)
    Tg = moments_general(TRANS, 3, 14, 160)
    with mp.workprec(200):
        worst = max(abs(a - b) / abs(b) for a, b in zip(Tq.values, Tg.values))
        assert worst < mpmath.mpf("1e-25")


def test_moments_quadratic_rejects_nonquadratic():
    with pytest.raises(ValueError):
        moments_quadratic(Potential(2, 0.0, (0.0, 0.0, 1.0), 1.0), 2, 10, 128)


def test_moment_table_text_round_trip():
    T = moments_quadratic(TRANS, 3, 12, 160)
    T2 = MomentTable.from_text(T.to_text())
    assert T2.precision_bits == T.precision_bits
    assert T2.n == T.n
    with mp.workprec(160):
        assert all(a == b for a, b in zip(T.values, T2.values))


# ---------------------------------------------------------------------------
# biorth solve
# ---------------------------------------------------------------------------

def test_family_n1():
    T = moments_quadratic(GAUSS, 1, 4, 128)
    F = biorth_solve(T, 1)
    assert [float(c) for c in F.p_coeffs[0]] == [1.0]
    assert [float(c) for c in F.q_coeffs[0]] == [1.0]
    assert float(F.kappas[0]) == pytest.approx(float(T.values[0]), rel=1e-25)


def test_family_n2_explicit_elimination():
    # weight e^{-2 V}: p_1(x) = x - I_1/I_0 by the single orthogonality condition
    T = moments_quadratic(GAUSS, 2, 8, 128)
    F = biorth_solve(T, 2)
    with mp.workprec(128):
        expect = float(-T.values[1] / T.values[0])
    assert float(F.p_coeffs[1][0]) == pytest.approx(expect, rel=1e-20)
    assert float(F.p_coeffs[1][1]) == 1.0


def test_kappas_positive_up_to_24():
    T = moments_quadratic(TRANS, 24, 24 * 3 + 2, default_bits(24))
    F = biorth_solve(T, 25)
    assert all(k > 0 for k in F.kappas)


def test_kappa_vs_determinant_minors():
    # kappa_j = D_{j+1} / D_j against direct determinant evaluation (n <= 8)
    T = moments_quadratic(TRANS, 8, 8 * 3 + 2, default_bits(8))
    F = biorth_solve(T, 8)
    th = 2
    with mp.workprec(T.precision_bits):
        prev = mpmath.mpf(1)
        for j in range(1, 9):
            B = mpmath.matrix(j, j)
            for r in range(j):
                for cidx in range(j):
                    B[r, cidx] = T.values[r + th * cidx]
            d = mpmath.det(B)
            ratio = d / prev
            assert abs(ratio - F.kappas[j - 1]) <= mpmath.mpf("1e-18") * abs(ratio)
            prev = d


def test_insufficient_moments_error(family_n6):
    T, _ = family_n6
    with pytest.raises(BiorthError):
        biorth_solve(T, 12)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def test_kernel_n1_independent_of_y():
    T = moments_quadratic(GAUSS, 1, 4, 128)
    F = biorth_solve(T, 1)
    a = kernel_Kn(F, T, 0.5, 0.2)
    b = kernel_Kn(F, T, 0.5, 3.0)
    assert a == b
    expect = 0.5**0 * math.exp(-(0.5**2)) / float(T.values[0])
    assert a == pytest.approx(expect, rel=1e-13)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_kernel_trace_normalization(n):
    T = moments_quadratic(TRANS, n, n * 3 + 2, default_bits(n))
    F = biorth_solve(T, n)
    hi = 5.0  # support edge is 2.598; weight kills the tail beyond
    trace, _ = quad(lambda x: kernel_Kn(F, T, x, x), 0.0, hi, limit=300)
    assert trace == pytest.approx(n, abs=1e-6)


def test_kernel_reproducing_property():
    n = 6
    T = moments_quadratic(TRANS, n, n * 3 + 2, default_bits(n))
    F = biorth_solve(T, n)
    x, y = 0.5, 0.7
    val, _ = quad(lambda z: kernel_Kn(F, T, x, z) * kernel_Kn(F, T, z, y),
                  0.0, 3.2, limit=300)
    assert val == pytest.approx(kernel_Kn(F, T, x, y), abs=1e-6)


def test_precision_sufficiency_probe():
    # +64 bits changes no reported double value by more than 1e-10
    n = 6
    T1 = moments_quadratic(TRANS, n, n * 3 + 2, default_bits(n))
    F1 = biorth_solve(T1, n)
    T2 = moments_quadratic(TRANS, n, n * 3 + 2, default_bits(n) + 64)
    F2 = biorth_solve(T2, n)
    for x, y in ((0.3, 0.8), (1.0, 1.0), (2.0, 0.5)):
        assert abs(kernel_Kn(F1, T1, x, y) - kernel_Kn(F2, T2, x, y)) <= 1e-10


def test_origin_rescaled_diagonal_positive():
    eq = solve_C1(TRANS)
    n = 16
    T = moments_quadratic(TRANS, n, n * 3 + 2, default_bits(n))
    F = biorth_solve(T, n)
    for x in np.linspace(0.1, 2.9, 8):
        assert rescaled_kernel_origin(F, T, eq, float(x), float(x)) > 0


def test_origin_rescaled_two_resolution_consistency():
    eq = solve_C1(TRANS)
    pts = (0.5, 1.0, 2.0)
    vals = {}
    for n in (16, 32):
        T = moments_quadratic(TRANS, n, n * 3 + 2, default_bits(n))
        F = biorth_solve(T, n)
        vals[n] = np.array([[rescaled_kernel_origin(F, T, eq, x, y) for y in pts]
                            for x in pts])
    rel = np.abs(vals[16] - vals[32]) / np.abs(vals[32])
    assert float(rel.max()) <= 0.15


def test_soft_edge_decay():
    P = Potential(2, 0.0, (-2.5, 1.0), 1.0)
    seq = solve_C2(P)
    n = 24
    T = moments_quadratic(P, n, n * 3 + 2, default_bits(n))
    F = biorth_solve(T, n)
    far = rescaled_kernel_soft(F, T, seq, 3.0, 3.0)
    near = rescaled_kernel_soft(F, T, seq, 0.0, 0.0)
    assert far < near
    assert far < 0.01


def test_soft_edge_density_exponent():
    P = Potential(2, 0.0, (-2.5, 1.0), 1.0)
    seq = solve_C2(P)
    from mbedge.equilibrium import density_psi
    xs = seq.b_hat - (seq.b_hat - seq.a_hat) * np.power(10.0, np.linspace(-5, -2.5, 10))
    ys = [density_psi(seq, float(x)) for x in xs]
    slope = np.polyfit(np.log(seq.b_hat - xs), np.log(ys), 1)[0]
    assert slope == pytest.approx(0.5, abs=0.02)


def test_kernel_grid_serialization_round_trip():
    grid = KernelGrid(xs=np.array([0.5, 1.0]), ys=np.array([0.2, 0.4, 0.6]),
                      values=np.arange(6.0).reshape(2, 3),
                      scaling={"kind": "origin_rescaled", "rho_n_factor": 0.125})
    d = grid.to_json_dict()
    back = KernelGrid.from_json_dict(d)
    assert back.scaling == grid.scaling
    assert np.array_equal(back.values, grid.values)
    csv = grid.to_csv()
    assert csv.splitlines()[0] == "x,0.20000000000000001,0.40000000000000002,0.59999999999999998"
