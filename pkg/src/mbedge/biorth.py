"""Finite-n biorthogonal polynomials and kernels in configurable precision.

The bimoment matrix B_{jk} = I_{j + theta k} built from the one-dimensional
moments I_m = int_0^infty x^{m + alpha} e^{-n V_t(x)} dx loses O(n) digits in
its LDU pivots, so everything here runs in mpmath with a default working
precision of 12 bits per polynomial degree.  The factorization B = L D U
delivers simultaneously the monic p-family (rows of L^{-1}), the monic
q-family (columns of U^{-1}) and the normalization constants kappa_j = D_jj.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from mpmath import mp

from .equilibrium import HardEdgeEquilibrium, Potential, SoftEdgeEquilibrium

__all__ = [
    "BiorthError",
    "PrecisionError",
    "MomentTable",
    "BiorthFamily",
    "KernelGrid",
    "default_bits",
    "moments_quadratic",
    "moments_general",
    "biorth_solve",
    "kernel_Kn",
    "rescaled_kernel_origin",
    "rescaled_kernel_soft",
]


class BiorthError(RuntimeError):
    pass


class PrecisionError(BiorthError):
    pass


def default_bits(n: int) -> int:
    """Default working precision: 12 bits per degree, floored at 128 bits.

    The floor keeps the 1e-20-relative biorthogonality residual check
    meaningful for small families, where fixed overheads dominate the
    O(n) digit loss of the bimoment pivots.
    """
    return max(128, 12 * n)


# ---------------------------------------------------------------------------
# Moment tables
# ---------------------------------------------------------------------------

@dataclass
class MomentTable:
    """I_m = int_0^infty x^{m+alpha} e^{-n V_t(x)} dx for m = 0..M."""

    potential: Potential
    n: int
    precision_bits: int
    values: list = field(repr=False)

    @property
    def M(self) -> int:
        return len(self.values) - 1

    def moment(self, m: int):
        return self.values[m]

    def to_text(self) -> str:
        dps = int(self.precision_bits * 0.30103) + 10
        P = self.potential
        lines = [
            "# mbedge moment table",
            f"precision_bits={self.precision_bits}",
            f"theta={P.theta}",
            f"alpha={P.alpha!r}",
            f"t={P.t!r}",
            "coeffs=" + ",".join(repr(v) for v in P.coeffs),
            f"n={self.n}",
            f"count={len(self.values)}",
        ]
        with mp.workprec(self.precision_bits):
            lines.extend(mpmath.nstr(v, dps) for v in self.values)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MomentTable":
        meta = {}
        values_raw = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" in line and not values_raw:
                key, _, val = line.partition("=")
                meta[key] = val
            else:
                values_raw.append(line)
        bits = int(meta["precision_bits"])
        P = Potential(int(meta["theta"]), float(meta["alpha"]),
                      tuple(float(v) for v in meta["coeffs"].split(",")),
                      float(meta["t"]))
        if len(values_raw) != int(meta["count"]):
            raise BiorthError("moment table text is truncated")
        with mp.workprec(bits):
            values = [mpmath.mpf(v) for v in values_raw]
        return cls(potential=P, n=int(meta["n"]), precision_bits=bits, values=values)


def _weight_cutoff(P: Potential, n: int, m_max: float, bits: int) -> float:
    """X with x^{m+alpha} e^{-n V_t(x)} below 2^-bits beyond it."""
    scale = n / P.t
    X = 1.0
    target = bits * math.log(2.0) + 40.0
    for _ in range(200):
        if scale * P.V(X) - (m_max + max(P.alpha, 0.0)) * math.log(max(X, 1.0)) > target:
            return X
        X *= 1.35
    raise BiorthError("could not bound the weight tail")


def _quad_moment(P: Potential, n: int, m: int, bits: int):
    """Direct adaptive quadrature of I_m in the working precision."""
    with mp.workprec(bits + 40):
        X = _weight_cutoff(P, n, m, bits)
        scale = mpmath.mpf(n) / mpmath.mpf(repr(P.t))
        coeffs = [mpmath.mpf(repr(v)) for v in P.coeffs]
        al = mpmath.mpf(repr(P.alpha))

        def f(x):
            V = mpmath.mpf(0)
            for c in reversed(coeffs):
                V = V * x + c
            V = V * x
            return x ** (m + al) * mpmath.exp(-scale * V)

        target = mpmath.mpf(2) ** (-(bits + 10))
        val, err = mpmath.quad(f, [0, X / 16.0, X / 4.0, X],
                               maxdegree=10, error=True)
        if err > target * abs(val):
            val, err = mpmath.quad(f, [0, X / 16.0, X / 4.0, X],
                                   maxdegree=14, error=True)
            if err > mpmath.mpf(2) ** (-(bits - 20)) * abs(val):
                raise BiorthError(
                    f"moment quadrature did not converge (m={m}, err={err})"
                )
    return val  # full guard precision; callers round when storing


def moments_general(P: Potential, n: int, M: int, bits: int | None = None) -> MomentTable:
    """All moments by direct quadrature (the oracle path, any polynomial V)."""
    bits = bits or default_bits(n)
    with mp.workprec(bits):
        values = [+_quad_moment(P, n, m, bits) for m in range(M + 1)]
    return MomentTable(potential=P, n=n, precision_bits=bits, values=values)


def moments_quadratic(P: Potential, n: int, M: int, bits: int | None = None) -> MomentTable:
    """Seeded quadrature plus the integration-by-parts recurrence
    2 v2 I_{m+1} + v1 I_m = (t/n)(m + alpha) I_{m-1}, validated against
    direct quadrature at m in {5, 17, 40} before being trusted.
    """
    if len(P.coeffs) != 2 or P.coeffs[1] <= 0:
        raise ValueError("moments_quadratic requires V = v1 x + v2 x^2 with v2 > 0")
    bits = bits or default_bits(n)
    v1, v2 = P.coeffs
    with mp.workprec(bits + 40):
        i0 = _quad_moment(P, n, 0, bits)
        i1 = _quad_moment(P, n, 1, bits)
        tn = mpmath.mpf(repr(P.t)) / n
        al = mpmath.mpf(repr(P.alpha))
        v1m, v2m = mpmath.mpf(repr(v1)), mpmath.mpf(repr(v2))
        values = [i0, i1]
        for m in range(1, M):
            nxt = (tn * (m + al) * values[m - 1] - v1m * values[m]) / (2 * v2m)
            values.append(nxt)
        for m in (5, 17, 40):
            if m <= M:
                direct = _quad_moment(P, n, m, bits)
                rel = abs(values[m] - direct) / abs(direct)
                if rel > mpmath.mpf("1e-25"):
                    raise BiorthError(
                        f"moment recurrence disagrees with quadrature at m={m}: {rel}"
                    )
    with mp.workprec(bits):
        values = [+v for v in values]
    return MomentTable(potential=P, n=n, precision_bits=bits, values=values)


# ---------------------------------------------------------------------------
# Biorthogonal families
# ---------------------------------------------------------------------------

@dataclass
class BiorthFamily:
    """Monic p_j / q_k coefficient rows and the pairing constants kappa_j."""

    potential: Potential
    n: int
    precision_bits: int
    p_coeffs: list = field(repr=False)
    q_coeffs: list = field(repr=False)
    kappas: list = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.kappas)


def biorth_solve(T: MomentTable, size: int) -> BiorthFamily:
    """LDU factorization of the bimoment matrix; monic rows, kappa = pivots.

    Raises :class:`PrecisionError` (suggesting bits >= 16 n) if a pivot
    degenerates or the biorthogonality residual exceeds 1e-20 kappa.
    """
    th = T.potential.theta
    need = (size - 1) * (th + 1)
    if T.M < need:
        raise BiorthError(f"moment table too short: need M >= {need}, have {T.M}")
    bits = T.precision_bits
    with mp.workprec(bits):
        B = [[T.values[j + th * k] for k in range(size)] for j in range(size)]
        L = [[mpmath.mpf(1) if i == j else mpmath.mpf(0) for j in range(size)]
             for i in range(size)]
        U = [[mpmath.mpf(1) if i == j else mpmath.mpf(0) for j in range(size)]
             for i in range(size)]
        A = [row[:] for row in B]
        kappas = []
        for i in range(size):
            piv = A[i][i]
            if piv == 0 or mpmath.isnan(piv):
                raise PrecisionError(
                    f"singular minor at index {i}; raise precision to >= {16 * size} bits"
                )
            kappas.append(piv)
            for k in range(i + 1, size):
                U[i][k] = A[i][k] / piv
            for j in range(i + 1, size):
                L[j][i] = A[j][i] / piv
                for k in range(i + 1, size):
                    A[j][k] -= L[j][i] * piv * U[i][k]

        # p rows: L^{-1} (forward substitution), q rows: columns of U^{-1}
        Linv = [[mpmath.mpf(0)] * size for _ in range(size)]
        for j in range(size):
            Linv[j][j] = mpmath.mpf(1)
            for i in range(j - 1, -1, -1):
                acc = mpmath.mpf(0)
                for r in range(i + 1, j + 1):
                    acc += L[r][i] * Linv[j][r]
                Linv[j][i] = -acc
        Uinv = [[mpmath.mpf(0)] * size for _ in range(size)]
        for k in range(size):
            Uinv[k][k] = mpmath.mpf(1)
            for i in range(k - 1, -1, -1):
                acc = mpmath.mpf(0)
                for r in range(i + 1, k + 1):
                    acc += U[i][r] * Uinv[r][k]
                Uinv[i][k] = -acc
        p_rows = [Linv[j][: j + 1] for j in range(size)]
        q_rows = [[Uinv[l][k] for l in range(k + 1)] for k in range(size)]

        # biorthogonality residual: P B Q^T must be diag(kappa) to 1e-20 kappa
        tol = mpmath.mpf("1e-20")
        for j in range(size):
            for k in range(size):
                acc = mpmath.mpf(0)
                for i in range(j + 1):
                    row = B[i]
                    s = mpmath.mpf(0)
                    for l in range(k + 1):
                        s += q_rows[k][l] * row[l]
                    acc += p_rows[j][i] * s
                target = kappas[j] if j == k else mpmath.mpf(0)
                if abs(acc - target) > tol * abs(kappas[j]):
                    raise PrecisionError(
                        f"biorthogonality residual too large at ({j},{k}); "
                        f"raise precision to >= {16 * size} bits"
                    )
    return BiorthFamily(potential=T.potential, n=T.n, precision_bits=bits,
                        p_coeffs=p_rows, q_coeffs=q_rows, kappas=kappas)


def _horner(coeffs, x):
    acc = mpmath.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _weight(P: Potential, n: int, x):
    """x^alpha e^{-n V_t(x)} in the working precision."""
    al = mpmath.mpf(repr(P.alpha))
    coeffs = [mpmath.mpf(repr(v)) for v in P.coeffs]
    V = mpmath.mpf(0)
    for c in reversed(coeffs):
        V = V * x + c
    V = V * x / mpmath.mpf(repr(P.t))
    return x**al * mpmath.exp(-mpmath.mpf(n) * V)


def kernel_Kn(F: BiorthFamily, T: MomentTable, x: float, y: float) -> float:
    """K_n(x, y) = x^a e^{-n V_t(x)} sum_j p_j(x) q_j(y^theta) / kappa_j.

    All accumulation happens in the working precision (mpmath floats carry
    unbounded exponents, so no separate overflow guard is needed); the
    result is returned in double width.
    """
    P = F.potential
    if x < 0 or y < 0:
        raise ValueError("kernel arguments must be nonnegative")
    if x == 0 and P.alpha != 0:
        if P.alpha > 0:
            return 0.0
        raise ValueError("kernel diverges at x = 0 for alpha < 0")
    with mp.workprec(F.precision_bits):
        xm = mpmath.mpf(repr(float(x)))
        ym = mpmath.mpf(repr(float(y))) ** P.theta
        acc = mpmath.mpf(0)
        for j in range(F.size):
            acc += _horner(F.p_coeffs[j], xm) * _horner(F.q_coeffs[j], ym) / F.kappas[j]
        weight = mpmath.mpf(1) if x == 0 else _weight(P, F.n, xm)
        return float(weight * acc)


def rescaled_kernel_origin(F: BiorthFamily, T: MomentTable,
                           eq: HardEdgeEquilibrium, x: float, y: float) -> float:
    """(rho n)^{-(th+1)/(2 th)} K_n at arguments scaled by the same factor.

    ``eq`` must be the t = 1 record of the critical potential; the family is
    expected to be built at t_n = 1 - sqrt(A1/n) tau.
    """
    th = eq.theta
    s = (eq.rho * F.n) ** (-(th + 1.0) / (2.0 * th))
    return s * kernel_Kn(F, T, s * x, s * y)


def _soft_gauge_exponent(seq: SoftEdgeEquilibrium, P: Potential, x: float) -> float:
    """h(x) = (gtilde - g + V_t)(x) / 2: the balancing exponent at the soft edge.

    The raw kernel behaves like exp(n[h(y) - h(x)]) times the Airy structure:
    q_n carries e^{n gtilde} while the p_n side carries e^{n(g - V_t)}, and
    the half-sum of the two log-potential deficits is what symmetrizes them
    (at theta = 1, where g = gtilde, this degenerates to the classical
    sqrt(weight) splitting).
    """
    from .equilibrium import g_and_ell
    cache = getattr(seq, "_gauge_cache", None)
    if cache is None or cache.get("coeffs") != P.coeffs:
        _, g_at, gt_at = g_and_ell(seq, P)
        cache = {"coeffs": P.coeffs, "g": g_at, "gt": gt_at, "vals": {}}
        seq._gauge_cache = cache
    vals = cache["vals"]
    if x not in vals:
        vals[x] = 0.5 * (cache["gt"](x) - cache["g"](x) + P.V_t(x))
    return vals[x]


def rescaled_kernel_soft(F: BiorthFamily, T: MomentTable,
                         seq: SoftEdgeEquilibrium, u: float, v: float) -> float:
    """c_n K_n(b + c_n u, b + c_n v) conjugated to its symmetric gauge.

    c_n = (n pi d2_hat)^{-2/3}.  The raw kernel carries the weight entirely
    on its first argument and would diverge from the Airy limit by an
    exponential conjugation; multiplying by exp(n [h(x) - h(y)]) with h from
    :func:`_soft_gauge_exponent` removes it.  Conjugations leave every
    correlation determinant unchanged.
    """
    P = F.potential
    c_n = (F.n * math.pi * seq.d2_hat) ** (-2.0 / 3.0)
    x = seq.b_hat + c_n * u
    y = seq.b_hat + c_n * v
    if x <= 0 or y <= 0:
        raise ValueError("soft-edge window reaches past the origin")
    raw = kernel_Kn(F, T, x, y)
    hx = _soft_gauge_exponent(seq, P, x)
    hy = _soft_gauge_exponent(seq, P, y)
    with mp.workprec(F.precision_bits):
        gauge = mpmath.exp(F.n * (mpmath.mpf(hx) - mpmath.mpf(hy)))
        return float(c_n * mpmath.mpf(repr(raw)) * gauge)


# ---------------------------------------------------------------------------
# Kernel grids
# ---------------------------------------------------------------------------

@dataclass
class KernelGrid:
    """Sampled kernel values with scaling metadata, CSV/JSON serializable."""

    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray
    scaling: dict

    def __post_init__(self):
        self.xs = np.asarray(self.xs, dtype=float)
        self.ys = np.asarray(self.ys, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (len(self.xs), len(self.ys)):
            raise ValueError("grid shape mismatch")

    def to_csv(self) -> str:
        header = "x," + ",".join(format(y, ".17g") for y in self.ys)
        rows = [header]
        for x, row in zip(self.xs, self.values):
            rows.append(format(x, ".17g") + "," + ",".join(format(v, ".17g") for v in row))
        return "\n".join(rows) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "xs": [float(x) for x in self.xs],
            "ys": [float(y) for y in self.ys],
            "values": [[float(v) for v in row] for row in self.values],
            "scaling": self.scaling,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "KernelGrid":
        return cls(xs=np.array(d["xs"]), ys=np.array(d["ys"]),
                   values=np.array(d["values"]), scaling=dict(d["scaling"]))
