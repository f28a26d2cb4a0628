"""Equilibrium measures of Muttalib-Borodin ensembles via contour integrals.

The density of the equilibrium measure for a polynomial field V (scaled to
V/t) is encoded by the rational-power map

    J_{u,v}(s) = (u s + v) ((s+1)/s)^{1/theta},

with all constants expressed as contour integrals of U(J(s)) = J V'(J) over
a circle enclosing the preimage curve of the support.  Solving

    E(u, v) = t,   F(u, v) = (1 + theta) t

along the diagonal u = v gives the hard/transition-regime data (curve C1);
solving off the diagonal gives the soft-regime data (curve C2) with support
[a_hat, b_hat], a_hat > 0.  The helpers here also produce the density, the
log-potentials g and g-tilde, and the Euler-Lagrange constant ell.
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as _integrate

__all__ = [
    "EquilibriumError",
    "NewtonError",
    "RegimeError",
    "QuadratureError",
    "NegativeDensityWarning",
    "Potential",
    "ContourSpec",
    "HardEdgeEquilibrium",
    "SoftEdgeEquilibrium",
    "j_map",
    "contour_E",
    "contour_F",
    "contour_moment",
    "compute_A2_A3",
    "critical_point",
    "solve_C1",
    "solve_C2",
    "inverse_maps",
    "density_psi",
    "g_and_ell",
]


class EquilibriumError(RuntimeError):
    pass


class NewtonError(EquilibriumError):
    pass


class RegimeError(EquilibriumError):
    pass


class QuadratureError(EquilibriumError):
    pass


class NegativeDensityWarning(UserWarning):
    """The deformed measure is signed near the origin (t below critical)."""


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Potential:
    """Polynomial external field V(x) = sum_k v_k x^k with scaling V_t = V/t."""

    theta: int
    alpha: float
    coeffs: tuple[float, ...]
    t: float = 1.0

    def __post_init__(self):
        if self.theta < 2:
            raise ValueError("theta must be an integer >= 2")
        if self.alpha <= -1:
            raise ValueError("alpha must exceed -1")
        if self.t <= 0:
            raise ValueError("t must be positive")
        coeffs = tuple(float(v) for v in self.coeffs)
        if not coeffs or coeffs[-1] <= 0:
            raise ValueError("leading potential coefficient must be positive")
        object.__setattr__(self, "coeffs", coeffs)

    def V(self, x):
        out = 0.0
        for k in range(len(self.coeffs), 0, -1):
            out = out * x + self.coeffs[k - 1]
        return out * x

    def V_t(self, x):
        return self.V(x) / self.t

    def dV(self, x):
        out = 0.0
        for k in range(len(self.coeffs), 0, -1):
            out = out * x + k * self.coeffs[k - 1]
        return out

    def d2V(self, x):
        out = 0.0
        for k in range(len(self.coeffs), 1, -1):
            out = out * x + k * (k - 1) * self.coeffs[k - 1]
        return out

    def U(self, z):
        """U(z) = z V'(z)."""
        return z * self.dV(z)

    def dU(self, z):
        return self.dV(z) + z * self.d2V(z)

    def with_t(self, t: float) -> "Potential":
        return Potential(self.theta, self.alpha, self.coeffs, t)


@dataclass(frozen=True)
class ContourSpec:
    """Circle realization of the outer contour, enclosing [-1, 1/theta]."""

    center: complex
    radius: float
    nodes: int = 256

    def __post_init__(self):
        if self.nodes < 64 or self.nodes % 2:
            raise ValueError("nodes must be an even integer >= 64")
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    @classmethod
    def default(cls, theta: int, nodes: int = 256) -> "ContourSpec":
        # any analytic deformation enclosing the support preimage works; the
        # factor 1.3 * 0.65 leaves the branch cut [-1, 0] well inside
        center = (-1.0 + 1.0 / theta) / 2.0
        radius = 0.65 * (1.0 + 1.0 / theta) * 1.3
        return cls(center, radius, nodes)

    def points(self, nodes: int | None = None):
        n = nodes or self.nodes
        phase = np.exp(2j * np.pi * np.arange(n) / n)
        xi = self.center + self.radius * phase
        w = self.radius * phase / n  # includes the 1/(2 pi i) dxi factor
        return xi, w

    def encloses(self, s: complex) -> bool:
        return abs(s - self.center) < self.radius


# ---------------------------------------------------------------------------
# The map J and the basic contour integrals
# ---------------------------------------------------------------------------

def j_map(u: float, v: float, s, theta: int):
    """J_{u,v}(s) = (u s + v)((s+1)/s)^{1/theta}, principal branch.

    The endpoint s = -1 is allowed (J = 0); the cut (-1, 0] is rejected.
    """
    s_arr = np.asarray(s, dtype=complex)
    on_cut = (np.abs(s_arr.imag) < 1e-300) & (s_arr.real > -1.0) & (s_arr.real <= 0.0)
    if np.any(on_cut):
        raise ValueError("j_map is not defined on the branch cut (-1, 0]")
    val = (u * s_arr + v) * ((s_arr + 1.0) / s_arr) ** (1.0 / theta)
    val = np.where(s_arr == -1.0, 0.0, val)
    return complex(val) if np.isscalar(s) or s_arr.ndim == 0 else val


_DOUBLING_TOL = 1e-10


def _contour_quad(C: ContourSpec, integrand) -> complex:
    """(1/2 pi i) closed-contour integral with a node-doubling error check."""
    xi1, w1 = C.points()
    xi2, w2 = C.points(2 * C.nodes)
    v1 = np.sum(integrand(xi1) * w1)
    v2 = np.sum(integrand(xi2) * w2)
    if abs(v1 - v2) > _DOUBLING_TOL * max(1.0, abs(v2)):
        raise QuadratureError(
            f"contour quadrature not converged: doubling changed {abs(v1 - v2):.3e}"
        )
    return v2


def _real_part(val: complex, what: str) -> float:
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise QuadratureError(f"{what} has spurious imaginary part {val.imag:.3e}")
    return float(val.real)


def contour_E(u: float, v: float, P: Potential, C: ContourSpec) -> float:
    """E(u,v) = (1/2 pi i) oint U(J_{u,v}(s)) / (s+1) ds."""
    th = P.theta
    val = _contour_quad(C, lambda xi: P.U(j_map(u, v, xi, th)) / (xi + 1.0))
    return _real_part(val, "E")


def contour_F(u: float, v: float, P: Potential, C: ContourSpec) -> float:
    """F(u,v) = (1/2 pi i) oint U(J_{u,v}(s)) / s ds."""
    th = P.theta
    val = _contour_quad(C, lambda xi: P.U(j_map(u, v, xi, th)) / xi)
    return _real_part(val, "F")


def contour_moment(u: float, v: float, P: Potential, C: ContourSpec, m: int) -> float:
    """(1/2 pi i) oint U(J_{u,v}(s)) / (s+1)^{m+1} ds  (m >= 1).

    m = 1 gives N'_In(-1) (criticality indicator), m = 2 gives A1.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    th = P.theta
    val = _contour_quad(C, lambda xi: P.U(j_map(u, v, xi, th)) / (xi + 1.0) ** (m + 1))
    return _real_part(val, "moment")


def _a2_a3_raw(c: float, P: Potential, C: ContourSpec) -> tuple[float, float]:
    th = P.theta

    def f2(xi):
        J = j_map(c, c, xi, th)
        return J * J * P.d2V(J) / (xi + 1.0) ** 2

    def f3(xi):
        J = j_map(c, c, xi, th)
        return J * J * P.d2V(J) / (xi + 1.0)

    return _real_part(_contour_quad(C, f2), "A2"), _real_part(_contour_quad(C, f3), "A3")


def compute_A2_A3(eq: "HardEdgeEquilibrium", P: Potential, C: ContourSpec | None = None):
    """A2 and A3 for a solved diagonal point, scaled like the record (by 1/t).

    Checks the exact quadrature identity
        A3 + 1 - ((theta+1)/theta) A2 = 1 - E/t + M1/(theta t),
    whose right side vanishes precisely at a transition-critical solve (the
    textbook relation A3 + 1 = ((theta+1)/theta) A2 is that special case).
    """
    C = C or ContourSpec.default(P.theta)
    a2r, a3r = _a2_a3_raw(eq.c, P, C)
    t = eq.t
    a2, a3 = a2r / t, a3r / t
    e = contour_E(eq.c, eq.c, P, C)
    m1 = contour_moment(eq.c, eq.c, P, C, 1)
    lhs = a3 + 1.0 - (P.theta + 1.0) / P.theta * a2
    rhs = 1.0 - e / t + m1 / (P.theta * t)
    if abs(lhs - rhs) > 1e-9 * max(1.0, abs(lhs), abs(rhs)):
        raise EquilibriumError(
            f"A2/A3 identity violated: lhs={lhs:.3e} rhs={rhs:.3e}"
        )
    return a2, a3


# ---------------------------------------------------------------------------
# Equilibrium records
# ---------------------------------------------------------------------------

@dataclass
class _NodeCache:
    """U_t(J(xi)) sampled on the doubled contour, reused by N_In evaluations."""

    xi: np.ndarray
    w: np.ndarray
    utj: np.ndarray


@dataclass
class HardEdgeEquilibrium:
    """Solved data along the diagonal curve C1 (hard or transition regime)."""

    theta: int
    c: float
    b: float
    A1: float
    A2: float
    A3: float
    d1: float
    rho: float
    ell: float
    t: float
    n_in_prime: float = 0.0
    _nodes: _NodeCache | None = field(default=None, repr=False)
    _support_polygon: np.ndarray | None = field(default=None, repr=False)

    @property
    def u(self) -> float:
        return self.c

    @property
    def v(self) -> float:
        return self.c

    @property
    def support(self) -> tuple[float, float]:
        return 0.0, self.b

    def to_json_dict(self) -> dict:
        return {
            "c": self.c, "b": self.b, "A1": self.A1, "A2": self.A2,
            "A3": self.A3, "d1": self.d1, "rho": self.rho, "ell": self.ell,
            "t": self.t,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


@dataclass
class SoftEdgeEquilibrium:
    """Solved data along the off-diagonal curve C2 (soft regime)."""

    theta: int
    c1: float
    c0: float
    s_a: float
    s_b: float
    a_hat: float
    b_hat: float
    ell_hat: float
    d2_hat: float
    t: float
    _nodes: _NodeCache | None = field(default=None, repr=False)
    _support_polygon: np.ndarray | None = field(default=None, repr=False)

    @property
    def u(self) -> float:
        return self.c1

    @property
    def v(self) -> float:
        return self.c0

    @property
    def support(self) -> tuple[float, float]:
        return self.a_hat, self.b_hat

    def to_json_dict(self) -> dict:
        return {
            "c1": self.c1, "c0": self.c0, "s_a": self.s_a, "s_b": self.s_b,
            "a_hat": self.a_hat, "b_hat": self.b_hat, "ell_hat": self.ell_hat,
            "d2_hat": self.d2_hat,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def _build_nodes(u: float, v: float, P: Potential, C: ContourSpec) -> _NodeCache:
    xi, w = C.points(2 * C.nodes)
    utj = P.U(j_map(u, v, xi, P.theta)) / P.t
    return _NodeCache(xi=xi, w=w, utj=utj)


def _n_in(eq, s) -> complex:
    """N_{t,In}(s) = (1/2 pi i) oint U_t(J(xi)) / (xi - s) dxi - 1."""
    nd = eq._nodes
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    vals = (nd.utj[None, :] / (nd.xi[None, :] - s_arr[:, None])) @ nd.w
    vals = vals - 1.0
    return vals[0] if np.isscalar(s) or np.asarray(s).ndim == 0 else vals


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------

def _dE_dc_diagonal(c: float, P: Potential, C: ContourSpec) -> float:
    # dE/dc = (1/c) (1/2 pi i) oint U'(J) J / (s+1) ds  along u = v = c
    th = P.theta

    def f(xi):
        J = j_map(c, c, xi, th)
        return P.dU(J) * J / (xi + 1.0)

    return _real_part(_contour_quad(C, f), "dE/dc") / c


def _bracket_root(fun, lo: float, hi: float, n: int = 60):
    grid = np.geomspace(lo, hi, n)
    vals = [fun(g) for g in grid]
    for i in range(n - 1):
        if vals[i] == 0.0:
            return grid[i], grid[i]
        if vals[i] * vals[i + 1] < 0:
            return grid[i], grid[i + 1]
    return None


def solve_C1(P: Potential, C: ContourSpec | None = None) -> HardEdgeEquilibrium:
    """Newton solve of E(c, c) = t on the diagonal, with all derived constants.

    F(c, c) = (1 + theta) t then holds automatically and is verified as a
    postcondition.  Fails if A2 vanishes at the solution (degenerate case).
    """
    C = C or ContourSpec.default(P.theta)
    t = P.t

    def res(c):
        return contour_E(c, c, P, C) - t

    br = _bracket_root(res, 1e-3, 50.0)
    if br is None:
        raise NewtonError("no bracket for E(c, c) = t on c in [1e-3, 50]")
    c = 0.5 * (br[0] + br[1])
    r = res(c)
    for _ in range(50):
        if abs(r) <= 1e-12 * max(1.0, abs(t)):
            break
        step = -r / _dE_dc_diagonal(c, P, C)
        lam = 1.0
        for _ in range(30):
            c_new = c + lam * step
            if c_new > 0:
                r_new = res(c_new)
                if abs(r_new) < abs(r):
                    break
            lam *= 0.5
        else:
            raise NewtonError("damped Newton stalled in solve_C1")
        c, r = c_new, r_new
    else:
        raise NewtonError("solve_C1 did not converge in 50 iterations")

    f_res = contour_F(c, c, P, C) - (1.0 + P.theta) * t
    if abs(f_res) > 1e-9 * max(1.0, abs(t)):
        raise EquilibriumError(f"F postcondition violated: residual {f_res:.3e}")

    th = P.theta
    b = c * (1.0 + th) ** (1.0 + 1.0 / th) / th
    a2r, a3r = _a2_a3_raw(c, P, C)
    if abs(a2r) < 1e-12 * max(1.0, abs(a3r)):
        raise RegimeError("A2 = 0: degenerate potential excluded by the theory")
    a1 = contour_moment(c, c, P, C, 2) / t
    m1 = contour_moment(c, c, P, C, 1) / t
    rho = a1 / c ** (2.0 * th / (th + 1.0))
    d1 = rho * math.sin(2.0 * math.pi / (th + 1.0)) / math.pi
    eq = HardEdgeEquilibrium(
        theta=th, c=c, b=b, A1=a1, A2=a2r / t, A3=a3r / t, d1=d1, rho=rho,
        ell=math.nan, t=t, n_in_prime=m1, _nodes=_build_nodes(c, c, P, C),
    )
    eq.ell = g_and_ell(eq, P)[0]
    return eq


def critical_point(P: Potential, C: ContourSpec | None = None) -> tuple[float, float]:
    """(c*, t_c): the diagonal point where N'_In(-1) = 0 and its t = E(c*, c*).

    The criticality condition does not involve t, so t_c is the unique
    scaling at which V/t sits exactly at the hard-to-soft transition.
    """
    C = C or ContourSpec.default(P.theta)

    def m1(c):
        return contour_moment(c, c, P, C, 1)

    br = _bracket_root(m1, 1e-3, 50.0)
    if br is None:
        raise RegimeError("potential family has no transition point c* > 0")
    lo, hi = br
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if m1(lo) * m1(mid) <= 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-14 * max(1.0, hi):
            break
    c_star = 0.5 * (lo + hi)
    return c_star, contour_E(c_star, c_star, P, C)


def _ef_jacobian(u: float, v: float, P: Potential, C: ContourSpec) -> np.ndarray:
    th = P.theta

    def make(kern, du):
        def f(xi):
            R = ((xi + 1.0) / xi) ** (1.0 / th)
            J = (u * xi + v) * R
            g = P.dU(J) * R * (xi if du else 1.0)
            return g * kern(xi)
        return f

    dEu = _real_part(_contour_quad(C, make(lambda xi: 1.0 / (xi + 1.0), True)), "dE/du")
    dEv = _real_part(_contour_quad(C, make(lambda xi: 1.0 / (xi + 1.0), False)), "dE/dv")
    dFu = _real_part(_contour_quad(C, make(lambda xi: 1.0 / xi, True)), "dF/du")
    dFv = _real_part(_contour_quad(C, make(lambda xi: 1.0 / xi, False)), "dF/dv")
    return np.array([[dEu, dEv], [dFu, dFv]])


def _newton_ef(u: float, v: float, t: float, P: Potential, C: ContourSpec,
               max_iter: int = 30) -> tuple[float, float]:
    target = np.array([t, (1.0 + P.theta) * t])
    x = np.array([u, v], dtype=float)
    for _ in range(max_iter):
        r = np.array([contour_E(x[0], x[1], P, C), contour_F(x[0], x[1], P, C)]) - target
        if np.max(np.abs(r)) <= 1e-12 * max(1.0, abs(t)):
            return float(x[0]), float(x[1])
        Jac = _ef_jacobian(x[0], x[1], P, C)
        step = np.linalg.solve(Jac, -r)
        lam = 1.0
        for _ in range(25):
            x_new = x + lam * step
            if x_new[0] > 0 and x_new[1] > 0:
                r_new = np.array([
                    contour_E(x_new[0], x_new[1], P, C),
                    contour_F(x_new[0], x_new[1], P, C),
                ]) - target
                if np.max(np.abs(r_new)) < np.max(np.abs(r)):
                    break
            lam *= 0.5
        else:
            raise NewtonError("damped Newton stalled on (E, F)")
        x = x_new
    raise NewtonError("Newton on (E, F) did not converge")


def solve_C2(P: Potential, C: ContourSpec | None = None) -> SoftEdgeEquilibrium:
    """Continuation solve along the off-diagonal curve C2 (soft regime).

    Requires t below the critical scaling t_c of the potential family.  The
    branch is entered at t_c with the tangent direction
    ((theta-1)A1 + theta A2, (theta-1)A1 - A2) * w, then continued to t.
    """
    C = C or ContourSpec.default(P.theta)
    th = P.theta
    t = P.t
    c_star, t_c = critical_point(P, C)
    if t >= t_c * (1.0 - 1e-10):
        raise RegimeError(
            f"t = {t} is not below the critical scaling t_c = {t_c:.12g}"
        )

    # tangent seed in units of the normalized potential V/t_c
    a2r, a3r = _a2_a3_raw(c_star, P, C)
    a1h = contour_moment(c_star, c_star, P, C, 2) / t_c
    a2h = a2r / t_c
    w = th * c_star / ((th * th - 1.0) * a1h * a2h)
    tang = np.array([
        ((th - 1.0) * a1h + th * a2h) * w,
        ((th - 1.0) * a1h - a2h) * w,
    ]) / t_c  # d(c1, c0)/dt

    that_target = t / t_c
    steps = max(8, int(math.ceil((1.0 - that_target) / 0.04)))
    ts = np.linspace(1.0, that_target, steps + 1)[1:]
    prev = [(1.0, (c_star, c_star))]
    for that in ts:
        if len(prev) == 1:
            dt = (that - 1.0) * t_c
            guess = (c_star + tang[0] * dt, c_star + tang[1] * dt)
        else:
            (ta, (ua, va)), (tb, (ub, vb)) = prev[-2], prev[-1]
            lam = (that - tb) / (tb - ta)
            guess = (ub + lam * (ub - ua), vb + lam * (vb - va))
        sol = _newton_ef(guess[0], guess[1], that * t_c, P, C)
        prev.append((that, sol))
        if len(prev) > 2:
            prev.pop(0)
    c1, c0 = prev[-1][1]

    disc = 4.0 * th * c0 * c1 + (th - 1.0) ** 2 * c1 * c1
    if disc < 0:
        raise EquilibriumError("negative discriminant for the edge points")
    root = math.sqrt(disc)
    s_a = -(th - 1.0) / (2.0 * th) - root / (2.0 * th * c1)
    s_b = -(th - 1.0) / (2.0 * th) + root / (2.0 * th * c1)
    a_hat = j_map(c1, c0, s_a, th)
    b_hat = j_map(c1, c0, s_b, th)
    a_hat = _real_part(complex(a_hat), "a_hat")
    b_hat = _real_part(complex(b_hat), "b_hat")
    if a_hat < -1e-9:
        raise EquilibriumError(f"soft edge a_hat = {a_hat} is negative")
    a_hat = max(a_hat, 0.0)
    if not a_hat < b_hat:
        raise EquilibriumError("edge ordering a_hat < b_hat violated")

    eq = SoftEdgeEquilibrium(
        theta=th, c1=c1, c0=c0, s_a=s_a, s_b=s_b, a_hat=a_hat, b_hat=b_hat,
        ell_hat=math.nan, d2_hat=math.nan, t=t,
        _nodes=_build_nodes(c1, c0, P, C),
    )
    eq.d2_hat = _fit_d2(eq)
    eq.ell_hat = g_and_ell(eq, P)[0]
    return eq


def _fit_d2(eq: SoftEdgeEquilibrium) -> float:
    """Square-root regression of the density near b_hat."""
    lo, hi = eq.support
    span = hi - lo
    xs = hi - span * np.power(10.0, np.linspace(-5.0, -2.5, 12))
    ys = np.array([density_psi(eq, float(x)) for x in xs])
    if np.any(ys <= 0):
        raise EquilibriumError("density not positive near b_hat")
    lx = np.log(hi - xs)
    ly = np.log(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - np.mean(ly)) ** 2))
    r2 = 1.0 - ss_res / ss_tot
    if r2 < 0.999:
        raise EquilibriumError(f"square-root density fit failed (R^2 = {r2:.5f})")
    # pin the exponent at exactly 1/2 for the amplitude
    return float(np.exp(np.mean(ly - 0.5 * np.log(hi - xs))))


# ---------------------------------------------------------------------------
# Inverse maps and the density
# ---------------------------------------------------------------------------

def _inverse_candidates(eq, z: complex) -> list[complex]:
    """Roots s of (u s + v)^theta (s+1) = z^theta s with J(s) = z verified."""
    th, u, v = eq.theta, eq.u, eq.v
    base = np.polynomial.polynomial.polypow([v, u], th)
    poly = np.polynomial.polynomial.polymul(base, [1.0, 1.0]).astype(complex)
    poly[1] -= complex(z) ** th
    roots = np.polynomial.polynomial.polyroots(poly)

    out = []
    for r in roots:
        r = _polish_root(eq, z, r)
        try:
            jr = j_map(u, v, complex(r), th)
        except ValueError:
            continue
        if abs(jr - z) <= 1e-9 * (1.0 + abs(z)):
            out.append(complex(r))
    return out


def _polish_root(eq, z: complex, r: complex, iters: int = 80) -> complex:
    """Newton refinement on the polynomialized inverse-map equation.

    The left-edge coalescence of theta+1 roots drags Newton's rate down to
    theta/(theta+1) until the iterate enters the cluster, so the budget is
    sized for the linear phase from companion-matrix accuracy ~eps^{1/4}.
    """
    th, u, v = eq.theta, eq.u, eq.v
    zt = complex(z) ** th

    def pval(s):
        return (u * s + v) ** th * (s + 1.0) - zt * s

    def pder(s):
        return (th * u * (u * s + v) ** (th - 1) * (s + 1.0)
                + (u * s + v) ** th - zt)

    for _ in range(iters):
        d = pder(r)
        if d == 0:
            break
        step = pval(r) / d
        r = r - step
        if abs(step) < 1e-15 * max(1.0, abs(r)):
            break
    return r


def _support_polygon(eq) -> np.ndarray:
    """The closed preimage curve of the support, traced once and cached."""
    if eq._support_polygon is not None:
        return eq._support_polygon
    lo, hi = eq.support
    span = hi - lo
    xs = lo + span * np.concatenate([
        np.geomspace(1e-7, 0.1, 60), np.linspace(0.1, 0.9, 120),
        1.0 - np.geomspace(0.1, 1e-7, 60),
    ])
    upper = []
    for x in xs:
        cands = [s for s in _inverse_candidates(eq, complex(x)) if s.imag > 1e-13]
        if cands:
            upper.append(max(cands, key=lambda s: s.imag))
    s_left = -1.0 if isinstance(eq, HardEdgeEquilibrium) else eq.s_a
    s_right = 1.0 / eq.theta if isinstance(eq, HardEdgeEquilibrium) else eq.s_b
    up = np.array([s_left] + upper + [s_right])
    poly = np.concatenate([up, np.conj(up[::-1])])
    eq._support_polygon = poly
    return poly


def _winding_inside(poly: np.ndarray, s: complex) -> bool:
    rel = poly - s
    ang = np.angle(rel[1:] / rel[:-1])
    return abs(np.sum(ang)) > math.pi


def inverse_maps(eq, z: complex) -> tuple[complex, complex | None]:
    """(I_1(z), I_2(z)): inverses of J outside/inside the support preimage.

    I_2 exists only for z in the closed theta-sector; ``None`` is returned
    otherwise.  Both satisfy j_map(s) = z to 1e-11 after Newton polish.
    """
    z = complex(z)
    cands = _inverse_candidates(eq, z)
    if not cands:
        raise EquilibriumError(f"no inverse-map root found for z = {z}")
    th, u, v = eq.theta, eq.u, eq.v
    for s in cands:
        if abs(j_map(u, v, s, th) - z) > 1e-11 * (1.0 + abs(z)):
            raise EquilibriumError("inverse root failed the round-trip postcondition")
    if len(cands) == 1:
        return cands[0], None
    poly = _support_polygon(eq)
    inside = [s for s in cands if _winding_inside(poly, s)]
    outside = [s for s in cands if not _winding_inside(poly, s)]
    if len(cands) > 2 or not outside:
        raise EquilibriumError(f"inverse-branch classification failed for z = {z}")
    s1 = outside[0]
    s2 = inside[0] if inside else None
    return s1, s2


def _j_second_derivative(eq, s: float) -> float:
    h = 1e-5 * max(1.0, abs(s))
    vals = [j_map(eq.u, eq.v, s + d, eq.theta) for d in (-h, 0.0, h)]
    return float(((vals[0] + vals[2] - 2.0 * vals[1]) / (h * h)).real)


def _boundary_pair(eq, x: float) -> tuple[complex, complex]:
    """I_+(x), I_-(x) for x in the open support: the conjugate root pair.

    Very close to the left edge all theta+1 polynomial roots coalesce and the
    companion-matrix roots lose ~eps^{1/(theta+1)}; Newton solves seeded by
    the analytic edge expansions take over when that happens.
    """
    th = eq.theta
    tol = 1e-9 * (1.0 + abs(x))

    cands = _inverse_candidates(eq, complex(x))
    ups = [s for s in cands if s.imag > 1e-13]
    if ups:
        s_plus = max(ups, key=lambda s: s.imag)
        return s_plus, s_plus.conjugate()

    seeds = []
    # coalescence-type expansion at the hard edge (also valid for a soft
    # record once x dwarfs a_hat)
    c_eff = abs(eq.v)
    seeds.append(
        -1.0 + (x / c_eff) ** (th / (th + 1.0)) * cmath.exp(1j * math.pi / (th + 1.0))
    )
    if isinstance(eq, SoftEdgeEquilibrium):
        jpp = _j_second_derivative(eq, eq.s_a)
        if jpp != 0:
            seeds.append(eq.s_a + 1j * math.sqrt(abs(2.0 * (x - eq.a_hat) / jpp)))
    for seed in seeds:
        s_plus = _polish_root(eq, complex(x), seed, iters=60)
        if s_plus.imag > 0 and abs(j_map(eq.u, eq.v, s_plus, th) - x) <= tol:
            return s_plus, s_plus.conjugate()
    raise EquilibriumError(f"no boundary inverse pair at x = {x}")


def density_psi(eq, x: float) -> float:
    """Equilibrium density psi_t(x) = Im N_In(I_+(x)) / (pi x).

    Along C1 with t below critical the value can be negative near 0; this is
    surfaced as :class:`NegativeDensityWarning`, not an error.
    """
    lo, hi = eq.support
    if not (lo < x < hi):
        raise ValueError(f"x = {x} outside the open support ({lo}, {hi})")
    s_plus, _ = _boundary_pair(eq, x)
    val = float(_n_in(eq, s_plus).imag / (math.pi * x))
    if val < -1e-12:
        warnings.warn(
            f"negative density {val:.3e} at x = {x} (deformed non-probability "
            "measure along C1)",
            NegativeDensityWarning,
            stacklevel=2,
        )
    return val


# ---------------------------------------------------------------------------
# Log-potentials and the Euler-Lagrange constant
# ---------------------------------------------------------------------------

def _quad(f, a, b, points=None):
    val, _ = _integrate.quad(f, a, b, limit=250, epsabs=1e-11, epsrel=1e-11,
                             points=points)
    return val


def _log_kernel_integral(eq, kern, singular: float | None = None) -> float:
    """integral of kern(y) psi(y) dy with edge-adapted substitutions.

    ``singular`` marks an interior integrable singularity of kern (the log
    kernels), forwarded to the adaptive quadrature as a breakpoint.
    """
    lo, hi = eq.support
    span = hi - lo
    m1 = lo + 0.15 * span
    m2 = hi - 0.15 * span
    th = eq.theta
    hard = isinstance(eq, HardEdgeEquilibrium)

    def pts(a, b, mapped):
        if singular is None or mapped is None:
            return None
        return [mapped] if a < mapped < b else None

    y_floor = lo + 1e-15 * max(span, 1.0)  # below this the integrand is ~0
    total = 0.0
    if hard:
        # y = s^{theta+1} absorbs both x^{-1/(th+1)} and x^{(th-1)/(th+1)} ends
        p = th + 1.0

        def f_lo(s):
            y = s**p
            if y <= y_floor:
                return 0.0
            return kern(y) * density_psi(eq, y) * p * s ** (p - 1.0)

        s_hi = m1 ** (1 / p)
        s_sing = singular ** (1 / p) if singular is not None and singular > 0 else None
        total += _quad(f_lo, 0.0, s_hi, points=pts(0.0, s_hi, s_sing))
    else:
        def f_lo(s):
            y = lo + s * s
            if y <= y_floor:
                return 0.0
            return kern(y) * density_psi(eq, y) * 2.0 * s

        s_hi = math.sqrt(m1 - lo)
        s_sing = math.sqrt(singular - lo) if singular is not None and singular > lo else None
        total += _quad(f_lo, 0.0, s_hi, points=pts(0.0, s_hi, s_sing))

    def f_mid(y):
        return kern(y) * density_psi(eq, y)

    total += _quad(f_mid, m1, m2, points=pts(m1, m2, singular))

    def f_hi(s):
        y = hi - s * s
        if y >= hi - 1e-15 * max(span, 1.0):
            return 0.0
        return kern(y) * density_psi(eq, y) * 2.0 * s

    s_hi = math.sqrt(hi - m2)
    s_sing = math.sqrt(hi - singular) if singular is not None and singular < hi else None
    total += _quad(f_hi, 0.0, s_hi, points=pts(0.0, s_hi, s_sing))
    return total


def total_mass(eq) -> float:
    """integral of the density over its support (equals 1 for equilibria)."""
    return _log_kernel_integral(eq, lambda y: 1.0)


def g_and_ell(eq, P: Potential):
    """(ell_t, g_t, gtilde_t): the log-potentials and Euler-Lagrange constant.

    g_t(x)      = int log|x - y|        psi_t(y) dy
    gtilde_t(x) = int log|x^th - y^th|  psi_t(y) dy
    ell_t       = g_t + gtilde_t - V_t on the support (constant there).

    Constancy across five bulk points within 1e-7 is enforced.
    """
    th = eq.theta
    lo, hi = eq.support

    def g_at(x: float) -> float:
        return _log_kernel_integral(
            eq, lambda y: math.log(abs(x - y)) if y != x else 0.0, singular=x
        )

    def gtilde_at(x: float) -> float:
        return _log_kernel_integral(
            eq, lambda y: math.log(abs(x**th - y**th)) if y != x else 0.0, singular=x
        )

    def ell_at(x: float) -> float:
        return g_at(x) + gtilde_at(x) - P.V(x) / eq.t

    fractions = (0.2, 0.35, 0.5, 0.65, 0.8)
    vals = [ell_at(lo + f * (hi - lo)) for f in fractions]
    if max(vals) - min(vals) > 1e-7:
        raise EquilibriumError(
            f"Euler-Lagrange constant varies by {max(vals) - min(vals):.3e} over the bulk"
        )
    return float(np.mean(vals)), g_at, gtilde_at
