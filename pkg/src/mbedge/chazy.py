"""The theta = 2 integrable structure: Lax pair, constraints, Chazy equations.

State variables (c, b, f, a, k, d) evolve in tau under a polynomial vector
field whose compatibility with the 3x3 linear system is the zero-curvature
equation.  Three algebraic constraints are first integrals; on constrained
trajectories c satisfies a third-order ODE, a Chazy-I equation after an
affine substitution, a second-degree Chazy equation, and (after two more
derivatives) the similarity reduction of the Boussinesq equation.

Higher derivatives of c are produced by Taylor-mode recursion on the
polynomial vector field -- closed form, no finite differences -- so residual
checks are limited only by the integrator tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

__all__ = [
    "ChazyError",
    "PoleDetected",
    "ChazyState",
    "ChazyDerivatives",
    "ChazyTrajectory",
    "LaxPairEval",
    "gamma_const",
    "complete_from_c",
    "complete_spectral",
    "sample_spectral_states",
    "ode_rhs",
    "integrate",
    "build_lax",
    "zero_curvature_residual",
    "a_minus1_matrix",
    "spectrum_targets",
    "det_target",
    "residual_third_order",
    "residual_chazy1",
    "residual_chazy_u",
    "residual_boussinesq",
]

_S2 = math.sqrt(2.0)
_VARS = ("c", "b", "f", "a", "k", "d")


class ChazyError(RuntimeError):
    pass


class PoleDetected(ChazyError):
    def __init__(self, tau: float):
        super().__init__(f"movable singularity detected near tau = {tau:.6g}")
        self.tau = tau


def gamma_const(alpha: float) -> float:
    """gamma = 1/36 + alpha/12 - alpha^2/12."""
    return 1.0 / 36.0 + alpha / 12.0 - alpha * alpha / 12.0


@dataclass(frozen=True)
class ChazyState:
    tau: float
    c: float
    b: float
    f: float
    a: float
    k: float
    d: float
    alpha: float

    @property
    def gamma(self) -> float:
        return gamma_const(self.alpha)

    def vector(self) -> np.ndarray:
        return np.array([self.c, self.b, self.f, self.a, self.k, self.d])

    def constraint_residuals(self) -> tuple[float, float, float]:
        """Residuals of the three first-integral relations."""
        g = self.gamma
        c, b, f, a, k, d, tau = self.c, self.b, self.f, self.a, self.k, self.d, self.tau
        r1 = f - b - (_S2 / 3.0) * c * tau + g
        r2 = a + k - c * (g + 1.0 / 3.0)
        r3 = (d + c * (k - a) - (_S2 / 3.0) * tau * (a + k)
              - (b * b + b * f + f * f) + (b - f) / 3.0 - g)
        return r1, r2, r3


@dataclass(frozen=True)
class ChazyDerivatives:
    c: float
    b: float
    f: float
    a: float
    k: float
    d: float

    def vector(self) -> np.ndarray:
        return np.array([self.c, self.b, self.f, self.a, self.k, self.d])


def complete_from_c(c: float, cp: float, cpp: float, tau: float, alpha: float) -> ChazyState:
    """State with (b, f, a, k) from (c, c', c'') and d from the third constraint.

    All three constraint residuals vanish identically by construction.
    """
    g = gamma_const(alpha)
    b = -(cp / _S2 + c * c + _S2 * tau * c / 3.0) / 2.0 + g / 2.0
    f = -(cp / _S2 + c * c - _S2 * tau * c / 3.0) / 2.0 - g / 2.0
    a = (-cpp / 4.0 - 3.0 * c * cp / (2.0 * _S2) - c**3 / 2.0
         + c * (-2.0 * tau * tau / 9.0 + g + 1.0 / 3.0) / 2.0 - g * tau / (3.0 * _S2))
    k = (cpp / 4.0 + 3.0 * c * cp / (2.0 * _S2) + c**3 / 2.0
         + c * (2.0 * tau * tau / 9.0 + g + 1.0 / 3.0) / 2.0 + g * tau / (3.0 * _S2))
    d = (b * b + b * f + f * f) - (b - f) / 3.0 + g + _S2 * tau * (a + k) / 3.0 - c * (k - a)
    return ChazyState(tau=tau, c=c, b=b, f=f, a=a, k=k, d=d, alpha=alpha)


def det_target(alpha: float) -> float:
    """det(A_{-1}) for the linear-system solution: -(a^3/108 + a^2/72 - a/24)."""
    return -(alpha**3 / 108.0 + alpha**2 / 72.0 - alpha / 24.0)


def spectrum_targets(alpha: float) -> tuple[float, float, float]:
    """Eigenvalues of A_{-1}: 1/2 - alpha/3, alpha/6, 1/2 + alpha/6."""
    return 0.5 - alpha / 3.0, alpha / 6.0, 0.5 + alpha / 6.0


def complete_spectral(c: float, cp: float, tau: float, alpha: float,
                      prefer_positive_root: bool = True) -> ChazyState | None:
    """Constraint completion with c'' chosen so that A_{-1} has the model spectrum.

    The constraints pin trace and the second symmetric function of A_{-1};
    the determinant is one further conserved quantity, quadratic in c''.
    Returns ``None`` when no real c'' solves it for the given (c, c', tau).
    """
    target = det_target(alpha)

    def det_of(cpp):
        st = complete_from_c(c, cp, cpp, tau, alpha)
        return float(np.linalg.det(a_minus1_matrix(st))) - target

    d0, d_plus, d_minus = det_of(0.0), det_of(1.0), det_of(-1.0)
    q2 = 0.5 * (d_plus + d_minus - 2.0 * d0)
    q1 = 0.5 * (d_plus - d_minus)
    disc = q1 * q1 - 4.0 * q2 * d0
    if disc < 0:
        return None
    root = math.sqrt(disc)
    cpp = (-q1 + root) / (2.0 * q2) if prefer_positive_root else (-q1 - root) / (2.0 * q2)
    return complete_from_c(c, cp, cpp, tau, alpha)


def sample_spectral_states(n: int, seed: int = 0, tau: float = 0.0,
                           alpha_range: tuple[float, float] = (-0.9, 2.0)) -> list[ChazyState]:
    """Rejection-sample states on the full invariant variety (constraints + spectrum)."""
    rng = np.random.default_rng(seed)
    out: list[ChazyState] = []
    while len(out) < n:
        c, cp = rng.uniform(-1.0, 1.0, 2)
        alpha = float(rng.uniform(*alpha_range))
        st = complete_spectral(float(c), float(cp), tau, alpha,
                               prefer_positive_root=bool(rng.integers(2)))
        if st is not None:
            out.append(st)
    return out


# ---------------------------------------------------------------------------
# Vector field
# ---------------------------------------------------------------------------

def _rhs_vector(tau: float, y: np.ndarray) -> np.ndarray:
    c, b, f, a, k, d = y
    t2 = tau * tau
    return _S2 * np.array([
        -c * c - b - f,
        -c * f - k + _S2 * tau * (b + c * c) / 3.0 + 2.0 * t2 * c / 9.0,
        -b * c + a - _S2 * tau * (f + c * c) / 3.0 + 2.0 * t2 * c / 9.0,
        (2.0 * b * f + f * f - c * k + d - f / 3.0
         - _S2 * tau * (b * c - a - k - c / 3.0) / 3.0 - 2.0 * t2 * (b + f) / 9.0),
        (-b * b - 2.0 * b * f - a * c - d - b / 3.0
         - _S2 * tau * (c * f + a + k + c / 3.0) / 3.0 + 2.0 * t2 * (b + f) / 9.0),
        (2.0 * c * d - b * k + a * f + 2.0 * a / 3.0 + 2.0 * k / 3.0
         - _S2 * tau * (f * f - b * b - a * c - c * k + 2.0 * b / 3.0 + 2.0 * f / 3.0) / 3.0),
    ])


def ode_rhs(s: ChazyState) -> ChazyDerivatives:
    """The six tau-derivatives (the printed system carries 1/sqrt(2) on the left)."""
    return ChazyDerivatives(*_rhs_vector(s.tau, s.vector()))


# ---------------------------------------------------------------------------
# Taylor jets: exact higher derivatives of the flow
# ---------------------------------------------------------------------------

def _jet_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = len(x)
    out = np.zeros(n)
    for i in range(n):
        out[i] = np.dot(x[: i + 1], y[i::-1])
    return out


def taylor_coefficients(state: ChazyState, order: int) -> dict[str, np.ndarray]:
    """Taylor coefficients (in h = tau - tau0) of the solution through ``state``.

    The m-th derivative of component v is m! * coeffs[v][m]; exact modulo
    rounding because the vector field is polynomial.
    """
    n = order + 1
    jets = {v: np.zeros(n) for v in _VARS}
    for v in _VARS:
        jets[v][0] = getattr(state, v)
    tau = np.zeros(n)
    tau[0] = state.tau
    if n > 1:
        tau[1] = 1.0
    for m in range(order):
        c, b, f, a, k, d = (jets[v] for v in _VARS)
        t2 = _jet_mul(tau, tau)
        cc = _jet_mul(c, c)
        rhs = {
            "c": -cc - b - f,
            "b": (-_jet_mul(c, f) - k + _S2 / 3.0 * _jet_mul(tau, b + cc)
                  + 2.0 / 9.0 * _jet_mul(t2, c)),
            "f": (-_jet_mul(b, c) + a - _S2 / 3.0 * _jet_mul(tau, f + cc)
                  + 2.0 / 9.0 * _jet_mul(t2, c)),
            "a": (2.0 * _jet_mul(b, f) + _jet_mul(f, f) - _jet_mul(c, k) + d - f / 3.0
                  - _S2 / 3.0 * _jet_mul(tau, _jet_mul(b, c) - a - k - c / 3.0)
                  - 2.0 / 9.0 * _jet_mul(t2, b + f)),
            "k": (-_jet_mul(b, b) - 2.0 * _jet_mul(b, f) - _jet_mul(a, c) - d - b / 3.0
                  - _S2 / 3.0 * _jet_mul(tau, _jet_mul(c, f) + a + k + c / 3.0)
                  + 2.0 / 9.0 * _jet_mul(t2, b + f)),
            "d": (2.0 * _jet_mul(c, d) - _jet_mul(b, k) + _jet_mul(a, f)
                  + 2.0 * a / 3.0 + 2.0 * k / 3.0
                  - _S2 / 3.0 * _jet_mul(tau, _jet_mul(f, f) - _jet_mul(b, b)
                                         - _jet_mul(a, c) - _jet_mul(c, k)
                                         + 2.0 * b / 3.0 + 2.0 * f / 3.0)),
        }
        for v in _VARS:
            jets[v][m + 1] = _S2 * rhs[v][m] / (m + 1)
    return jets


def c_derivatives(state: ChazyState, order: int) -> list[float]:
    """[c, c', c'', ...] up to the requested order at state.tau."""
    jets = taylor_coefficients(state, order)
    return [jets["c"][m] * math.factorial(m) for m in range(order + 1)]


# ---------------------------------------------------------------------------
# Integration
# ---------------------------------------------------------------------------

_POLE_GUARD = 1e8


@dataclass
class ChazyTrajectory:
    alpha: float
    tau0: float
    tau_end: float
    pole: float | None
    _sol: object

    def state_at(self, tau: float) -> ChazyState:
        hi = self.pole if self.pole is not None else self.tau_end
        lo, hi = sorted((self.tau0, hi))
        if not lo - 1e-12 <= tau <= hi + 1e-12:
            raise ChazyError(f"tau = {tau} outside the integrated range [{lo}, {hi}]")
        y = self._sol.sol(tau)
        return ChazyState(tau=tau, alpha=self.alpha, **dict(zip(_VARS, y)))


def integrate(s0: ChazyState, tau_end: float, rtol: float = 1e-12,
              atol: float = 1e-12) -> ChazyTrajectory:
    """Adaptive high-order integration with movable-pole detection.

    The trajectory carries dense output; if the solution blows up before
    tau_end, integration stops there and ``pole`` records the location.
    """

    def event(tau, y):
        return float(np.max(np.abs(y)) - _POLE_GUARD)

    event.terminal = True

    sol = solve_ivp(
        _rhs_vector, (s0.tau, tau_end), s0.vector(), method="DOP853",
        rtol=rtol, atol=atol, dense_output=True, events=[event],
    )
    pole = None
    if sol.t_events and len(sol.t_events[0]):
        pole = float(sol.t_events[0][0])
    elif not sol.success:
        raise ChazyError(f"integration failed: {sol.message}")
    return ChazyTrajectory(alpha=s0.alpha, tau0=s0.tau, tau_end=tau_end,
                           pole=pole, _sol=sol)


# ---------------------------------------------------------------------------
# Lax pair and zero curvature
# ---------------------------------------------------------------------------

def a_minus1_matrix(s: ChazyState) -> np.ndarray:
    c, b, f, a, k, d, tau = s.c, s.b, s.f, s.a, s.k, s.d, s.tau
    return np.array([
        [b, c + _S2 * tau / 3.0, -1.0],
        [a, -b - f + 1.0 / 3.0, -c + _S2 * tau / 3.0],
        [d, k, f + 2.0 / 3.0],
    ])


def _a0_matrix(tau: float) -> np.ndarray:
    return np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [-_S2 * tau / 3.0, 1.0, 0.0]])


_B1 = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])


def _b0_matrix(s: ChazyState) -> np.ndarray:
    c, b, f, a, k, tau = s.c, s.b, s.f, s.a, s.k, s.tau
    return np.array([
        [-c, 1.0, 0.0],
        [f - _S2 * tau * c / 3.0, 0.0, 1.0],
        [_S2 * tau * (b + f) / 3.0 - (a + k), b + _S2 * tau * c / 3.0, c],
    ])


_D = np.diag([1.0, _S2, 2.0])
_D_INV = np.diag([1.0, 1.0 / _S2, 0.5])


@dataclass(frozen=True)
class LaxPairEval:
    xi: complex
    A: np.ndarray
    B: np.ndarray


def build_lax(s: ChazyState, xi: complex) -> LaxPairEval:
    """A(xi) = D(2^{-3/2} A0 + A_{-1}/xi) D^{-1};  B(xi) = D(xi B1/2 + sqrt2 B0) D^{-1}."""
    if xi == 0:
        raise ValueError("xi must be nonzero")
    A = _D @ (2.0 ** (-1.5) * _a0_matrix(s.tau) + a_minus1_matrix(s) / xi) @ _D_INV
    B = _D @ (0.5 * xi * _B1 + _S2 * _b0_matrix(s)) @ _D_INV
    return LaxPairEval(xi=complex(xi), A=A.astype(complex), B=B.astype(complex))


def zero_curvature_residual(s: ChazyState, xi: complex) -> float:
    """max-norm of dA/dtau - dB/dxi + AB - BA with dA/dtau from the flow."""
    lax = build_lax(s, xi)
    der = ode_rhs(s)
    dA0 = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [-_S2 / 3.0, 0.0, 0.0]])
    dAm1 = np.array([
        [der.b, der.c + _S2 / 3.0, 0.0],
        [der.a, -der.b - der.f, -der.c + _S2 / 3.0],
        [der.d, der.k, der.f],
    ])
    dA = _D @ (2.0 ** (-1.5) * dA0 + dAm1 / lax.xi) @ _D_INV
    dB = _D @ (0.5 * _B1) @ _D_INV
    R = dA - dB + lax.A @ lax.B - lax.B @ lax.A
    return float(np.max(np.abs(R)))


# ---------------------------------------------------------------------------
# Scalar residuals along trajectories
# ---------------------------------------------------------------------------

def residual_third_order(traj: ChazyTrajectory, tau: float) -> float:
    """c''' + 3 * 2^{3/2} c'^2 + (4/3) tau^2 c' + 4 tau c + (sqrt2/9)(1 + 3a - 3a^2)."""
    c0, c1, _, c3 = c_derivatives(traj.state_at(tau), 3)
    al = traj.alpha
    return (c3 + 3.0 * 2.0**1.5 * c1 * c1 + (4.0 / 3.0) * tau * tau * c1
            + 4.0 * tau * c0 + (_S2 / 9.0) * (1.0 + 3.0 * al - 3.0 * al * al))


def residual_chazy1(traj: ChazyTrajectory, tau: float) -> float:
    """Chazy-I residual for y(tau) = c(tau/sqrt2) + tau^3/108."""
    sig = tau / _S2
    c0, c1, c2, c3 = c_derivatives(traj.state_at(sig), 3)
    al = traj.alpha
    y = c0 + tau**3 / 108.0
    yp = c1 / _S2 + tau * tau / 36.0
    ypp3 = c3 / (2.0 * _S2) + 1.0 / 18.0
    return (ypp3 + 6.0 * yp * yp + tau * y - tau**4 / 72.0
            + (al - al * al) / 6.0)


def residual_chazy_u(traj: ChazyTrajectory, tau: float) -> float:
    """Second-degree Chazy residual for u(tau) = sqrt2 c(tau) + (4/27) tau^3.

    This relation is a first integral whose value is pinned by the
    determinant of A_{-1}; it vanishes on trajectories from the spectral
    variety (see :func:`complete_spectral`).
    """
    c0, c1, c2 = c_derivatives(traj.state_at(tau), 2)
    al = traj.alpha
    u = _S2 * c0 + 4.0 * tau**3 / 27.0
    up = _S2 * c1 + 4.0 * tau * tau / 9.0
    upp = _S2 * c2 + 8.0 * tau / 9.0
    return (upp * upp + 4.0 * up**3 - 4.0 * (tau * up - u) ** 2
            + (4.0 / 3.0) * (al - al * al - 1.0) * up
            + (4.0 / 27.0) * (al + 1.0) * (2.0 * al - 1.0) * (al - 2.0))


def residual_boussinesq(traj: ChazyTrajectory, tau: float) -> float:
    """Boussinesq similarity-reduction residual for v(tau) = 3 sqrt6 c'(3^{1/4} tau / 2)."""
    lam = 3.0**0.25 / 2.0
    sig = lam * tau
    ders = c_derivatives(traj.state_at(sig), 5)
    amp = 3.0 * math.sqrt(6.0)
    v = amp * ders[1]
    vp = amp * lam * ders[2]
    vpp = amp * lam**2 * ders[3]
    v4 = amp * lam**4 * ders[5]
    return (v4 + vp * vp + v * vpp + tau * tau * vpp / 4.0
            + 7.0 * tau * vp / 4.0 + 2.0 * v)
