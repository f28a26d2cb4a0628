"""Universal limiting kernels: the hard-edge Meijer-G kernel and the Airy kernel.

The hard-edge kernel is assembled from the two limit functions

    phi(x)    = x^{theta-alpha-1} G^{theta,0}_{0,theta+1}(x^theta),
    phitilde(y) = G^{1,0}_{0,theta+1}(y^theta),

as K(x, y) = theta^2 int_0^1 (u x)^alpha phi(u x) phitilde(u y) du.  The Airy
kernel uses the Christoffel-Darboux quotient away from the diagonal and the
integral form plus the L'Hopital closed form near it.  A rescaling harness
exposes the two directed limits of the transition kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import limitmaps, specialfn
from .specialfn import MeijerParams, QuadratureError, airy

__all__ = [
    "LimitKernelSpec",
    "phi_mei",
    "phitilde_mei",
    "kernel_meijer",
    "kernel_airy",
    "kernel_tau_limits",
]


@dataclass(frozen=True)
class LimitKernelSpec:
    """Parameters of the limiting kernels (kind picks meijer or airy)."""

    theta: int
    alpha: float
    kind: str = "meijer"

    def __post_init__(self):
        if self.kind not in ("meijer", "airy"):
            raise ValueError("kind must be 'meijer' or 'airy'")
        MeijerParams(self.theta, self.alpha)  # validates ranges

    @property
    def meijer_params(self) -> MeijerParams:
        return MeijerParams(self.theta, self.alpha)


def phi_mei(s: LimitKernelSpec, x: float) -> float:
    """phi(x) = x^{theta - alpha - 1} G^{theta,0}(x^theta).

    The fractional powers of the G series recombine with the prefactor into
    integer powers of x, so phi is smooth with a finite value at 0.  On the
    integer-alpha (oracle) route the value below x^theta = 1e-10 is replaced
    by that limit: the contour quadrature destabilizes there, and with
    alpha >= 0 the substitution error is O(x) ~ 1e-9 at worst.  The series
    route evaluates arbitrarily small arguments directly.
    """
    if x < 0:
        raise ValueError("phi_mei requires x >= 0")
    p = s.meijer_params
    if x**s.theta < 1e-250 or (p.alpha_is_integer and x**s.theta < 1e-10):
        # leading residue term; its power cancels the prefactor exactly
        from .specialfn import _gamma_ld
        bnum = p.b_gtheta0[: s.theta]
        j = int(np.argmin(bnum))
        lead = 1.0
        for i, bi in enumerate(bnum):
            if i != j:
                lead *= float(_gamma_ld(bi - bnum[j]))
        return lead * specialfn.recip_gamma(1.0 + bnum[j]).real
    return x ** (s.theta - s.alpha - 1.0) * specialfn.meijer_g_theta0(x**s.theta, p)


def phitilde_mei(s: LimitKernelSpec, y: float) -> float:
    """phitilde(y) = G^{1,0}(y^theta); entire in y."""
    if y < 0:
        raise ValueError("phitilde_mei requires y >= 0")
    return specialfn.meijer_g10(y**s.theta, s.meijer_params)


@lru_cache(maxsize=32)
def _gl_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w  # mapped to [0, 1]


@lru_cache(maxsize=200_000)
def _phi_cached(theta: int, alpha: float, x: float) -> float:
    return phi_mei(LimitKernelSpec(theta, alpha), x)


@lru_cache(maxsize=200_000)
def _phitilde_cached(theta: int, alpha: float, y: float) -> float:
    return phitilde_mei(LimitKernelSpec(theta, alpha), y)


def _kernel_meijer_quad(s: LimitKernelSpec, x: float, y: float, n_nodes: int) -> float:
    u, w = _gl_nodes(n_nodes)
    alpha = s.alpha
    # u = v^q turns the u^alpha endpoint into an exactly quintic zero; the
    # two limit functions themselves are smooth in u (their fractional
    # powers recombine to integers), so the substituted integrand is
    # GL-friendly
    q = 6.0 / (1.0 + alpha)
    if q > 1.0:
        v, wv = u, w
        u = v**q
        w = wv * q * v ** (q - 1.0)
    total = 0.0
    for ui, wi in zip(u, w):
        ux = ui * x
        fac = (ux**alpha) if ux > 0 else (1.0 if alpha == 0 else 0.0)
        total += wi * fac * _phi_cached(s.theta, s.alpha, ux) \
            * _phitilde_cached(s.theta, s.alpha, ui * y)
    return s.theta**2 * total


def kernel_meijer(s: LimitKernelSpec, x: float, y: float) -> float:
    """Hard-edge limiting kernel via Gauss-Legendre on the u-integral.

    Evaluated at 64 nodes and re-evaluated at 128 as an error estimate;
    relative agreement of 1e-8 is enforced.
    """
    v1 = _kernel_meijer_quad(s, x, y, 64)
    v2 = _kernel_meijer_quad(s, x, y, 128)
    if abs(v1 - v2) > 1e-8 * max(1.0, abs(v2)):
        raise QuadratureError(
            f"kernel_meijer node doubling changed the value by {abs(v1 - v2):.3e}"
        )
    return v2


_AIRY_DIAG_EPS = 1e-4


def _airy_kernel_integral(x: float, y: float) -> float:
    """int_0^infty Ai(x+u) Ai(y+u) du truncated at u = 40 (tail < 1e-25)."""
    total = 0.0
    for a, b, n in ((0.0, 2.0, 96), (2.0, 6.0, 96), (6.0, 14.0, 64), (14.0, 40.0, 64)):
        nodes, weights = np.polynomial.legendre.leggauss(n)
        u = 0.5 * (b - a) * (nodes + 1.0) + a
        w = 0.5 * (b - a) * weights
        total += float(sum(wi * airy(x + ui)[0] * airy(y + ui)[0] for ui, wi in zip(u, w)))
    return total


def kernel_airy(x: float, y: float) -> float:
    """Airy kernel: CD quotient off the diagonal, integral + L'Hopital near it."""
    if abs(x - y) > _AIRY_DIAG_EPS:
        aix, aipx = airy(x)
        aiy, aipy = airy(y)
        return (aix * aipy - aipx * aiy) / (x - y)
    if x == y:
        ai, aip = airy(x)
        return aip * aip - x * ai * ai
    return _airy_kernel_integral(x, y)


def kernel_tau_limits(s: LimitKernelSpec, tau: float, x: float, y: float) -> float:
    """Directed-limit prediction for the transition kernel at its own arguments.

    tau < 0: the hard-edge limit predicts
        K(x, y) ~ (-tau)^{(th+1)/th} K_meijer((-tau)^{(th+1)/th} x, ...).
    tau > 0: the soft-edge limit, with the conjugation factor f(.; tau) from
    the limiting-map module, predicts
        K(X, Y) ~ (f(y)/f(x)) [(c1 tau)^{(th+1)/th} c2 tau^{-4/3}]^{-1} K_airy(x, y)
    where X = (c1 tau)^{(th+1)/th} (1 - c2 tau^{-4/3} x); inputs are the
    Airy-frame coordinates (x, y).
    """
    if tau == 0:
        raise ValueError("tau must be nonzero and match the requested limit")
    th = s.theta
    if tau < 0:
        scale = (-tau) ** ((th + 1.0) / th)
        return scale * kernel_meijer(s, scale * x, scale * y)
    d = limitmaps.PreMapData(th)
    c1, c2 = limitmaps.tau_constants(d)
    fac = limitmaps.conj_factor(d, y, tau) / limitmaps.conj_factor(d, x, tau)
    scale = (c1 * tau) ** ((th + 1.0) / th) * c2 * tau ** (-4.0 / 3.0)
    return fac / scale * kernel_airy(x, y)
