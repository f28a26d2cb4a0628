"""The limiting conformal map at the soft edge and its g-functions.

The degenerating soft edge is governed by the parameter-free map

    Jpre(sigma) = -(-sigma)^{(theta+1)/theta}
                  + (theta+1) theta^{-theta/(theta+1)} (-sigma)^{1/theta},

with critical point sigma0 = -theta^{-theta/(theta+1)}, Jpre(sigma0) = 1.
Its two inverse branches feed the g-functions g_0 .. g_theta, the Airy
conformal coordinate f(z) near 1, and the tau -> +infinity constants and
conjugation factor of the edge rescaling.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "LimitMapError",
    "PreMapData",
    "j_pre",
    "i_pre",
    "g_functions",
    "airy_conformal",
    "tau_constants",
    "conj_factor",
]


class LimitMapError(RuntimeError):
    pass


@dataclass(frozen=True)
class PreMapData:
    """Fixed data of the limiting map for one theta."""

    theta: int
    sigma0: float = field(init=False)
    Cg: float = field(init=False)

    def __post_init__(self):
        if self.theta < 2:
            raise ValueError("theta must be an integer >= 2")
        t = self.theta
        object.__setattr__(self, "sigma0", -(t ** (-t / (t + 1.0))))
        object.__setattr__(self, "Cg", 0.5 * t**3 / ((t + 1.0) * (t - 1.0) ** 2))

    @property
    def amp(self) -> float:
        """(theta+1) theta^{-theta/(theta+1)}: the linear coefficient of Jpre."""
        t = self.theta
        return (t + 1.0) * t ** (-t / (t + 1.0))

    @property
    def p0(self) -> float:
        """Critical point in the p = (-sigma)^{1/theta} coordinate."""
        return self.theta ** (-1.0 / (self.theta + 1.0))


def j_pre(d: PreMapData, sigma) -> complex:
    """Jpre(sigma) with principal branches; the cut sits on sigma in (0, inf)."""
    s = complex(sigma)
    if s.imag == 0 and s.real > 0:
        raise LimitMapError("j_pre branch cut on sigma in (0, inf)")
    t = d.theta
    ms = -s
    return -(ms ** ((t + 1.0) / t)) + d.amp * ms ** (1.0 / t)


def _jp_poly(d: PreMapData, p: complex) -> complex:
    """Jpre written in the p-coordinate: -p^{theta+1} + amp * p."""
    return -(p ** (d.theta + 1)) + d.amp * p


def _jp_poly_der(d: PreMapData, p: complex) -> complex:
    return -(d.theta + 1) * p**d.theta + d.amp


@lru_cache(maxsize=8)
def _dividing_curve(theta: int) -> tuple[np.ndarray, np.ndarray]:
    """Trace {p : Im Jpre = 0, Jpre >= 1} in the p-plane (upper half).

    Returns (Im p, Re p) arrays, monotone in Im, used to decide on which
    side of the curve a candidate inverse lies.
    """
    d = PreMapData(theta)
    p0 = d.p0
    jpp = -(theta + 1.0) * theta * p0 ** (theta - 1.0)  # (d^2/dp^2) Jpre at p0
    rs = 1.0 + np.geomspace(1e-8, 2e6, 400)
    ims, res = [0.0], [p0]
    p = p0 + 1j * math.sqrt(2.0 * (rs[0] - 1.0) / abs(jpp))
    for r in rs:
        for _ in range(60):
            step = (_jp_poly(d, p) - r) / _jp_poly_der(d, p)
            p = p - step
            if abs(step) < 1e-14 * max(1.0, abs(p)):
                break
        if abs(_jp_poly(d, p) - r) > 1e-9 * max(1.0, r):
            raise LimitMapError("dividing-curve trace failed")
        ims.append(p.imag)
        res.append(p.real)
    ims = np.asarray(ims)
    res = np.asarray(res)
    if np.any(np.diff(ims) <= 0):
        raise LimitMapError("dividing-curve trace not monotone")
    return ims, res


def _is_branch2(d: PreMapData, p: complex) -> bool:
    """True if p lies on the origin side of the dividing curve."""
    ims, res = _dividing_curve(d.theta)
    im = abs(p.imag)
    if im >= ims[-1]:
        # asymptotic regime: the curve follows arg p = pi/(theta+1)
        return abs(cmath.phase(p)) > math.pi / (d.theta + 1.0)
    return p.real < np.interp(im, ims, res)


def i_pre(d: PreMapData, z, branch: int) -> complex:
    """Inverse of Jpre: branch 1 outside the dividing curve, branch 2 inside.

    Solved through the polynomialization in p = (-sigma)^{1/theta}; the
    round-trip j_pre(i_pre(z)) = z holds to 1e-11.
    """
    if branch not in (1, 2):
        raise ValueError("branch must be 1 or 2")
    z = complex(z)
    if z == 1.0:
        return complex(d.sigma0)
    t = d.theta
    coeffs = np.zeros(t + 2, dtype=complex)
    coeffs[0] = -z
    coeffs[1] = d.amp
    coeffs[t + 1] = -1.0
    roots = np.polynomial.polynomial.polyroots(coeffs)
    cands = []
    for p in roots:
        for _ in range(8):
            der = _jp_poly_der(d, p)
            if der == 0:
                break
            p = p - (_jp_poly(d, p) - z) / der
        if abs(cmath.phase(complex(p))) >= math.pi / t - 1e-12:
            continue
        sigma = -complex(p) ** t
        try:
            back = j_pre(d, sigma)
        except LimitMapError:
            continue
        if abs(back - z) <= 1e-11 * (1.0 + abs(z)):
            cands.append((complex(p), sigma))
    if z.real > 1.0 and abs(z.imag) <= 1e-6 * (1.0 + abs(z)):
        # boundary values on the cut (1, inf): branch 1 approaches the curve
        # from the same side as z, branch 2 from the opposite side
        side = 1.0 if z.imag >= 0 else -1.0
        want_sign = side if branch == 1 else -side
        matches = [sig for p, sig in cands if sig.imag * want_sign > 0]
    else:
        want2 = branch == 2
        matches = [sig for p, sig in cands if _is_branch2(d, p) == want2]
    if not matches:
        raise LimitMapError(f"no branch-{branch} inverse for z = {z}")
    if len(matches) > 1 and abs(matches[0] - matches[1]) > 1e-9 * (1.0 + abs(matches[0])):
        raise LimitMapError(f"ambiguous branch-{branch} inverse for z = {z}")
    return matches[0]


def _m_quadratic(d: PreMapData, s: complex) -> complex:
    """M(s) = -Cg [ (theta^{-1/(th+1)} s)^2 + (2/th)(theta^{-1/(th+1)} s) + 1/th - 1 ]."""
    t = d.theta
    w = t ** (-1.0 / (t + 1.0)) * s
    return -d.Cg * (w * w + (2.0 / t) * w + 1.0 / t - 1.0)


def g_functions(d: PreMapData, z, k: int) -> complex:
    """g_k(z): g_0 = M(Ipre_2(z^{1/theta})), g_k = M(Ipre_1(e^{2(k-1) pi i/theta} z^{1/theta}))."""
    t = d.theta
    if not 0 <= k <= t:
        raise ValueError(f"k must lie in 0..{t}")
    z = complex(z)
    w = z ** (1.0 / t)
    if k == 0:
        return _m_quadratic(d, i_pre(d, w, 2))
    w = cmath.exp(2j * (k - 1) * math.pi / t) * w
    return _m_quadratic(d, i_pre(d, w, 1))


def tau_constants(d: PreMapData) -> tuple[float, float]:
    """(c1, c2) of the tau -> +infinity edge rescaling."""
    t = d.theta
    c1 = t * t / (t * t - 1.0) * t ** (-1.0 / (t + 1.0))
    c2 = (t - 1.0) ** (2.0 / 3.0) * (t + 1.0) ** (5.0 / 3.0) / (2.0 ** (1.0 / 3.0) * t * t)
    return c1, c2


def airy_f_prime_at_1(d: PreMapData) -> float:
    """f'(1) = -2^{1/3} theta / ((theta-1)^{2/3} (theta+1)^{5/3})."""
    t = d.theta
    return -(2.0 ** (1.0 / 3.0)) * t / ((t - 1.0) ** (2.0 / 3.0) * (t + 1.0) ** (5.0 / 3.0))


def airy_conformal(d: PreMapData, z) -> complex:
    """The conformal coordinate f near 1 with (4/3) f^{3/2} = g_0 - g_1.

    f(1) = 0 and f'(1) < 0; among the three branches of the 2/3 power the
    one matching the local linearization f'(1)(z - 1) is selected.
    """
    z = complex(z)
    if abs(z - 1.0) > 0.3:
        raise LimitMapError("airy_conformal is defined in a neighbourhood of 1")
    if z == 1.0:
        return 0.0
    zz = z if (z.imag != 0 or z.real <= 1.0) else z + 1e-14j
    w = 0.75 * (g_functions(d, zz, 0) - g_functions(d, zz, 1))
    target = airy_f_prime_at_1(d) * (z - 1.0)
    mag = abs(w) ** (2.0 / 3.0)
    base = cmath.phase(w)
    best = None
    for m in (-1, 0, 1):
        cand = mag * cmath.exp(2j * (base + 2.0 * math.pi * m) / 3.0)
        if best is None or abs(cand - target) < abs(best - target):
            best = cand
    if z.imag == 0 and abs(best.imag) < 1e-8 * max(1.0, abs(best)):
        return complex(best.real, 0.0)
    return best


def conj_factor(d: PreMapData, x: float, tau: float) -> float:
    """f(x; tau) = exp((tau^2/2)(g_0(xi) + g_1(xi))) at xi = 1 - theta c2 tau^{-4/3} x."""
    if tau <= 0:
        raise ValueError("conj_factor requires tau > 0")
    _, c2 = tau_constants(d)
    xi = 1.0 - d.theta * c2 * tau ** (-4.0 / 3.0) * x
    if xi <= 0:
        raise LimitMapError("conjugation factor evaluated left of the origin")
    zz = complex(xi, 1e-14 if xi >= 1.0 else 0.0)
    val = g_functions(d, zz, 0) + g_functions(d, zz, 1)
    if abs(val.imag) > 1e-8 * max(1.0, abs(val)):
        raise LimitMapError(f"g_0 + g_1 not real at xi = {xi}")
    return math.exp(0.5 * tau * tau * val.real)
