"""Resolvent-symbol integrals for ``-Laplace`` on R^d and the elementary
integral bounds built on them.

The central quantity is the radial integral

    ||(l - |.|^2)^{-1}||_{L^p}^p = area(S^{d-1}) int_0^inf r^{d-1} |l - r^2|^{-p} dr,

finite for ``p > d/2`` and ``l`` off [0, inf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import dist_halfline
from .quadrature import QuadratureResult, integrate, integrate_to_infinity

__all__ = [
    "SymbolParams",
    "sphere_area",
    "lp_resolvent_norm",
    "show1_ratio",
    "negative_half_ratio",
    "es1_brackets",
    "es1_identity_check",
    "po_quotient_check",
    "pr2_integral_check",
    "chi_integral_check",
    "kj_ll_bound_check",
]


@dataclass(frozen=True)
class SymbolParams:
    lam: complex
    p: float
    d: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError("d must be an integer >= 2")
        if not self.p > self.d / 2:
            raise DomainError("integrability needs p > d/2")
        if dist_halfline(complex(self.lam)) == 0:
            raise DomainError("lambda must lie off [0, inf)")

    @property
    def lambda0(self) -> float:
        return complex(self.lam).real

    @property
    def lambda1(self) -> float:
        return complex(self.lam).imag


def sphere_area(d: int) -> float:
    """Surface area of the unit sphere in R^d."""
    return 2 * math.pi ** (d / 2) / math.gamma(d / 2)


def lp_resolvent_norm(sp: SymbolParams, rtol: float = 1e-12) -> QuadratureResult:
    """``||(l - |.|^2)^{-1}||_{L^p}^p`` by radial quadrature.

    The peak at ``r = sqrt(Re l)`` (height ``|Im l|^{-p}``) is bracketed by
    breakpoints at geometrically growing offsets of its half-width.
    """
    lam0, lam1, p, d = sp.lambda0, sp.lambda1, sp.p, sp.d
    split = 10 * (1 + math.sqrt(abs(sp.lam)))

    def g(r):
        return r ** (d - 1) / np.hypot(lam0 - r * r, lam1) ** p

    points = []
    if lam0 > 0:
        r0 = math.sqrt(lam0)
        width = abs(lam1) / (2 * r0)
        points.append(r0)
        for k in (1, 4, 16, 64):
            points += [r0 - k * width, r0 + k * width]
    res = integrate_to_infinity(g, 0.0, split, points, rtol=rtol)
    area = sphere_area(d)
    return QuadratureResult(area * res.value, area * res.est_error, res.evaluations)


def show1_ratio(sp: SymbolParams) -> float:
    """Norm divided by ``|Re l|^{(d-2)/2} / |Im l|^{p-1} + 1 / |Im l|^{p-d/2}`` (Re l > 0)."""
    if not (sp.lambda0 > 0 and sp.lambda1 != 0):
        raise DomainError("needs Re(lambda) > 0 and Im(lambda) != 0")
    lam0, lam1, p, d = abs(sp.lambda0), abs(sp.lambda1), sp.p, sp.d
    shape = lam0 ** ((d - 2) / 2) / lam1 ** (p - 1) + 1 / lam1 ** (p - d / 2)
    return lp_resolvent_norm(sp).value / shape


def negative_half_ratio(sp: SymbolParams) -> float:
    """Norm times ``|l|^{p - d/2}`` (Re l <= 0)."""
    if sp.lambda0 > 0:
        raise DomainError("needs Re(lambda) <= 0")
    return lp_resolvent_norm(sp).value * abs(sp.lam) ** (sp.p - sp.d / 2)


def es1_brackets(lam0: float, lam1: float, p: float, d: int, rtol: float = 1e-12):
    """The two s-integrals after substituting ``r^2 = lam0 + lam1 s``.

    ``I1 = int_0^inf (lam0 + lam1 s)^k (s^2+1)^{-p/2} ds`` and
    ``I2 = int_0^{lam0/lam1} (lam0 - lam1 s)^k (s^2+1)^{-p/2} ds``, ``k = (d-2)/2``.
    """
    if not (lam0 > 0 and lam1 > 0):
        raise DomainError("needs lam0 > 0 and lam1 > 0")
    k = (d - 2) / 2
    upper = lam0 / lam1
    i1 = integrate_to_infinity(lambda s: (lam0 + lam1 * s) ** k / (s * s + 1) ** (p / 2),
                               0.0, 10 * (1 + upper), rtol=rtol)
    i2 = integrate(lambda s: np.maximum(lam0 - lam1 * s, 0.0) ** k / (s * s + 1) ** (p / 2),
                   0.0, upper, rtol=rtol)
    return i1.value, i2.value


def es1_identity_check(sp: SymbolParams) -> tuple[float, float, float]:
    """``(norm, Im(l)^{1-p} (I1 + I2), ratio)``.

    The ratio is the l-independent constant ``area(S^{d-1}) / 2``.
    """
    lhs = lp_resolvent_norm(sp).value
    i1, i2 = es1_brackets(sp.lambda0, sp.lambda1, sp.p, sp.d)
    rhs = sp.lambda1 ** (1 - sp.p) * (i1 + i2)
    return lhs, rhs, lhs / rhs


def po_quotient_check(mu, p: float, d: int, rel: float = 1e-12):
    """The two quotients that must stay bounded for ``0 < Im mu < |Re mu|``.

    Returns ``(q1, q2, bound, passed)`` with ``bound = 2^{-(p/2 - d/4)}`` and
    ``passed = q1 <= bound (1 + rel)``. Vectorized over ``mu``.
    """
    mu = np.asarray(mu, dtype=np.complex128)
    re, im = mu.real, mu.imag
    if np.any(~((0 < im) & (im < np.abs(re)))):
        raise DomainError("needs 0 < Im(mu) < |Re(mu)|")
    k = d / 2 - 1
    a = np.abs(mu)
    b = np.abs(mu + 1j)
    q1 = np.abs(re ** 2 - im ** 2) ** k * a ** (p - d / 2) / (np.abs(2 * re) ** (p - 1) * b ** k)
    q2 = a ** (p - d / 2) * im ** k / (np.abs(2 * re) ** (p - d / 2) * b ** k)
    bound = 2.0 ** (-(p / 2 - d / 4))
    passed = q1 <= bound * (1 + rel)
    if mu.ndim == 0:
        return float(q1), float(q2), bound, bool(passed)
    return q1, q2, bound, passed


def pr2_integral_check(p: float, tau: float, omega0: float, rtol: float = 1e-13):
    """``int_{omega0+1}^inf b^{p-1-tau} (b - omega0)^{-p} db <= (1 + omega0)^{p-tau} / tau``.

    With ``b = omega0 + w^{-1/tau}`` the integral is exactly
    ``(1/tau) int_0^1 (1 + omega0 w^{1/tau})^{p-1-tau} dw``, a bounded integrand
    on a finite interval. Returns ``(value, bound, passed)``; ``passed`` allows
    a relative slack of 1e-12.
    """
    if not 0 < tau:
        raise DomainError("integral diverges for tau <= 0")
    if not (p > 0 and tau < 1 and omega0 >= 0):
        raise DomainError("need p > 0, tau < 1, omega0 >= 0")
    q = p - 1 - tau
    res = integrate(lambda w: (1 + omega0 * w ** (1 / tau)) ** q, 0.0, 1.0, rtol=rtol)
    value = res.value / tau
    bound = (1 + omega0) ** (p - tau) / tau
    return value, bound, value <= bound * (1 + 1e-12)


def chi_integral_check(t: float, q: float, tol: float = 1e-10):
    """``int_0^{min(t,1)} chi^{q-1} d chi = min(1, t)^q / q``; returns ``(quad, closed, passed)``."""
    if not (t > 0 and q > 0):
        raise DomainError("need t > 0 and q > 0")
    top = min(t, 1.0)
    quad = integrate(lambda x: x ** (q - 1), 0.0, top, rtol=1e-13).value
    closed = top ** q / q
    return quad, closed, abs(quad - closed) <= tol * max(1.0, abs(closed))


def kj_ll_bound_check(lam0: float, lam1: float, p: float, d: int) -> dict:
    """Bounds on the two s-integrals with explicit split constants.

    ``I1 <= 2^k (J0 + J1) (lam0^k + lam1^k)`` and ``I2 <= lam0^k J0`` where
    ``J0 = int_0^inf (s^2+1)^{-p/2}``, ``J1 = int_0^inf s^k (s^2+1)^{-p/2}``.
    """
    if int(d) != d or d < 2:
        raise DomainError("d must be an integer >= 2")
    if not (p > d / 2 and p > 1):
        raise DomainError("split integrals diverge unless p > d/2 and p > 1")
    k = (d - 2) / 2
    j0 = integrate_to_infinity(lambda s: (s * s + 1) ** (-p / 2), 0.0, 10.0).value
    j1 = integrate_to_infinity(lambda s: s ** k * (s * s + 1) ** (-p / 2), 0.0, 10.0).value
    i1, i2 = es1_brackets(lam0, lam1, p, d)
    c_split = 2 ** k * (j0 + j1)
    b1 = c_split * (lam0 ** k + lam1 ** k)
    b2 = lam0 ** k * j0
    return {
        "first": i1,
        "first_bound": b1,
        "second": i2,
        "second_bound": b2,
        "passed": bool(i1 <= b1 * (1 + 1e-10) and i2 <= b2 * (1 + 1e-10)),
    }
