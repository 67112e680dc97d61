"""Exponent bookkeeping and the eigenvalue-sum functionals.

Every functional takes an eigenvalue list: an iterable of ``(value,
multiplicity)`` pairs or of bare complex values (multiplicity 1). Points on
[0, inf) are dropped with a warning, since the sums run over the discrete
spectrum only.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import dist_halfline

__all__ = [
    "ExponentProfile",
    "make_profile",
    "schrodinger_profile",
    "as_eigenvalue_list",
    "theorem1_lhs",
    "corollary1_lhs",
    "schrodinger_lhs",
    "corollary2_lhs",
    "frank_lhs",
    "frank_complement",
    "frank_cor_lhs",
    "sequence_tail_sums",
    "ratio_diagnostic",
]


def _pos(x: float) -> float:
    return max(x, 0.0)


@dataclass(frozen=True)
class ExponentProfile:
    p: float
    alpha: float
    delta: float
    nu: float
    tau: float

    @property
    def rho(self) -> float:
        return self.delta + 2 * (self.p - self.alpha) - self.nu

    @property
    def eta0(self) -> float:
        return 0.5 * _pos(self.rho - 1 + self.tau)

    @property
    def eta1(self) -> float:
        return 0.5 * (self.alpha + 1 + self.tau)

    @property
    def eta2(self) -> float:
        return 0.5 * _pos(self.nu - 1 + self.tau)

    @property
    def eta3(self) -> float:
        return 0.5 * (self.alpha + self.nu - self.delta) - self.tau

    @property
    def omega_exponent(self) -> float:
        """Power of ``1 + omega0`` in the abstract eigenvalue bound."""
        return self.eta1 + self.eta2 + 0.5 * (self.alpha + self.rho)


def make_profile(p, alpha, delta, nu, tau) -> ExponentProfile:
    if not p > 0:
        raise DomainError("p must be positive")
    if not 0 < tau < 1:
        raise DomainError("tau must lie in (0, 1)")
    if min(alpha, delta, nu) < 0:
        raise DomainError("alpha, delta, nu must be nonnegative")
    prof = ExponentProfile(float(p), float(alpha), float(delta), float(nu), float(tau))
    if not prof.eta1 + prof.eta2 - prof.eta3 > 0:
        raise DomainError("eta1 + eta2 - eta3 must be positive")
    return prof


def schrodinger_profile(d: int, p: float, tau: float) -> ExponentProfile:
    """Profile for ``-Laplace + V`` on R^d: nu = p - d/2, delta = d/2 - 1, alpha = p - 1."""
    if int(d) != d or d < 2:
        raise DomainError("dimension must be an integer >= 2")
    if not (p >= 2 and p > d / 2):
        raise DomainError("need p >= 2 and p > d/2")
    prof = make_profile(p, p - 1, d / 2 - 1, p - d / 2, tau)
    # simplified forms of rho and eta3 for this family
    assert math.isclose(prof.rho, d - p + 1, rel_tol=1e-12, abs_tol=1e-12)
    assert math.isclose(prof.eta3, p - d / 2 - tau, rel_tol=1e-12, abs_tol=1e-12)
    return prof


def as_eigenvalue_list(ev) -> tuple[np.ndarray, np.ndarray]:
    """Normalize to ``(values, multiplicities)``, dropping points on [0, inf)."""
    vals, mults = [], []
    for item in ev:
        if isinstance(item, tuple):
            v, m = item
        else:
            v, m = item, 1
        if int(m) != m or m < 1:
            raise DomainError("multiplicities must be positive integers")
        vals.append(complex(v))
        mults.append(int(m))
    vals = np.array(vals, dtype=np.complex128)
    mults = np.array(mults, dtype=float)
    if vals.size:
        on_slit = np.asarray(dist_halfline(vals)) == 0
        if np.any(on_slit):
            warnings.warn(f"dropping {int(on_slit.sum())} eigenvalue(s) on [0, inf)")
            vals, mults = vals[~on_slit], mults[~on_slit]
    return vals, mults


def _weighted_sum(terms, mults) -> float:
    return math.fsum(np.asarray(terms * mults, dtype=float).tolist())


def theorem1_lhs(ev, prof: ExponentProfile) -> float:
    """sum dist^{2 eta1} / (|l|^{eta1 - eta2} (|l| + 1)^{eta1 + eta2 - eta3})."""
    lam, m = as_eigenvalue_list(ev)
    if lam.size == 0:
        return 0.0
    e1, e2, e3 = prof.eta1, prof.eta2, prof.eta3
    r = np.abs(lam)
    terms = np.asarray(dist_halfline(lam)) ** (2 * e1) / (r ** (e1 - e2) * (r + 1) ** (e1 + e2 - e3))
    return _weighted_sum(terms, m)


def corollary1_lhs(ev, prof: ExponentProfile, eps: float) -> float:
    """sum over |l| >= eps of dist^{2 eta1} / |l|^{2 eta1 - eta3}."""
    lam, m = as_eigenvalue_list(ev)
    keep = np.abs(lam) >= eps
    lam, m = lam[keep], m[keep]
    if lam.size == 0:
        return 0.0
    e1, e3 = prof.eta1, prof.eta3
    terms = np.asarray(dist_halfline(lam)) ** (2 * e1) / np.abs(lam) ** (2 * e1 - e3)
    return _weighted_sum(terms, m)


def schrodinger_lhs(ev, d: int, p: float, tau: float) -> float:
    """Left side of the Schroedinger eigenvalue inequality, in its simplified form.

    Branches on ``p - d/2 >= 1 - tau``.
    """
    schrodinger_profile(d, p, tau)
    lam, m = as_eigenvalue_list(ev)
    if lam.size == 0:
        return 0.0
    r = np.abs(lam)
    dist = np.asarray(dist_halfline(lam))
    if p - d / 2 >= 1 - tau:
        terms = dist ** (p + tau) / (r ** (d / 4 + 0.5) * (r + 1) ** (d / 4 - 0.5 + 2 * tau))
    else:
        terms = dist ** (p + tau) / (r ** (0.5 * (p + tau)) * (r + 1) ** (0.5 * (d - p + 3 * tau)))
    return _weighted_sum(terms, m)


def corollary2_lhs(ev, d: int, p: float, tau: float, eps: float) -> float:
    """sum over |l| >= eps of dist^{p + tau} / |l|^{d/2 + 2 tau}."""
    lam, m = as_eigenvalue_list(ev)
    keep = np.abs(lam) >= eps
    lam, m = lam[keep], m[keep]
    if lam.size == 0:
        return 0.0
    terms = np.asarray(dist_halfline(lam)) ** (p + tau) / np.abs(lam) ** (d / 2 + 2 * tau)
    return _weighted_sum(terms, m)


def _frank_mask(lam, chi):
    return np.abs(lam.imag) >= chi * lam.real


def frank_lhs(ev, kappa: float, chi: float) -> float:
    """sum over the region |Im l| >= chi Re l of |l|^kappa."""
    if kappa < 1 or chi <= 0:
        raise DomainError("need kappa >= 1 and chi > 0")
    lam, m = as_eigenvalue_list(ev)
    keep = _frank_mask(lam, chi)
    return _weighted_sum(np.abs(lam[keep]) ** kappa, m[keep])


def frank_complement(ev, kappa: float, chi: float) -> float:
    """The same sum over the complementary sector |Im l| < chi Re l."""
    lam, m = as_eigenvalue_list(ev)
    keep = ~_frank_mask(lam, chi)
    return _weighted_sum(np.abs(lam[keep]) ** kappa, m[keep])


def frank_cor_lhs(ev, d: int, p: float, tau: float) -> float:
    """sum dist^{p + tau} / |l|^{d/2 + tau}; requires p - d/2 >= 1."""
    if p - d / 2 < 1:
        raise DomainError("need p - d/2 >= 1")
    lam, m = as_eigenvalue_list(ev)
    if lam.size == 0:
        return 0.0
    terms = np.asarray(dist_halfline(lam)) ** (p + tau) / np.abs(lam) ** (d / 2 + tau)
    return _weighted_sum(terms, m)


def sequence_tail_sums(ev, prof: ExponentProfile, separation: float = 0.1,
                       radius: float = 1.0) -> tuple[float, float, float]:
    """Partial sums controlling how eigenvalue sequences may accumulate.

    Returns ``(s_left, s_right, s_far)``:

    * ``s_left``: sum |l|^{eta1 + eta2} over |l| <= radius, Re l <= 0;
    * ``s_right``: sum |Im l|^{2 eta1} / |l|^{eta1 - eta2} over |l| <= radius, Re l > 0;
    * ``s_far``: sum 1 / |l|^{2 eta1 - eta3} over dist(l, [0, inf)) >= separation.
    """
    lam, m = as_eigenvalue_list(ev)
    e1, e2, e3 = prof.eta1, prof.eta2, prof.eta3
    r = np.abs(lam)
    near = r <= radius
    left = near & (lam.real <= 0)
    right = near & (lam.real > 0)
    far = np.asarray(dist_halfline(lam)) >= separation
    s_left = _weighted_sum(r[left] ** (e1 + e2), m[left])
    s_right = _weighted_sum(np.abs(lam[right].imag) ** (2 * e1) / r[right] ** (e1 - e2), m[right])
    s_far = _weighted_sum(1.0 / r[far] ** (2 * e1 - e3), m[far])
    return s_left, s_right, s_far


def ratio_diagnostic(lhs: float, scale: float, omega0: float, prof: ExponentProfile) -> float:
    """Empirical constant ``lhs / (scale (1 + omega0)^{eta1 + eta2 + (alpha + rho)/2})``.

    ``scale`` is K0 for abstract models and ||V||_p^p for Schroedinger models.
    """
    denom = scale * (1 + omega0) ** prof.omega_exponent
    if not denom > 0:
        raise ZeroDivisionError("ratio denominator must be positive")
    return lhs / denom
