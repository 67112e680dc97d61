"""The perturbation determinant whose zeros are the eigenvalues of ``H``.

For a model ``H = H0 + M`` with map parameter ``a``::

    F(l) = (l + a^2) [a^2 + H]^{-1} M [l - H0]^{-1}
    f(l) = det_n(I - F(l)),      n = ceil(p)
    h(z) = f(phi_a(z))

``f(-a^2) = 1`` because ``F(-a^2) = 0``. Bounds on ``f`` and ``h`` are checked
against growth envelopes (K constants) estimated as suprema over sample grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import pmap
from .errors import DomainError, SingularShiftError
from .geometry import disk_to_upper, dist_halfline, phi
from .linalg import cluster_values, eigvals, gamma_constant, regularized_logdet, schatten_norm
from .models import ModelTriple

__all__ = [
    "ModelTriple",
    "GrowthEnvelope",
    "CheckResult",
    "big_F",
    "big_F_alt",
    "little_f",
    "log_abs_f",
    "little_h",
    "discrete_eigenvalues",
    "zero_correspondence",
    "estimate_K",
    "lemma_bound_check",
    "lemma_bh_check",
    "resolvent_identity_residual",
    "a12_residual",
    "mu_grid",
    "disk_grid",
    "disk_envelope",
    "ZeroReport",
]

SLIT_EXCLUSION = 1e-10


@dataclass(frozen=True)
class GrowthEnvelope:
    """Grid supremum of a normalized Schatten quantity.

    ``kind='K0'``: ``||M [mu^2 - H0]^{-1}||_p^p |Im mu|^alpha |mu|^nu / |mu + i|^delta``.
    ``kind='K1'``: same with ``[a^2 + H]^{-1}`` in front and ``|mu + i a|``.
    """

    K: float
    alpha: float
    delta: float
    nu: float
    kind: str
    p: float
    values: tuple = ()


@dataclass(frozen=True)
class CheckResult:
    worst: float
    passed: bool
    lhs: np.ndarray
    rhs: np.ndarray


def _h0_resolvent(model: ModelTriple, lam: complex) -> np.ndarray:
    spec = model.h0_spectrum()
    tol = 1e-8 * (1 + float(np.max(np.abs(spec))))
    if np.min(np.abs(spec - lam)) <= tol:
        raise SingularShiftError(f"{lam} lies in the spectrum of H0")
    return np.linalg.solve(lam * np.eye(model.dim) - model.H0,
                           np.eye(model.dim, dtype=np.complex128))


def big_F(model: ModelTriple, lam: complex) -> np.ndarray:
    lam = complex(lam)
    R0 = _h0_resolvent(model, lam)
    return (lam + model.a ** 2) * (model.shifted_inverse("H") @ model.M @ R0)


def big_F_alt(model: ModelTriple, lam: complex) -> np.ndarray:
    """``[(l + a^2)^{-1} - [a^2 + H0]^{-1}]^{-1} ([a^2 + H]^{-1} - [a^2 + H0]^{-1})``.

    Undefined at ``l = -a^2``.
    """
    lam = complex(lam)
    if lam + model.a ** 2 == 0:
        raise DomainError("alternative representation is undefined at -a^2")
    _h0_resolvent(model, lam)
    R, R0 = model.shifted_inverse("H"), model.shifted_inverse("H0")
    left = np.eye(model.dim) / (lam + model.a ** 2) - R0
    return np.linalg.solve(left, R - R0)


def log_abs_f(model: ModelTriple, lam: complex, alt: bool = False) -> float:
    """``log |f(l)|`` (``-inf`` at zeros)."""
    F = big_F_alt(model, lam) if alt else big_F(model, lam)
    return regularized_logdet(F, model.order).real


def little_f(model: ModelTriple, lam: complex, alt: bool = False) -> complex:
    F = big_F_alt(model, lam) if alt else big_F(model, lam)
    logdet = regularized_logdet(F, model.order)
    return 0j if logdet.real == -math.inf else complex(np.exp(logdet))


def little_h(model: ModelTriple, z: complex) -> complex:
    return little_f(model, phi(model.a, complex(z)))


def discrete_eigenvalues(model: ModelTriple, cluster_tol: float | None = None):
    """Clustered eigenvalues of ``H`` split into (kept, excluded-near-[0, inf))."""
    w = eigvals(model.H)
    tol = 1e-8 * (1 + float(np.linalg.norm(model.H))) if cluster_tol is None else cluster_tol
    kept, excluded = [], []
    for v, m in cluster_values(w, tol):
        (kept if dist_halfline(v) > SLIT_EXCLUSION else excluded).append((v, m))
    return kept, excluded


def _probe_radius(v, others, model) -> float:
    gaps = [abs(v - o) for o in others if o != v]
    gaps.append(float(np.min(np.abs(model.h0_spectrum() - v))))
    gaps.append(dist_halfline(v))
    return 0.5 * min(gaps)


def _winding(values) -> int:
    vals = np.asarray(values)
    steps = np.angle(np.roll(vals, -1) / vals)
    return int(round(float(np.sum(steps)) / (2 * math.pi)))


@dataclass(frozen=True)
class ZeroReport:
    max_abs_f: float
    passed: bool
    eigenvalues: tuple
    excluded: tuple
    min_probe_abs: float
    windings: tuple


def zero_correspondence(model: ModelTriple, tol: float = 1e-7, probes: int = 8,
                        winding: bool = False) -> ZeroReport:
    """``f`` vanishes at every discrete eigenvalue and nowhere on small probe circles.

    With ``winding=True`` the winding number of ``f`` around each probe circle
    is also compared with the multiplicity (argument principle); use at least
    64 probes for that.
    """
    kept, excluded = discrete_eigenvalues(model)
    all_vals = [v for v, _ in kept + excluded]
    max_abs = 0.0
    min_probe = math.inf
    windings = []
    ok = True
    for v, m in kept:
        max_abs = max(max_abs, abs(little_f(model, v)))
        r = _probe_radius(v, all_vals, model)
        ring = v + r * np.exp(2j * math.pi * np.arange(probes) / probes)
        fvals = [little_f(model, x) for x in ring]
        min_probe = min(min_probe, min(abs(x) for x in fvals))
        if winding:
            k = _winding(fvals)
            windings.append(k)
            ok &= k == m
    ok &= max_abs < tol and (not kept or min_probe > 0)
    return ZeroReport(max_abs, bool(ok), tuple(kept), tuple(excluded),
                      min_probe, tuple(windings))


def _T(model: ModelTriple, mu: complex, kind: str) -> np.ndarray:
    T = model.M @ _h0_resolvent(model, mu * mu)
    if kind == "K1":
        T = model.shifted_inverse("H") @ T
    return T


def estimate_K(model: ModelTriple, alpha: float, delta: float, nu: float, grid,
               kind: str = "K1") -> GrowthEnvelope:
    """Grid supremum defining K0 (``kind='K0'``) or K1 (``kind='K1'``)."""
    if kind not in ("K0", "K1"):
        raise DomainError("kind must be 'K0' or 'K1'")
    grid = np.atleast_1d(np.asarray(grid, dtype=np.complex128))
    if grid.size == 0:
        raise DomainError("grid is empty")
    if np.any(grid.imag <= 0):
        raise DomainError("grid points must have Im(mu) > 0")
    c = 1.0 if kind == "K0" else model.a
    p = model.p

    def one(mu):
        s = schatten_norm(_T(model, mu, kind), p) ** p
        return s * abs(mu.imag) ** alpha * abs(mu) ** nu / abs(mu + 1j * c) ** delta

    values = pmap(one, grid)
    return GrowthEnvelope(float(max(values)), alpha, delta, nu, kind, p, tuple(values))


def lemma_bound_check(model: ModelTriple, env: GrowthEnvelope, grid,
                      slack: float = 1e-9) -> CheckResult:
    """``log|f(mu^2)| <= Gamma_p K1 |mu - ia|^p |mu + ia|^{delta+p} / (|Im mu|^alpha |mu|^nu)``."""
    if env.kind != "K1":
        raise DomainError("lemma_bound_check needs a K1 envelope")
    grid = np.atleast_1d(np.asarray(grid, dtype=np.complex128))
    a, p = model.a, model.p
    lhs = np.array(pmap(lambda mu: log_abs_f(model, mu * mu), grid))
    rhs = (gamma_constant(p) * env.K * np.abs(grid - 1j * a) ** p
           * np.abs(grid + 1j * a) ** (env.delta + p)
           / (np.abs(grid.imag) ** env.alpha * np.abs(grid) ** env.nu))
    diff = lhs - rhs
    return CheckResult(float(np.max(diff)), bool(np.all(diff <= slack)), lhs, rhs)


def lemma_bh_check(model: ModelTriple, env: GrowthEnvelope, zgrid,
                   slack: float = 1e-9) -> CheckResult:
    """``log|h(z)| <= Gamma_p 2^{delta+2p} K1 a^{alpha+rho} |z|^p / ((1-|z|)^alpha |z+1|^nu |z-1|^rho)``.

    ``env`` must be estimated on ``disk_to_upper(a, zgrid)``.
    """
    if env.kind != "K1":
        raise DomainError("lemma_bh_check needs a K1 envelope")
    z = np.atleast_1d(np.asarray(zgrid, dtype=np.complex128))
    a, p = model.a, model.p
    alpha, delta, nu = env.alpha, env.delta, env.nu
    rho = delta + 2 * (p - alpha) - nu
    lhs = np.array(pmap(lambda zz: log_abs_f(model, phi(a, zz)), z))
    const = gamma_constant(p) * 2 ** (delta + 2 * p) * env.K * a ** (alpha + rho)
    r = np.abs(z)
    rhs = const * r ** p / ((1 - r) ** alpha * np.abs(z + 1) ** nu * np.abs(z - 1) ** rho)
    diff = lhs - rhs
    return CheckResult(float(np.max(diff)), bool(np.all(diff <= slack)), lhs, rhs)


def resolvent_identity_residual(model: ModelTriple) -> float:
    """``||[a^2+H0]^{-1} - [a^2+H]^{-1} - [a^2+H]^{-1} M [a^2+H0]^{-1}||_F``."""
    R, R0 = model.shifted_inverse("H"), model.shifted_inverse("H0")
    return float(np.linalg.norm(R0 - R - R @ model.M @ R0))


def a12_residual(model: ModelTriple, lam: complex) -> float:
    """Difference between the product form of ``I - F(l)`` and ``I - F(l)`` itself."""
    lam = complex(lam)
    n = model.dim
    I = np.eye(n)
    R, R0 = model.shifted_inverse("H"), model.shifted_inverse("H0")
    s = lam + model.a ** 2
    product = (I - s * R) @ np.linalg.inv(I - s * R0)
    return float(np.linalg.norm(product - (I - big_F(model, lam))))


def mu_grid(n_radii: int = 10, n_angles: int = 10, r_min: float = 0.05,
            r_max: float = 20.0, margin: float = 0.02) -> np.ndarray:
    """Log-polar grid in the open upper half-plane."""
    radii = np.geomspace(r_min, r_max, n_radii)
    angles = np.linspace(margin, math.pi - margin, n_angles)
    return (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()


def disk_grid(n_radii: int = 10, n_angles: int = 10, r_max: float = 0.95) -> np.ndarray:
    """Polar grid in the disk with radii in (0, r_max]; angles avoid z = +-1."""
    radii = np.linspace(r_max / n_radii, r_max, n_radii)
    angles = (np.arange(n_angles) + 0.5) * 2 * math.pi / n_angles
    return (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()


def disk_envelope(model: ModelTriple, alpha, delta, nu, zgrid) -> GrowthEnvelope:
    """K1 envelope on the upper-half-plane images of a disk grid."""
    return estimate_K(model, alpha, delta, nu, disk_to_upper(model.a, zgrid), "K1")
