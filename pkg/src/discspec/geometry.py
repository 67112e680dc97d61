"""Geometry of the slit plane C \\ [0, inf) and its conformal disk model.

All functions accept scalars or numpy arrays and broadcast.

The map ``phi(a, z) = -a^2 ((z + 1) / (z - 1))^2`` sends the unit disk onto the
slit plane. Writing ``mu = i a (1 + z) / (1 - z)`` (a Moebius map of the disk
onto the upper half-plane) gives ``phi(a, z) = mu^2``, so the inverse is
``z = (mu - i a) / (mu + i a)`` with ``mu`` the square root of ``lambda`` in the
upper half-plane.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

SLIT_TOL = 1e-14

__all__ = [
    "dist_halfline",
    "sqrt_upper",
    "phi",
    "phi_inv",
    "disk_to_upper",
    "one_minus_abs_phi_inv",
    "lemma_sq_check",
    "lemma_ese2_check",
]


def _scalar_or_array(x):
    return x.item() if isinstance(x, np.ndarray) and x.ndim == 0 else x


def dist_halfline(lam):
    """Distance from ``lam`` to [0, inf)."""
    lam = np.asarray(lam, dtype=np.complex128)
    out = np.where(lam.real > 0, np.abs(lam.imag), np.abs(lam))
    return _scalar_or_array(out)


def _check_slit(lam):
    lam = np.asarray(lam, dtype=np.complex128)
    if np.any(np.asarray(dist_halfline(lam)) <= SLIT_TOL):
        raise DomainError("point lies on (or within 1e-14 of) [0, inf)")
    return lam


def sqrt_upper(lam):
    """Square root with positive imaginary part; ``lam`` off [0, inf)."""
    lam = _check_slit(lam)
    mu = np.sqrt(lam)
    mu = np.where(mu.imag > 0, mu, -mu)
    return _scalar_or_array(mu)


def phi(a: float, z):
    """Conformal map of the unit disk onto C \\ [0, inf); ``phi(a, 0) = -a^2``."""
    if a <= 0:
        raise DomainError("map parameter a must be positive")
    z = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(z) >= 1):
        raise DomainError("phi is defined on the open unit disk")
    w = (z + 1) / (z - 1)
    return _scalar_or_array(-a * a * w * w)


def phi_inv(a: float, lam):
    """Inverse of :func:`phi`: ``(mu - i a) / (mu + i a)``, ``mu = sqrt_upper(lam)``."""
    if a <= 0:
        raise DomainError("map parameter a must be positive")
    mu = np.asarray(sqrt_upper(lam))
    return _scalar_or_array((mu - 1j * a) / (mu + 1j * a))


def disk_to_upper(a: float, z):
    """``mu = i a (1 + z) / (1 - z)``; satisfies ``mu^2 = phi(a, z)``."""
    z = np.asarray(z, dtype=np.complex128)
    return _scalar_or_array(1j * a * (1 + z) / (1 - z))


def one_minus_abs_phi_inv(a: float, lam):
    """``1 - |phi_inv(a, lam)|`` without cancellation near the circle.

    Uses ``1 - |z|^2 = 4 a Im(mu) / |mu + i a|^2`` and divides by ``1 + |z|``.
    """
    mu = np.asarray(sqrt_upper(lam))
    z = (mu - 1j * a) / (mu + 1j * a)
    one_minus_sq = 4 * a * mu.imag / np.abs(mu + 1j * a) ** 2
    return _scalar_or_array(one_minus_sq / (1 + np.abs(z)))


def lemma_sq_check(mu, rel: float = 1e-12):
    """``|mu| |Im mu| <= dist(mu^2, [0, inf)) <= 2 |mu| |Im mu|``.

    Returns ``(lower, mid, upper, passed)``; arrays in, arrays out.
    """
    mu = np.asarray(mu, dtype=np.complex128)
    if np.any(mu == 0):
        raise DomainError("mu must be nonzero")
    base = np.abs(mu) * np.abs(mu.imag)
    mid = np.asarray(dist_halfline(mu * mu))
    lower, upper = base, 2 * base
    passed = (lower <= mid * (1 + rel)) & (mid <= upper * (1 + rel))
    return tuple(_scalar_or_array(x) for x in (lower, mid, upper, passed))


def lemma_ese2_check(a: float, lam, rel: float = 1e-10):
    """The three distortion double inequalities for ``z = phi_inv(a, lam)``.

    Returns a list of three ``(lower, value, upper, passed)`` tuples for
    ``1 - |z|``, ``|z - 1|`` and ``|z + 1|`` respectively.
    """
    a = np.asarray(a, dtype=float)
    if np.any(a <= 0):
        raise DomainError("map parameter a must be positive")
    lam = _check_slit(lam)
    mu = np.asarray(sqrt_upper(lam))
    absl = np.abs(lam)
    dist = np.asarray(dist_halfline(lam))
    root = np.sqrt(absl)
    big = absl + a * a
    denom = np.abs(mu + 1j * a)
    # |z - 1| = 2a / |mu + ia| and |z + 1| = 2|mu| / |mu + ia| (no cancellation)
    values = (
        np.asarray(one_minus_abs_phi_inv(a, lam)),
        2 * a / denom,
        2 * np.abs(mu) / denom,
    )
    bounds = (
        (0.5 * a * dist / (root * big), 4 * a * dist / (root * big)),
        (np.sqrt(2) * a / np.sqrt(big), 2 * a / np.sqrt(big)),
        (np.sqrt(2) * root / np.sqrt(big), 2 * root / np.sqrt(big)),
    )
    out = []
    for v, (lo, hi) in zip(values, bounds):
        ok = (lo <= v * (1 + rel)) & (v <= hi * (1 + rel))
        out.append(tuple(_scalar_or_array(x) for x in (lo, v, hi, ok)))
    return out
