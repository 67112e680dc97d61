"""Dense complex linear algebra for the operator surrogates.

Eigenvalues come from a Householder reduction to Hessenberg form followed by
single-shift complex QR (compiled kernel when available, see
:mod:`discspec._kernels`). Singular values and linear solves use LAPACK through
numpy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConvergenceError, DomainError, NumericalError, SingularShiftError

__all__ = [
    "Spectrum",
    "as_matrix",
    "hessenberg",
    "eigvals",
    "eigenvalues",
    "default_cluster_tol",
    "cluster_values",
    "singular_values",
    "schatten_norm",
    "ceil_order",
    "gamma_constant",
    "regularized_logdet",
    "regularized_determinant",
    "det_bound_check",
    "resolvent_apply",
]


def as_matrix(A) -> np.ndarray:
    """Return ``A`` as a finite square complex128 array or raise DomainError."""
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise DomainError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError("matrix has non-finite entries")
    return A


def hessenberg(A) -> np.ndarray:
    """Unitary similarity reduction to upper Hessenberg form (Householder)."""
    H = as_matrix(A).copy()
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k]
        xnorm = np.linalg.norm(x)
        if xnorm == 0.0:
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        v = x.copy()
        v[0] += phase * xnorm
        v /= np.linalg.norm(v)
        H[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, k:])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0.0
    return H


def eigvals(A) -> np.ndarray:
    """All eigenvalues of ``A`` (with repetition), unordered.

    Raises ConvergenceError after ``100 * dim`` QR iterations.
    """
    H = hessenberg(A)
    n = H.shape[0]
    if n == 1:
        return H[0].copy()
    w, status = _kernels.hqr_eigvals(H, 100 * n)
    if status < 0:
        row = -1 - status
        raise ConvergenceError(
            f"QR iteration did not converge within {100 * n} iterations",
            stuck_row=row,
            subdiagonal=float(np.max(np.abs(np.diag(H, -1)))),
            dim=n,
        )
    return w


def default_cluster_tol(A) -> float:
    return 1e-8 * (1.0 + float(np.linalg.norm(A)))


def cluster_values(values, tol: float) -> list[tuple[complex, int]]:
    """Greedy clustering of complex values.

    Values are visited in lexicographic (real, imag) order; each joins the
    first existing cluster whose seed lies within ``tol``. The reported value
    is the cluster mean.
    """
    order = sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag))
    seeds: list[complex] = []
    members: list[list[complex]] = []
    for z in order:
        for i, s in enumerate(seeds):
            if abs(z - s) <= tol:
                members[i].append(z)
                break
        else:
            seeds.append(z)
            members.append([z])
    return [(complex(sum(m) / len(m)), len(m)) for m in members]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with algebraic multiplicities (numerical clustering)."""

    items: tuple[tuple[complex, int], ...]
    cluster_tol: float

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.items)

    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.items], dtype=np.complex128)

    def multiplicities(self) -> np.ndarray:
        return np.array([m for _, m in self.items], dtype=int)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def eigenvalues(A, cluster_tol: float | None = None) -> Spectrum:
    """Eigenvalues of ``A`` clustered into (value, multiplicity) pairs.

    ``cluster_tol`` defaults to ``1e-8 * (1 + ||A||_F)``.
    """
    A = as_matrix(A)
    tol = default_cluster_tol(A) if cluster_tol is None else float(cluster_tol)
    if tol <= 0:
        raise DomainError("cluster_tol must be positive")
    return Spectrum(tuple(cluster_values(eigvals(A), tol)), tol)


def singular_values(A) -> np.ndarray:
    """Singular values, nonincreasing."""
    return np.linalg.svd(as_matrix(A), compute_uv=False)


def schatten_norm(A, p: float) -> float:
    if p <= 0:
        raise DomainError("Schatten order must be positive")
    s = singular_values(A)
    if s[0] == 0.0:
        return 0.0
    # factor out the top singular value so s**p cannot overflow or underflow
    return float(s[0] * np.sum((s / s[0]) ** p) ** (1.0 / p))


def ceil_order(p: float) -> int:
    """Smallest integer n >= p (the determinant regularization order)."""
    if p <= 0:
        raise DomainError("Schatten order must be positive")
    return max(1, math.ceil(p))


def gamma_constant(p: float) -> float:
    """Constant in ``|det_ceil(p)(I - C)| <= exp(Gamma_p ||C||_p^p)``.

    Exact values for ``p <= 1`` and ``p == 2``; the bound ``e (2 + log p)``
    otherwise.
    """
    if p <= 0:
        raise DomainError("Schatten order must be positive")
    if p <= 1:
        return 1.0 / p
    if p == 2:
        return 0.5
    return math.e * (2.0 + math.log(p))


def regularized_logdet(C, n: int, cluster_tol: float | None = None) -> complex:
    """Complex logarithm of ``det_n(I - C)``.

    Accumulated as a sum over eigenvalues of ``log(1 - l) + sum_{j<n} l^j / j``.
    Returns ``-inf`` (real part) when an eigenvalue is within ``cluster_tol``
    of 1. The imaginary part is a phase, not reduced modulo 2 pi.
    """
    if n < 1 or int(n) != n:
        raise DomainError("regularization order must be a positive integer")
    C = as_matrix(C)
    tol = default_cluster_tol(C) if cluster_tol is None else float(cluster_tol)
    lam = eigvals(C)
    if np.any(np.abs(lam - 1.0) <= tol):
        return complex(-math.inf, 0.0)
    total = np.sum(np.log(1.0 - lam))
    power = np.ones_like(lam)
    for j in range(1, int(n)):
        power = power * lam
        total = total + np.sum(power) / j
    return complex(total)


def regularized_determinant(C, n: int, cluster_tol: float | None = None) -> complex:
    """``det_n(I - C) = prod (1 - l) exp(sum_{j<n} l^j / j)`` over sigma(C)."""
    logdet = regularized_logdet(C, n, cluster_tol)
    if logdet.real == -math.inf:
        return 0j
    try:
        return cmath.exp(logdet)
    except OverflowError:
        raise NumericalError(
            f"|det| = exp({logdet.real:.6g}) overflows; use regularized_logdet") from None


def det_bound_check(C, p: float) -> tuple[float, float, bool]:
    """Check ``|det_ceil(p)(I - C)| <= exp(Gamma_p ||C||_{S_p}^p)``."""
    n = ceil_order(p)
    logdet = regularized_logdet(C, n)
    lhs = math.exp(logdet.real) if logdet.real > -math.inf else 0.0
    rhs_log = gamma_constant(p) * schatten_norm(C, p) ** p
    rhs = math.exp(rhs_log)
    return lhs, rhs, logdet.real <= rhs_log + math.log1p(1e-10)


def resolvent_apply(A, lam: complex, cluster_tol: float | None = None,
                    check_spectrum: bool = True, return_residual: bool = False):
    """Solve ``(lam I - A) X = I`` by partial-pivot LU.

    With ``check_spectrum`` the shift is first compared with the computed
    spectrum of ``A``; a shift within ``cluster_tol`` raises
    SingularShiftError. Otherwise only an exactly singular factorization is
    detected. ``return_residual`` also returns ``||(lam I - A) X - I||_F``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    if check_spectrum:
        tol = default_cluster_tol(A) if cluster_tol is None else float(cluster_tol)
        if np.any(np.abs(eigvals(A) - lam) <= tol):
            raise SingularShiftError(f"shift {lam} lies within {tol:g} of the spectrum")
    shifted = lam * np.eye(n) - A
    try:
        X = np.linalg.solve(shifted, np.eye(n, dtype=np.complex128))
    except np.linalg.LinAlgError as exc:
        raise SingularShiftError(f"shift {lam} is a spectral point") from exc
    if not np.all(np.isfinite(X)):
        raise SingularShiftError(f"shift {lam} is a spectral point")
    if return_residual:
        residual = float(np.linalg.norm(shifted @ X - np.eye(n)))
        return X, residual
    return X
