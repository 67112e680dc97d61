"""Zero sums of holomorphic functions on the unit disk against boundary growth.

For ``h`` holomorphic in the disk with ``h(0) = 1`` and

    log|h(z)| <= K / ((1 - |z|)^alpha prod_j |z - xi_j|^{beta_j}),

the zeros satisfy

    sum (1 - |z|)^{alpha + 1 + tau} prod_j |z - xi_j|^{(beta_j - 1 + tau)_+} <= C K

with a constant C that is not explicit. This module computes both sides so
the ratio can be recorded, and checks the explicit rewriting of that zero sum
in terms of eigenvalues of a model operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import pmap
from .errors import DomainError, NormalizationError, NumericalError
from .functionals import ExponentProfile
from .geometry import dist_halfline, phi_inv
from .perturbation import GrowthEnvelope, discrete_eigenvalues
from .models import ModelTriple

__all__ = [
    "BoundaryData",
    "ZeroSet",
    "BlaschkeOracle",
    "TransferReport",
    "zero_sum",
    "default_lattice",
    "growth_K",
    "blaschke_oracle",
    "sc3_exponent_identity",
    "sc3_to_sc4_transfer",
]

UNIMODULAR_TOL = 1e-12
NORMALIZATION_TOL = 1e-8
TINY = 1e-300


@dataclass(frozen=True)
class BoundaryData:
    """Boundary weight: exponent ``alpha`` at the whole circle, ``beta_j`` at ``xi_j``."""

    alpha: float
    points: tuple
    tau: float

    def __post_init__(self):
        if not self.alpha >= 0:
            raise DomainError("alpha must be nonnegative")
        if not self.tau > 0:
            raise DomainError("tau must be positive")
        pts = tuple((complex(x), float(b)) for x, b in self.points)
        for x, b in pts:
            if abs(abs(x) - 1) > UNIMODULAR_TOL:
                raise DomainError(f"boundary point {x} is not on the unit circle")
            if b < 0:
                raise DomainError("beta_j must be nonnegative")
        xs = [x for x, _ in pts]
        for i in range(len(xs)):
            for j in range(i):
                if abs(xs[i] - xs[j]) <= UNIMODULAR_TOL:
                    raise DomainError("boundary points must be distinct")
        object.__setattr__(self, "points", pts)

    @property
    def xi(self) -> np.ndarray:
        return np.array([x for x, _ in self.points], dtype=np.complex128)

    @property
    def beta(self) -> np.ndarray:
        return np.array([b for _, b in self.points], dtype=float)


@dataclass(frozen=True)
class ZeroSet:
    """Zeros strictly inside the unit disk with positive integer multiplicities."""

    zeros: tuple = ()

    def __post_init__(self):
        zs = []
        for item in self.zeros:
            z, m = item if isinstance(item, tuple) else (item, 1)
            z = complex(z)
            if not abs(z) < 1:
                raise DomainError(f"zero {z} is not inside the unit disk")
            if int(m) != m or m < 1:
                raise DomainError("multiplicities must be positive integers")
            zs.append((z, int(m)))
        object.__setattr__(self, "zeros", tuple(zs))

    def __len__(self):
        return len(self.zeros)

    def doubled(self) -> "ZeroSet":
        return ZeroSet(tuple((z, 2 * m) for z, m in self.zeros))

    def values(self) -> np.ndarray:
        return np.array([z for z, _ in self.zeros], dtype=np.complex128)

    def multiplicities(self) -> np.ndarray:
        return np.array([m for _, m in self.zeros], dtype=float)


def zero_sum(zs: ZeroSet, bd: BoundaryData) -> float:
    """``sum m (1 - |z|)^{alpha+1+tau} prod_j |z - xi_j|^{(beta_j - 1 + tau)_+}``."""
    if len(zs) == 0:
        return 0.0
    z = zs.values()
    terms = (1 - np.abs(z)) ** (bd.alpha + 1 + bd.tau)
    for xi, beta in bd.points:
        terms = terms * np.abs(z - xi) ** max(beta - 1 + bd.tau, 0.0)
    return math.fsum((terms * zs.multiplicities()).tolist())


def default_lattice(n_radii: int = 64, n_angles: int = 256, depth: float = 4.0):
    """Radii ``1 - 10^{-depth k / (n_radii - 1)}`` (0 up to ``1 - 10^-depth``) and uniform angles."""
    k = np.arange(n_radii)
    radii = 1 - 10.0 ** (-depth * k / (n_radii - 1))
    angles = 2 * math.pi * np.arange(n_angles) / n_angles
    return radii, angles


def _log_abs(h, z: np.ndarray) -> np.ndarray:
    if hasattr(h, "log_abs"):
        return np.asarray(h.log_abs(z), dtype=float)
    try:
        vals = np.asarray(h(z), dtype=np.complex128)
        if vals.shape != z.shape:
            raise ValueError
    except (TypeError, ValueError):
        vals = np.array([complex(h(x)) for x in z.ravel()]).reshape(z.shape)
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(np.abs(vals) < TINY, -np.inf, np.log(np.abs(vals)))


def growth_K(h, bd: BoundaryData, radii=None, angles=None) -> float:
    """``max(0, sup log|h(z)| (1 - |z|)^alpha prod_j |z - xi_j|^{beta_j})`` on a polar lattice.

    ``h`` may accept arrays or scalars; an object with a ``log_abs`` method is
    used directly. Samples where ``|h| < 1e-300`` are skipped; overflow of
    ``log|h|`` raises NumericalError.
    """
    h0 = complex(h(0j) if not hasattr(h, "value_at_origin") else h.value_at_origin)
    if abs(h0 - 1) > NORMALIZATION_TOL:
        raise NormalizationError(f"h(0) = {h0}, expected 1")
    default_r, default_t = default_lattice()
    radii = default_r if radii is None else np.asarray(radii, dtype=float)
    angles = default_t if angles is None else np.asarray(angles, dtype=float)
    if np.any((radii < 0) | (radii >= 1)):
        raise DomainError("sample radii must lie in [0, 1)")
    ring = np.exp(1j * angles)

    def row(r):
        z = r * ring
        logs = _log_abs(h, z)
        weight = (1 - r) ** bd.alpha * np.ones_like(angles)
        for xi, beta in bd.points:
            weight = weight * np.abs(z - xi) ** beta
        if np.any(np.isnan(logs) | (logs == math.inf)):
            raise NumericalError(f"log|h| is not finite on the circle of radius {r}")
        vals = (logs * weight)[np.isfinite(logs)]
        return float(np.max(vals)) if vals.size else -math.inf

    return max(0.0, max(pmap(row, radii)))


class BlaschkeOracle:
    """Finite Blaschke product with prescribed zeros.

    ``normalized`` is True when no zero sits at the origin; then
    ``h(z) = prod ((a - z) / (1 - conj(a) z) / a)^m`` and ``h(0) = 1``. With a
    zero at the origin the factor ``z^m`` is used and the remaining factors are
    scaled so that ``|a| (a - z) / (a (1 - conj(a) z))`` equals ``|a|`` at 0;
    ``normalization`` then reports ``prod |a|^m`` over the nonzero zeros.
    """

    def __init__(self, zeros: ZeroSet):
        self.zeros = zeros
        vals, mults = zeros.values(), zeros.multiplicities()
        at_origin = vals == 0
        self.origin_order = int(mults[at_origin].sum())
        self._a = vals[~at_origin]
        self._m = mults[~at_origin]
        self.normalized = self.origin_order == 0
        if self.normalized:
            self._scale = 1 / self._a
            self.normalization = 1.0
        else:
            self._scale = np.abs(self._a) / self._a
            self.normalization = float(np.prod(np.abs(self._a) ** self._m))
        self.value_at_origin = 1.0 if self.normalized else 0.0

    def _factors(self, z):
        z = np.asarray(z, dtype=np.complex128)[..., None]
        return (self._a - z) / (1 - np.conj(self._a) * z) * self._scale

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.prod(self._factors(z) ** self._m, axis=-1) * z ** self.origin_order
        return out.item() if out.ndim == 0 else out

    def log_abs(self, z):
        z = np.asarray(z, dtype=np.complex128)
        with np.errstate(divide="ignore"):
            out = np.sum(self._m * np.log(np.abs(self._factors(z))), axis=-1)
            if self.origin_order:
                out = out + self.origin_order * np.log(np.abs(z))
        return out.item() if out.ndim == 0 else out


def blaschke_oracle(zeros: ZeroSet) -> BlaschkeOracle:
    return BlaschkeOracle(zeros)


def sc3_exponent_identity(rho_grid=None, taus=(0.1, 0.25, 0.5, 0.75, 0.9)):
    """``(max(rho, 0) - 1 + tau)_+ == (rho - 1 + tau)_+`` for ``0 < tau < 1``.

    Returns ``(max_abs_difference, passed)``; equality is exact.
    """
    rho = np.linspace(-3, 3, 601) if rho_grid is None else np.asarray(rho_grid, dtype=float)
    worst = 0.0
    for tau in taus:
        if not 0 < tau < 1:
            raise DomainError("tau must lie in (0, 1)")
        lhs = np.maximum(np.maximum(rho, 0) - 1 + tau, 0)
        rhs = np.maximum(rho - 1 + tau, 0)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst, worst == 0.0


@dataclass(frozen=True)
class TransferReport:
    """Eigenvalue-side lower bound vs disk-side zero sum, termwise and summed."""

    disk_side: float
    lambda_side: float
    boundary_sum: float
    passed: bool
    worst_ratio: float
    count: int


def sc3_to_sc4_transfer(model: ModelTriple, prof: ExponentProfile,
                        env: GrowthEnvelope | None = None, rel: float = 1e-10) -> TransferReport:
    """Compare the zero sum over ``z_k = phi_inv(a, l_k)`` with its eigenvalue form.

    Disk side: ``sum (1-|z|)^{2 eta1} |z+1|^{2 eta2} |z-1|^{2 eta0}``.
    Each term is bounded below by
    ``2^{eta0+eta2-2 eta1} a^{2 eta0 + 2 eta1} dist^{2 eta1} / (|l|^{eta1-eta2} (|l|+a^2)^{eta0+2 eta1+eta2})``
    using the distortion constants ``a/2``, ``sqrt 2``, ``sqrt 2``; all exponents
    are nonnegative so the bound holds term by term. ``boundary_sum`` is the
    same disk sum through :func:`zero_sum` with weights at ``xi = 1, -1``.
    ``env`` only supplies consistency checks on ``p`` when given.
    """
    if env is not None and env.p != model.p:
        raise DomainError("envelope and model use different p")
    if prof.p != model.p:
        raise DomainError("profile and model use different p")
    kept, _ = discrete_eigenvalues(model)
    a = model.a
    e0, e1, e2 = prof.eta0, prof.eta1, prof.eta2
    if not kept:
        return TransferReport(0.0, 0.0, 0.0, True, 0.0, 0)
    lam = np.array([v for v, _ in kept], dtype=np.complex128)
    mult = np.array([m for _, m in kept], dtype=float)
    z = np.asarray(phi_inv(a, lam))
    mu = 1j * a * (1 + z) / (1 - z)
    den = np.abs(mu + 1j * a)
    # cancellation-free distances to the circle and to -1, +1
    one_minus = 4 * a * mu.imag / den ** 2 / (1 + np.abs(z))
    dist_m1 = 2 * np.abs(mu) / den
    dist_p1 = 2 * a / den
    disk = one_minus ** (2 * e1) * dist_m1 ** (2 * e2) * dist_p1 ** (2 * e0)
    absl = np.abs(lam)
    dist = np.asarray(dist_halfline(lam))
    lower = (2.0 ** (e0 + e2 - 2 * e1) * a ** (2 * e0 + 2 * e1) * dist ** (2 * e1)
             / (absl ** (e1 - e2) * (absl + a * a) ** (e0 + 2 * e1 + e2)))
    bd = BoundaryData(prof.alpha, ((1.0, max(prof.rho, 0.0)), (-1.0, prof.nu)), prof.tau)
    boundary = zero_sum(ZeroSet(tuple(zip(z.tolist(), mult.astype(int).tolist()))), bd)
    ratio = lower / disk
    passed = bool(np.all(ratio <= 1 + rel))
    return TransferReport(math.fsum((disk * mult).tolist()), math.fsum((lower * mult).tolist()),
                          boundary, passed, float(np.max(ratio)), len(kept))
