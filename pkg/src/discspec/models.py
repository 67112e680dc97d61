"""Finite-dimensional test operators.

``H0`` is either a Dirichlet finite-difference Laplacian on a box or a random
nonnegative diagonal; ``M`` is a complex potential (diagonal) or a dense random
perturbation. A finite box cannot have ``sigma(H0) = [0, inf)``; these are
surrogates, and every eigenvalue of ``H`` off [0, inf) plays the role of a
discrete eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .linalg import as_matrix, ceil_order
from .rng import stream

MAX_DIM = 4096

__all__ = [
    "GridSpec",
    "PotentialSpec",
    "Omega0Result",
    "ModelTriple",
    "grid_points",
    "build_laplacian",
    "build_potential",
    "compute_omega0",
    "build_abstract_model",
    "build_schrodinger_model",
    "default_map_parameter",
]


@dataclass(frozen=True)
class GridSpec:
    d: int
    n: int
    h: float

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise DomainError("grid dimension must be 1, 2 or 3")
        if self.n < 2 or not self.h > 0:
            raise DomainError("need n >= 2 points per axis and h > 0")

    @property
    def half_width(self) -> float:
        return self.n * self.h / 2

    @property
    def size(self) -> int:
        return self.n ** self.d


@dataclass(frozen=True)
class PotentialSpec:
    """``gaussian_complex``: A exp(-|x|^2 / (2 w^2));
    ``pavlov_decay``: A exp(-c |x|^beta);
    ``custom_table``: explicit values, one per grid point (C order)."""

    kind: str
    amplitude: complex = 0j
    width: float = 1.0
    decay_rate: float = 1.0
    decay_power: float = 1.0
    table: tuple = ()

    def __post_init__(self):
        if self.kind not in ("gaussian_complex", "pavlov_decay", "custom_table"):
            raise DomainError(f"unknown potential kind {self.kind!r}")
        if self.kind == "gaussian_complex" and not self.width > 0:
            raise DomainError("gaussian width must be positive")
        if self.kind == "pavlov_decay" and not (self.decay_rate > 0 and self.decay_power > 0):
            raise DomainError("decay rate and power must be positive")

    def scaled(self, t: float) -> "PotentialSpec":
        return PotentialSpec(self.kind, self.amplitude * t, self.width, self.decay_rate,
                             self.decay_power, tuple(complex(v) * t for v in self.table))

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Values at points ``x`` of shape (N, d)."""
        r2 = np.sum(x * x, axis=1)
        if self.kind == "gaussian_complex":
            return self.amplitude * np.exp(-r2 / (2 * self.width ** 2))
        if self.kind == "pavlov_decay":
            return self.amplitude * np.exp(-self.decay_rate * np.sqrt(r2) ** self.decay_power)
        values = np.asarray(self.table, dtype=np.complex128)
        if values.shape != (x.shape[0],):
            raise DomainError(f"table has {values.size} values, grid has {x.shape[0]} points")
        return values


@dataclass(frozen=True)
class Omega0Result:
    omega0: float
    witness: np.ndarray


@dataclass
class ModelTriple:
    """One experiment instance ``H = H0 + M`` with map parameter ``a``."""

    H0: np.ndarray
    M: np.ndarray
    a: float
    p: float
    omega0: float | None = None
    H: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.H0 = as_matrix(self.H0)
        self.M = as_matrix(self.M)
        if self.H0.shape != self.M.shape:
            raise DomainError("H0 and M must have the same shape")
        self.H = self.H0 + self.M
        if self.omega0 is None:
            self.omega0 = compute_omega0(self.H).omega0
        ceil_order(self.p)
        self._h0_spec = None
        self._res = {}

    @property
    def dim(self) -> int:
        return self.H0.shape[0]

    @property
    def order(self) -> int:
        return ceil_order(self.p)

    def h0_spectrum(self) -> np.ndarray:
        if self._h0_spec is None:
            self._h0_spec = np.linalg.eigvalsh(self.H0)
        return self._h0_spec

    def shifted_inverse(self, which: str) -> np.ndarray:
        """``[a^2 + H]^{-1}`` (``which='H'``) or ``[a^2 + H0]^{-1}`` (``'H0'``), cached."""
        if which not in self._res:
            A = self.H if which == "H" else self.H0
            self._res[which] = np.linalg.solve(self.a ** 2 * np.eye(self.dim) + A,
                                               np.eye(self.dim, dtype=np.complex128))
        return self._res[which]

    def check(self) -> list[str]:
        """Violated invariants (empty when the model is valid)."""
        problems = []
        if np.max(np.abs(self.H0 - self.H0.conj().T)) > 1e-12:
            problems.append("H0 is not selfadjoint")
        elif self.h0_spectrum()[0] < -1e-10:
            problems.append("H0 has negative spectrum")
        herm = 0.5 * (self.H + self.H.conj().T)
        need = max(0.0, -float(np.linalg.eigvalsh(herm)[0]))
        if self.omega0 < need - 1e-10:
            problems.append("omega0 does not bound the numerical range")
        if not self.a ** 2 > self.omega0:
            problems.append("need a^2 > omega0")
        return problems


def default_map_parameter(omega0: float) -> float:
    """``a`` with ``a^2 = 1.5 (omega0 + 1)``, so ``a^2 > omega0`` with margin."""
    return math.sqrt(1.5 * (omega0 + 1))


def grid_points(g: GridSpec) -> np.ndarray:
    """Cell-centred points of the box [-L, L]^d, C order, shape (n^d, d)."""
    axis = -g.half_width + (np.arange(g.n) + 0.5) * g.h
    mesh = np.meshgrid(*([axis] * g.d), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def build_laplacian(g: GridSpec) -> np.ndarray:
    """Dirichlet finite-difference ``-Laplace`` as a Kronecker sum of 1D stencils."""
    if g.size > MAX_DIM:
        raise DomainError(f"grid has {g.size} points, limit is {MAX_DIM}")
    T = (2 * np.eye(g.n) - np.eye(g.n, k=1) - np.eye(g.n, k=-1)) / g.h ** 2
    I = np.eye(g.n)
    L = np.zeros((g.size, g.size))
    for axis in range(g.d):
        term = np.ones((1, 1))
        for j in range(g.d):
            term = np.kron(term, T if j == axis else I)
        L += term
    return L.astype(np.complex128)


def build_potential(g: GridSpec, v: PotentialSpec, p: float = 2.0) -> tuple[np.ndarray, float]:
    """Diagonal multiplication operator and grid norm ``(sum |V|^p h^d)^(1/p)``."""
    values = v.evaluate(grid_points(g))
    if not np.all(np.isfinite(values)):
        raise DomainError("potential has non-finite values on the grid")
    norm = float(np.sum(np.abs(values) ** p) * g.h ** g.d) ** (1 / p)
    return np.diag(values).astype(np.complex128), norm


def compute_omega0(H) -> Omega0Result:
    """Half-plane margin of the numerical range: ``max(0, -lambda_min(Re H))``."""
    H = as_matrix(H)
    w, V = np.linalg.eigh(0.5 * (H + H.conj().T))
    return Omega0Result(max(0.0, -float(w[0])), V[:, 0])


def build_abstract_model(seed: int, dim: int, m_norm: float, p: float = 2.0) -> ModelTriple:
    """Random diagonal ``H0`` with entries in [0, 10] plus dense ``M`` with ``||M||_2 = m_norm``."""
    if dim < 1:
        raise DomainError("dim must be positive")
    rng = stream(seed, "abstract_model")
    H0 = np.diag(rng.uniform(0.0, 10.0, size=dim)).astype(np.complex128)
    M = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    M *= m_norm / np.linalg.norm(M, 2)
    omega0 = compute_omega0(H0 + M).omega0
    return ModelTriple(H0, M, default_map_parameter(omega0), p, omega0)


def build_schrodinger_model(g: GridSpec, v: PotentialSpec, p: float) -> tuple[ModelTriple, float]:
    """``H = -Laplace_h + V`` and the grid norm ``||V||_p``."""
    L = build_laplacian(g)
    V, norm = build_potential(g, v, p)
    omega0 = compute_omega0(L + V).omega0
    return ModelTriple(L, V, default_map_parameter(omega0), p, omega0), norm
