"""Numerical lab for eigenvalue sums of non-selfadjoint perturbations.

Submodules:

* ``linalg``: eigenvalues, Schatten norms, regularized determinants
* ``geometry``: the slit plane C \\ [0, inf) and its conformal disk model
* ``perturbation``: the perturbation determinant and its growth bounds
* ``functionals``: exponent profiles and eigenvalue-sum functionals
* ``models``: finite-difference Schroedinger and random abstract operators
* ``symbols``: resolvent-symbol integrals and elementary integral bounds
* ``bgk``: zero sums of holomorphic functions on the disk
* ``harness``: configs, pipelines, reports and the ``discspec`` CLI
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .errors import (ConfigError, ConvergenceError, DiscspecError, DomainError,
                     NormalizationError, NumericalError, QuadratureError, SingularShiftError)

__all__ = [
    "__version__",
    "BACKEND",
    "ConfigError",
    "ConvergenceError",
    "DiscspecError",
    "DomainError",
    "NormalizationError",
    "NumericalError",
    "QuadratureError",
    "SingularShiftError",
]
