"""Closed-form continuous kernel of the backward Schroedinger operator.

For t > 0 the kernel is i (4 i pi t)^(-3/2) exp(i |x|^2 / (4 t)), taken on
the principal branch of the complex power, and it vanishes for t < 0.  Its
modulus (4 pi t)^(-3/2) is independent of x, which makes restricted l1 norms
exact: norm = window volume times the modulus.  The epsilon-regularized
variant damps the phase factor with exp(-eps |x|^2 / (4 t)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, EvaluationDomainError
from .lattice import ComplexField3D, LatticeSpec, window_volume, zero_field


@dataclass(frozen=True)
class KernelParams:
    """Regularization strength; 0 selects the exact kernel."""

    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if not (self.epsilon >= 0.0):
            raise ConfigurationError(f"epsilon must be >= 0, got {self.epsilon}")


def _prefactor(t: float) -> complex:
    # principal branch: for t > 0 this is (4 pi t)^(-3/2) exp(-3 i pi / 4)
    return 1j * complex(4j * np.pi * t) ** -1.5


def eval_E(x, t: float) -> complex:
    """Kernel value at spatial point x (length-3) and time t.

    Returns 0 for t < 0; t = 0 is the kernel's singular time and is rejected.
    """
    if t == 0.0:
        raise EvaluationDomainError("kernel is singular at t = 0")
    if t < 0.0:
        return 0j
    r2 = float(np.dot(x, x))
    return _prefactor(t) * complex(np.exp(1j * r2 / (4.0 * t)))


def eval_E_reg(x, t: float, params: KernelParams) -> complex:
    """Regularized kernel: the phase exponent i is replaced by (-epsilon + i)."""
    if t == 0.0:
        raise EvaluationDomainError("kernel is singular at t = 0")
    if t < 0.0:
        return 0j
    r2 = float(np.dot(x, x))
    return _prefactor(t) * complex(np.exp((-params.epsilon + 1j) * r2 / (4.0 * t)))


def kernel_on_lattice(
    spec: LatticeSpec, k: int, params: KernelParams | None = None
) -> ComplexField3D:
    """Kernel restricted to the spatial window at time k*tau, vectorized.

    Agrees pointwise with sampling eval_E / eval_E_reg on the grid; k = 0 is
    rejected like t = 0, and negative k gives the zero field.
    """
    if k == 0:
        raise EvaluationDomainError("kernel is singular at t = 0 (k = 0)")
    if k < 0:
        return zero_field(spec)
    t = k * spec.tau
    x1, x2, x3 = spec.coordinate_grids()
    r2 = x1**2 + x2**2 + x3**2
    exponent = (1j if params is None else -params.epsilon + 1j) * r2 / (4.0 * t)
    return ComplexField3D(spec, _prefactor(t) * np.exp(exponent))


def restricted_kernel_l1(spec: LatticeSpec, k: int) -> float:
    """Exact l1 norm of the restricted kernel slice: Vol * (4 pi tau k)^(-3/2)."""
    if k <= 0:
        raise ConfigurationError(f"slice index must be positive, got {k}")
    return window_volume(spec) * (4.0 * np.pi * spec.tau * k) ** -1.5
