"""Discrete space-time domains, delta functions, restriction, and l1 norms.

A lattice window is the cube of points h*(m1, m2, m3) with integer
coordinates m_s in [-n_half, n_half], paired with the time grid tau*k for
k = 0..k_max.  All fields in this package live on such a window, stored
row-major by (m1, m2, m3) with the origin at the central index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigurationError, NonFiniteFieldError


@dataclass(frozen=True)
class LatticeSpec:
    """Mesh parameters of a truncated space-time lattice.

    Attributes:
        h: spatial mesh width, > 0.
        tau: time step, > 0.
        n_half: points per half axis; the full axis has 2*n_half + 1 points.
        k_max: number of time steps; represented times are tau*k, k = 0..k_max.
    """

    h: float
    tau: float
    n_half: int
    k_max: int

    def __post_init__(self):
        if not (np.isfinite(self.h) and self.h > 0):
            raise ConfigurationError(f"h must be a positive finite real, got {self.h}")
        if not (np.isfinite(self.tau) and self.tau > 0):
            raise ConfigurationError(f"tau must be a positive finite real, got {self.tau}")
        if int(self.n_half) != self.n_half or self.n_half < 1:
            raise ConfigurationError(f"n_half must be an integer >= 1, got {self.n_half}")
        if int(self.k_max) != self.k_max or self.k_max < 1:
            raise ConfigurationError(f"k_max must be an integer >= 1, got {self.k_max}")

    @property
    def n_points(self) -> int:
        """Points per axis: 2*n_half + 1."""
        return 2 * self.n_half + 1

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.n_points,) * 3

    @property
    def cfl_ratio(self) -> float:
        """Mesh ratio tau / h^2."""
        return self.tau / self.h**2

    @property
    def cfl_ratio_squared(self) -> float:
        """Alternative mesh ratio tau^2 / h^2, recorded alongside cfl_ratio."""
        return self.tau**2 / self.h**2

    @property
    def origin_index(self) -> tuple[int, int, int]:
        return (self.n_half,) * 3

    def axis_indices(self) -> np.ndarray:
        """Integer axis coordinates -n_half..n_half."""
        return np.arange(-self.n_half, self.n_half + 1)

    def axis_coords(self) -> np.ndarray:
        """Physical axis coordinates h*m."""
        return self.h * self.axis_indices()

    def coordinate_grids(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Full 3D coordinate arrays (X1, X2, X3), each of window shape."""
        x = self.axis_coords()
        return tuple(np.meshgrid(x, x, x, indexing="ij"))


def window_volume(spec: LatticeSpec) -> float:
    """Lattice volume of the truncated window: sum of h^3 over all points."""
    return spec.n_points**3 * spec.h**3


def ell1_radius_grid(spec: LatticeSpec) -> np.ndarray:
    """Integer grid of |m1| + |m2| + |m3| per window point."""
    a = np.abs(spec.axis_indices())
    return a[:, None, None] + a[None, :, None] + a[None, None, :]


@dataclass(frozen=True, eq=False)
class ComplexField3D:
    """Immutable complex-valued function sample on the spatial window.

    values has shape spec.shape, dtype complex128, and is write-protected.
    Construction rejects NaN/Inf entries so downstream norms stay meaningful.
    """

    spec: LatticeSpec
    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.complex128, order="C", copy=True)
        if arr.shape != self.spec.shape:
            raise ConfigurationError(
                f"field shape {arr.shape} does not match window shape {self.spec.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise NonFiniteFieldError("field contains NaN or Inf entries")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def origin_value(self) -> complex:
        return complex(self.values[self.spec.origin_index])

    def __add__(self, other: "ComplexField3D") -> "ComplexField3D":
        if other.spec != self.spec:
            raise ConfigurationError("cannot combine fields on different windows")
        return ComplexField3D(self.spec, self.values + other.values)

    def __sub__(self, other: "ComplexField3D") -> "ComplexField3D":
        if other.spec != self.spec:
            raise ConfigurationError("cannot combine fields on different windows")
        return ComplexField3D(self.spec, self.values - other.values)

    def __mul__(self, scalar: complex) -> "ComplexField3D":
        return ComplexField3D(self.spec, self.values * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "ComplexField3D":
        return ComplexField3D(self.spec, -self.values)


@dataclass(frozen=True, eq=False)
class QuaternionField3D:
    """Four complex components (u0, u1, u2, u3) sharing one window."""

    spec: LatticeSpec
    components: tuple[ComplexField3D, ComplexField3D, ComplexField3D, ComplexField3D]

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != 4:
            raise ConfigurationError("a quaternion field needs exactly 4 components")
        for c in comps:
            if c.spec != self.spec:
                raise ConfigurationError("all quaternion components must share the spec")
        object.__setattr__(self, "components", comps)

    def __getitem__(self, i: int) -> ComplexField3D:
        return self.components[i]


def zero_field(spec: LatticeSpec) -> ComplexField3D:
    return ComplexField3D(spec, np.zeros(spec.shape, dtype=np.complex128))


def delta_h(spec: LatticeSpec) -> ComplexField3D:
    """Discrete spatial delta: 1/h^3 at the origin, 0 elsewhere."""
    vals = np.zeros(spec.shape, dtype=np.complex128)
    vals[spec.origin_index] = 1.0 / spec.h**3
    return ComplexField3D(spec, vals)


def delta_tau(spec: LatticeSpec, k: int) -> complex:
    """Discrete temporal delta: 1/tau at k = 0, 0 for k > 0."""
    if k < 0:
        raise ConfigurationError(f"time index must be >= 0, got {k}")
    return complex(1.0 / spec.tau) if k == 0 else 0.0j


def restrict(f: Callable[[np.ndarray, float], complex], spec: LatticeSpec, k: int) -> ComplexField3D:
    """Sample a continuous function f(x, t) on the window at time tau*k.

    f is called pointwise with x a length-3 float array.  Evaluation
    failures (singular times and similar) propagate as domain errors.
    """
    if k < 0:
        raise ConfigurationError(f"time index must be >= 0, got {k}")
    t = spec.tau * k
    coords = spec.axis_coords()
    vals = np.empty(spec.shape, dtype=np.complex128)
    for i1, x1 in enumerate(coords):
        for i2, x2 in enumerate(coords):
            for i3, x3 in enumerate(coords):
                vals[i1, i2, i3] = f(np.array([x1, x2, x3]), t)
    return ComplexField3D(spec, vals)


def l1_norm_spatial(u: ComplexField3D) -> float:
    """Sum of |u| * h^3 over the window.

    numpy's pairwise reduction order is fixed by the array shape, so the
    result is reproducible bit for bit across runs.
    """
    return float(np.sum(np.abs(u.values)) * u.spec.h**3)


def l1_norm_spacetime(slices: Sequence[ComplexField3D], k_from: int, k_to: int) -> float:
    """tau-weighted sum of spatial l1 norms of slices[k_from..k_to]."""
    if k_from < 1:
        raise ConfigurationError(f"k_from must be >= 1, got {k_from}")
    if k_to >= len(slices):
        raise ConfigurationError(
            f"k_to = {k_to} exceeds the last available slice index {len(slices) - 1}"
        )
    if k_to < k_from:
        raise ConfigurationError(f"empty time range [{k_from}, {k_to}]")
    tau = slices[k_from].spec.tau
    return float(sum(tau * l1_norm_spatial(slices[k]) for k in range(k_from, k_to + 1)))
