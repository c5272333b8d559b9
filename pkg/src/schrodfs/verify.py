"""Self-contained invariant suites behind the `verify` subcommand.

Each suite runs a handful of fast checks at fixed desk-scale parameters and
returns pass/fail rows; nothing here writes files.  The suites mirror the
package's structural invariants (transform exactness, route agreement,
defining equation, recurrences, operator factorization, kernel laws) rather
than the long-running convergence experiments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analysis import norm_growth_audit, per_step_growth_allowance
from .continuous import KernelParams, eval_E, kernel_on_lattice
from .dirac import dirac_left, dirac_right, interior_slice
from .errors import ConfigurationError
from .explicit_fs import (
    build_explicit_fs,
    build_explicit_fs_spectral,
    discrete_laplacian,
    verify_defining_equation,
)
from .implicit_fs import build_implicit_fs, recurrence_residual, solve_helmholtz_step
from .lattice import (
    ComplexField3D,
    LatticeSpec,
    QuaternionField3D,
    delta_h,
    ell1_radius_grid,
    l1_norm_spatial,
)
from .spectral import dft_forward, dft_forward_direct, dft_inverse


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def _random_field(spec: LatticeSpec, rng: np.random.Generator) -> ComplexField3D:
    vals = rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape)
    return ComplexField3D(spec, vals)


def _check(suite: str, name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(suite, name, bool(passed), detail)


def suite_transforms() -> list[CheckResult]:
    out = []
    rng = np.random.default_rng(2024)
    for n_half in (2, 4):
        spec = LatticeSpec(h=0.5, tau=0.001, n_half=n_half, k_max=1)
        u = _random_field(spec, rng)
        back = dft_inverse(dft_forward(u))
        err = float(np.max(np.abs(back.values - u.values)))
        out.append(_check("transforms", f"round_trip_n{n_half}", err <= 1e-12,
                          f"max abs round-trip error {err:.3e}"))
        fast = dft_forward(u).values
        direct = dft_forward_direct(u).values
        err = float(np.max(np.abs(fast - direct)))
        out.append(_check("transforms", f"fft_vs_direct_n{n_half}", err <= 1e-12,
                          f"max abs fft-vs-direct error {err:.3e}"))
    spec = LatticeSpec(h=0.5, tau=0.001, n_half=4, k_max=1)
    U = dft_forward(delta_h(spec)).values
    expected = (2.0 * np.pi) ** -1.5
    err = float(np.max(np.abs(U - expected)))
    out.append(_check("transforms", "delta_is_flat", err <= 1e-14,
                      f"max deviation from (2 pi)^(-3/2): {err:.3e}"))
    return out


def suite_routes() -> list[CheckResult]:
    spec = LatticeSpec(h=0.5, tau=0.001, n_half=5, k_max=4)
    algebraic = build_explicit_fs(spec, boundary="zero")
    spectral = build_explicit_fs_spectral(spec)
    worst = 0.0
    for k in range(spec.k_max + 1):
        a, b = algebraic.slices[k].values, spectral.slices[k].values
        scale = max(float(np.max(np.abs(a))), 1e-300)
        worst = max(worst, float(np.max(np.abs(a - b))) / scale)
    return [_check("routes", "time_stepping_vs_spectral", worst <= 1e-10,
                   f"max relative slice difference {worst:.3e}")]


def suite_equation() -> list[CheckResult]:
    spec = LatticeSpec(h=0.5, tau=0.001, n_half=6, k_max=5)
    fs = build_explicit_fs(spec, boundary="zero")
    residual = verify_defining_equation(fs)
    scale = 1.0 / (spec.h**3 * spec.tau)
    rel = residual / scale
    return [_check("equation", "defining_equation_residual", rel <= 1e-9,
                   f"relative residual {rel:.3e} (absolute {residual:.3e})")]


def suite_cone() -> list[CheckResult]:
    spec = LatticeSpec(h=1.0, tau=0.01, n_half=8, k_max=8)
    fs = build_explicit_fs(spec, boundary="zero")
    radius = ell1_radius_grid(spec)
    worst = 0.0
    for k in range(spec.k_max + 1):
        outside = np.abs(fs.slices[k].values)[radius > max(k - 1, -1)]
        if outside.size:
            worst = max(worst, float(np.max(outside)))
    return [_check("cone", "support_inside_l1_cone", worst == 0.0,
                   f"max magnitude outside the cone {worst:.3e}")]


def suite_implicit() -> list[CheckResult]:
    out = []
    spec = LatticeSpec(h=0.5, tau=0.001, n_half=4, k_max=4)
    fs = build_implicit_fs(spec, method="spectral")
    worst = 0.0
    for k in range(spec.k_max):
        sup = float(np.max(np.abs(fs.slices[k].values))) if k else 1.0 / spec.h**3
        worst = max(worst, recurrence_residual(fs, k) / sup)
    out.append(_check("implicit", "recurrence_residual", worst <= 1e-10,
                      f"max residual relative to slice sup {worst:.3e}"))
    rhs = delta_h(spec)
    spectral = solve_helmholtz_step(rhs, method="spectral")
    dense = solve_helmholtz_step(rhs, method="direct_dense")
    fixed = solve_helmholtz_step(rhs, method="fixed_point")
    err_dense = float(np.max(np.abs(spectral.values - dense.values)))
    err_fixed = float(np.max(np.abs(spectral.values - fixed.values)))
    sup = float(np.max(np.abs(spectral.values)))
    out.append(_check("implicit", "solvers_agree",
                      err_dense <= 1e-9 * sup and err_fixed <= 1e-8 * sup,
                      f"dense diff {err_dense:.3e}, fixed-point diff {err_fixed:.3e}, "
                      f"solution sup {sup:.3e}"))
    return out


def suite_dirac() -> list[CheckResult]:
    spec = LatticeSpec(h=0.5, tau=0.001, n_half=4, k_max=1)
    rng = np.random.default_rng(7)
    inner = interior_slice()
    worst = 0.0
    for _ in range(3):
        u = QuaternionField3D(spec, tuple(_random_field(spec, rng) for _ in range(4)))
        lap = [discrete_laplacian(u[i]).values[inner] for i in range(4)]
        for action in (dirac_left, dirac_right):
            for first, second in (("-+", "+-"), ("+-", "-+")):
                w = action(action(u, first), second)
                for i in range(4):
                    diff = np.max(np.abs(w[i].values[inner] + lap[i]))
                    worst = max(worst, float(diff))
    return [_check("dirac", "factorization_is_negative_laplacian", worst <= 1e-12,
                   f"max interior deviation {worst:.3e}")]


def suite_kernel() -> list[CheckResult]:
    out = []
    rng = np.random.default_rng(11)
    worst = 0.0
    for t in (0.1, 1.0, 10.0):
        for _ in range(5):
            x = rng.standard_normal(3) * 3.0
            modulus = abs(eval_E(x, t))
            expected = (4.0 * np.pi * t) ** -1.5
            worst = max(worst, abs(modulus - expected) / expected)
    out.append(_check("kernel", "modulus_law", worst <= 1e-14,
                      f"max relative modulus deviation {worst:.3e}"))
    spec = LatticeSpec(h=0.5, tau=0.1, n_half=8, k_max=1)
    exact = kernel_on_lattice(spec, 1)
    distances = []
    for eps in (0.1, 0.01, 0.001):
        reg = kernel_on_lattice(spec, 1, KernelParams(eps))
        distances.append(l1_norm_spatial(ComplexField3D(spec, reg.values - exact.values)))
    ratios = [a / b for a, b in zip(distances, distances[1:])]
    out.append(_check("kernel", "regularization_distance_decreasing",
                      all(r >= 2.0 for r in ratios),
                      "distances " + ", ".join(f"{d:.3e}" for d in distances)))
    return out


def suite_growth() -> list[CheckResult]:
    out = []
    spec = LatticeSpec(h=0.5, tau=0.001, n_half=12, k_max=12)
    allowance = per_step_growth_allowance(spec) * (1.0 + 1e-9)
    for scheme, fs in (
        ("explicit", build_explicit_fs(spec, boundary="zero")),
        ("implicit", build_implicit_fs(spec)),
    ):
        rows = norm_growth_audit(fs)
        worst = 0.0
        for prev, cur in zip(rows[1:], rows[2:]):
            if prev.norm > 0.0:
                worst = max(worst, cur.norm / prev.norm)
        out.append(_check("growth", f"{scheme}_per_step_growth", worst <= allowance,
                          f"max per-step growth {worst:.12f}, allowance {allowance:.12f}"))
    return out


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "transforms": suite_transforms,
    "routes": suite_routes,
    "equation": suite_equation,
    "cone": suite_cone,
    "implicit": suite_implicit,
    "dirac": suite_dirac,
    "kernel": suite_kernel,
    "growth": suite_growth,
}


def run_suites(names: list[str] | None = None) -> list[CheckResult]:
    """Run the named suites ('all' or None runs everything) in fixed order."""
    if not names or names == ["all"]:
        selected = list(SUITES)
    else:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise ConfigurationError(
                f"unknown suite(s) {unknown}; available: {', '.join(SUITES)} or all"
            )
        selected = [n for n in SUITES if n in names]
    results = []
    for name in selected:
        results.extend(SUITES[name]())
    return results
