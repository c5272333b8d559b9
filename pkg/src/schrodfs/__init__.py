"""Discrete fundamental solutions of the backward Schroedinger operator.

Two independent constructions (time stepping and spectral) of the explicit
scheme's fundamental solution on a truncated space-time lattice, the implicit
counterpart built from per-step resolvent solves, the continuous kernel they
approximate, l1 error measurements against that kernel with closed-form
bounds, and first-order four-component difference operators whose
composition factorizes the discrete Laplacian.
"""

from .analysis import (
    CFL_LIMIT,
    ErrorReport,
    NormAuditRow,
    PerSliceError,
    SweepResult,
    build_series,
    check_stability,
    closed_form_bound,
    convergence_sweep,
    error_bounded_interval,
    horizon_steps,
    norm_growth_audit,
    per_step_growth_allowance,
)
from .continuous import (
    KernelParams,
    eval_E,
    eval_E_reg,
    kernel_on_lattice,
    restricted_kernel_l1,
)
from .dirac import dirac_left, dirac_right, forward_diff
from .errors import (
    ConfigurationError,
    EvaluationDomainError,
    NonFiniteFieldError,
    NumericalError,
    SolverConvergenceError,
    StabilityError,
)
from .explicit_fs import (
    FundamentalSolutionSeries,
    build_explicit_fs,
    build_explicit_fs_spectral,
    discrete_laplacian,
    explicit_step,
    mode_modulus_growth,
    verify_defining_equation,
)
from .implicit_fs import (
    DecayReport,
    SliceDecay,
    build_implicit_fs,
    solve_helmholtz_step,
    verify_decay,
)
from .lattice import (
    ComplexField3D,
    LatticeSpec,
    QuaternionField3D,
    delta_h,
    delta_tau,
    l1_norm_spacetime,
    l1_norm_spatial,
    restrict,
    window_volume,
    zero_field,
)
from .reporting import (
    AUDIT_COLUMNS,
    DECAY_COLUMNS,
    SWEEP_COLUMNS,
    figure_path_for,
    format_float,
    load_series_json,
    render_audit_figure,
    render_decay_figure,
    render_sweep_figure,
    write_audit_csv,
    write_decay_csv,
    write_series_json,
    write_sweep_csv,
)
from .spectral import (
    SpectrumField3D,
    apply_symbol,
    dft_forward,
    dft_inverse,
    frequency_axis,
    symbol_d2,
    symbol_grid,
)

__version__ = "0.1.0"

__all__ = [
    "AUDIT_COLUMNS",
    "CFL_LIMIT",
    "ComplexField3D",
    "ConfigurationError",
    "DECAY_COLUMNS",
    "DecayReport",
    "ErrorReport",
    "EvaluationDomainError",
    "FundamentalSolutionSeries",
    "KernelParams",
    "LatticeSpec",
    "NonFiniteFieldError",
    "NormAuditRow",
    "NumericalError",
    "PerSliceError",
    "QuaternionField3D",
    "SliceDecay",
    "SWEEP_COLUMNS",
    "SolverConvergenceError",
    "SpectrumField3D",
    "StabilityError",
    "SweepResult",
    "apply_symbol",
    "build_explicit_fs",
    "build_explicit_fs_spectral",
    "build_implicit_fs",
    "build_series",
    "check_stability",
    "closed_form_bound",
    "convergence_sweep",
    "delta_h",
    "delta_tau",
    "dft_forward",
    "dft_inverse",
    "dirac_left",
    "dirac_right",
    "discrete_laplacian",
    "error_bounded_interval",
    "eval_E",
    "eval_E_reg",
    "explicit_step",
    "figure_path_for",
    "format_float",
    "forward_diff",
    "frequency_axis",
    "horizon_steps",
    "kernel_on_lattice",
    "l1_norm_spacetime",
    "l1_norm_spatial",
    "load_series_json",
    "mode_modulus_growth",
    "norm_growth_audit",
    "per_step_growth_allowance",
    "render_audit_figure",
    "render_decay_figure",
    "render_sweep_figure",
    "restrict",
    "restricted_kernel_l1",
    "solve_helmholtz_step",
    "symbol_d2",
    "symbol_grid",
    "verify_decay",
    "verify_defining_equation",
    "window_volume",
    "write_audit_csv",
    "write_decay_csv",
    "write_series_json",
    "write_sweep_csv",
    "zero_field",
]
