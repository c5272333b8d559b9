import numpy as np
import pytest

from schrodfs import (
    ComplexField3D,
    ConfigurationError,
    FundamentalSolutionSeries,
    LatticeSpec,
    SolverConvergenceError,
    build_implicit_fs,
    delta_h,
    dft_forward,
    l1_norm_spatial,
    per_step_growth_allowance,
    solve_helmholtz_step,
    verify_decay,
    zero_field,
)
from schrodfs.implicit_fs import (
    DENSE_SIZE_CAP,
    helmholtz_apply,
    helmholtz_matrix,
    recurrence_residual,
)

from conftest import rand_field

TWO_PI_POW = (2.0 * np.pi) ** 1.5


class TestHelmholtzOperator:
    def test_matrix_row_structure(self):
        spec = LatticeSpec(h=1.0, tau=0.01, n_half=1, k_max=1)
        A = helmholtz_matrix(spec)
        n = spec.n_points
        center = (n * n + n + 1) * 1  # lexicographic index of (1,1,1)
        row = A[center]
        assert row[center] == pytest.approx(1.0 + 0.06j)
        neighbor = center + 1  # (1,1,2)
        assert row[neighbor] == pytest.approx(-0.01j)
        assert np.count_nonzero(np.abs(row) > 1e-15) == 7

    def test_matrix_matches_stencil_apply(self, small_spec):
        u = rand_field(small_spec, 41)
        via_matrix = helmholtz_matrix(small_spec) @ u.values.reshape(-1)
        via_stencil = helmholtz_apply(u).values.reshape(-1)
        assert float(np.max(np.abs(via_matrix - via_stencil))) <= 1e-12 * float(
            np.max(np.abs(via_stencil))
        )


class TestSolvers:
    def test_zero_rhs_gives_zero(self, small_spec):
        for method in ("spectral", "fixed_point", "direct_dense"):
            v = solve_helmholtz_step(zero_field(small_spec), method)
            assert float(np.max(np.abs(v.values))) == 0.0

    @pytest.mark.parametrize("method", ["spectral", "fixed_point", "direct_dense"])
    def test_recovers_constructed_solution(self, small_spec, method):
        w = rand_field(small_spec, 42)
        f = helmholtz_apply(w)
        v = solve_helmholtz_step(f, method)
        scale = float(np.max(np.abs(w.values)))
        assert float(np.max(np.abs(v.values - w.values))) <= 1e-10 * scale

    def test_dual_solver_on_delta(self):
        spec = LatticeSpec(h=1.0, tau=0.01, n_half=4, k_max=1)
        rhs = delta_h(spec)
        spectral = solve_helmholtz_step(rhs, "spectral")
        dense = solve_helmholtz_step(rhs, "direct_dense")
        assert float(np.max(np.abs(spectral.values - dense.values))) <= 1e-9

    def test_pairwise_agreement_on_random_rhs(self, small_spec):
        f = rand_field(small_spec, 43)
        sols = {m: solve_helmholtz_step(f, m).values
                for m in ("spectral", "fixed_point", "direct_dense")}
        pairs = [("spectral", "fixed_point"), ("spectral", "direct_dense"),
                 ("fixed_point", "direct_dense")]
        for a, b in pairs:
            assert float(np.max(np.abs(sols[a] - sols[b]))) <= 1e-8

    def test_residual_contract(self, small_spec):
        f = rand_field(small_spec, 44)
        for method in ("spectral", "fixed_point", "direct_dense"):
            v = solve_helmholtz_step(f, method)
            residual = float(np.max(np.abs(helmholtz_apply(v).values - f.values)))
            assert residual <= 1e-10 * float(np.max(np.abs(f.values)))

    def test_dense_size_cap(self):
        spec = LatticeSpec(h=0.5, tau=0.001, n_half=8, k_max=1)
        assert spec.n_points**3 > DENSE_SIZE_CAP
        with pytest.raises(ConfigurationError):
            solve_helmholtz_step(delta_h(spec), "direct_dense")

    def test_fixed_point_needs_contraction(self):
        spec = LatticeSpec(h=0.5, tau=0.05, n_half=2, k_max=1)  # 12r = 2.4
        with pytest.raises(ConfigurationError):
            solve_helmholtz_step(delta_h(spec), "fixed_point")

    def test_fixed_point_nonconvergence_carries_residual(self, small_spec):
        with pytest.raises(SolverConvergenceError) as info:
            solve_helmholtz_step(rand_field(small_spec, 45), "fixed_point", tol=1e-30)
        assert info.value.residual > 0.0
        assert info.value.iterations > 0

    def test_unknown_method_rejected(self, small_spec):
        with pytest.raises(ConfigurationError):
            solve_helmholtz_step(delta_h(small_spec), "multigrid")


class TestImplicitSeries:
    def test_slice_zero_is_zero(self, small_spec):
        fs = build_implicit_fs(small_spec)
        assert np.all(fs[0].values == 0)
        assert fs.scheme_tag == "implicit" and fs.boundary == "periodic"

    def test_recurrence_residuals(self):
        spec = LatticeSpec(h=0.5, tau=0.001, n_half=4, k_max=6)
        fs = build_implicit_fs(spec)
        for k in range(spec.k_max):
            rhs_sup = (
                1.0 / spec.h**3 if k == 0 else float(np.max(np.abs(fs[k].values)))
            )
            assert recurrence_residual(fs, k) <= 1e-10 * rhs_sup

    def test_zero_frequency_mode_is_invariant(self):
        # d^2(0) = 0, so every solve leaves the zero mode untouched
        spec = LatticeSpec(h=0.5, tau=0.001, n_half=3, k_max=4)
        fs = build_implicit_fs(spec)
        c = spec.origin_index
        expected = 1.0 / TWO_PI_POW
        for k in range(1, spec.k_max + 1):
            mode0 = dft_forward(fs[k]).values[c]
            assert mode0 == pytest.approx(expected, rel=1e-12)

    def test_spectral_closed_form_per_mode(self):
        spec = LatticeSpec(h=0.5, tau=0.002, n_half=3, k_max=4)
        fs = build_implicit_fs(spec)
        from schrodfs import symbol_grid

        d2 = symbol_grid(spec)
        base = dft_forward(delta_h(spec)).values
        for k in (1, 2, 4):
            expected = base / (1.0 + 1j * spec.tau * d2) ** k
            measured = dft_forward(fs[k]).values
            assert float(np.max(np.abs(measured - expected))) <= 1e-13

    def test_modes_are_nonexpansive(self):
        spec = LatticeSpec(h=0.5, tau=0.002, n_half=3, k_max=5)
        fs = build_implicit_fs(spec)
        prev = np.abs(dft_forward(fs[1]).values)
        for k in range(2, spec.k_max + 1):
            cur = np.abs(dft_forward(fs[k]).values)
            assert np.all(cur <= prev * (1.0 + 1e-12))
            prev = cur

    def test_dense_route_matches_spectral_series(self):
        spec = LatticeSpec(h=1.0, tau=0.01, n_half=4, k_max=3)
        via_spectral = build_implicit_fs(spec, method="spectral")
        via_dense = build_implicit_fs(spec, method="direct_dense")
        for k in range(spec.k_max + 1):
            diff = float(np.max(np.abs(via_spectral[k].values - via_dense[k].values)))
            assert diff <= 1e-9

    def test_l1_growth_within_allowance(self):
        spec = LatticeSpec(h=0.5, tau=0.001, n_half=6, k_max=12)
        fs = build_implicit_fs(spec)
        allowance = per_step_growth_allowance(spec) * (1.0 + 1e-9)
        norms = [l1_norm_spatial(fs[k]) for k in range(spec.k_max + 1)]
        for k in range(1, spec.k_max):
            assert norms[k + 1] <= allowance * norms[k]
        # the first solve is already allowed to exceed 1: ||slice 1|| <= allowance
        assert norms[1] <= allowance


class TestDecayReport:
    def test_boundary_ratio_and_positive_rates(self):
        spec = LatticeSpec(h=0.5, tau=0.001, n_half=12, k_max=3)
        report = verify_decay(build_implicit_fs(spec))
        assert len(report.per_slice) == spec.k_max
        for row in report.per_slice:
            assert not row.skipped
            assert row.rate > 0.0
            assert row.samples_used >= 3
        assert report.per_slice[0].boundary_origin_ratio < 1e-6
        assert report.max_boundary_ratio < 1e-6

    def test_zero_series_all_skipped(self, small_spec):
        slices = tuple(zero_field(small_spec) for _ in range(small_spec.k_max + 1))
        fs = FundamentalSolutionSeries(small_spec, slices, "implicit", "periodic")
        report = verify_decay(fs)
        assert all(row.skipped for row in report.per_slice)
        assert report.max_boundary_ratio == 0.0

    def test_requires_implicit_series(self):
        spec = LatticeSpec(h=0.5, tau=0.001, n_half=4, k_max=2)
        from schrodfs import build_explicit_fs

        with pytest.raises(ConfigurationError):
            verify_decay(build_explicit_fs(spec))
