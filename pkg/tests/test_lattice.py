import numpy as np
import pytest

from schrodfs import (
    ComplexField3D,
    ConfigurationError,
    LatticeSpec,
    NonFiniteFieldError,
    QuaternionField3D,
    delta_h,
    delta_tau,
    l1_norm_spacetime,
    l1_norm_spatial,
    restrict,
    window_volume,
    zero_field,
)
from schrodfs.lattice import ell1_radius_grid

from conftest import rand_field


class TestLatticeSpec:
    def test_basic_properties(self):
        spec = LatticeSpec(h=0.5, tau=0.001, n_half=4, k_max=6)
        assert spec.n_points == 9
        assert spec.shape == (9, 9, 9)
        assert spec.origin_index == (4, 4, 4)
        assert spec.cfl_ratio == pytest.approx(0.004, abs=0)
        assert spec.cfl_ratio_squared == pytest.approx(0.001**2 / 0.25, abs=0)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(h=0.0, tau=0.001, n_half=4, k_max=4),
            dict(h=-1.0, tau=0.001, n_half=4, k_max=4),
            dict(h=float("nan"), tau=0.001, n_half=4, k_max=4),
            dict(h=0.5, tau=0.0, n_half=4, k_max=4),
            dict(h=0.5, tau=-0.1, n_half=4, k_max=4),
            dict(h=0.5, tau=0.001, n_half=0, k_max=4),
            dict(h=0.5, tau=0.001, n_half=4, k_max=0),
            dict(h=0.5, tau=0.001, n_half=2.5, k_max=4),
        ],
    )
    def test_invalid_parameters_rejected(self, kwargs):
        with pytest.raises(ConfigurationError):
            LatticeSpec(**kwargs)

    def test_axis_coords(self):
        spec = LatticeSpec(h=0.5, tau=0.001, n_half=2, k_max=1)
        assert np.array_equal(spec.axis_indices(), [-2, -1, 0, 1, 2])
        assert np.array_equal(spec.axis_coords(), [-1.0, -0.5, 0.0, 0.5, 1.0])

    def test_coordinate_grids_indexing(self):
        spec = LatticeSpec(h=1.0, tau=0.01, n_half=1, k_max=1)
        x1, x2, x3 = spec.coordinate_grids()
        assert x1[2, 0, 0] == 1.0 and x1[0, 1, 2] == -1.0
        assert x2[0, 2, 0] == 1.0
        assert x3[0, 0, 2] == 1.0

    def test_window_volume(self):
        spec = LatticeSpec(h=0.5, tau=0.001, n_half=4, k_max=1)
        assert window_volume(spec) == pytest.approx(9**3 * 0.125)

    def test_ell1_radius_grid(self):
        spec = LatticeSpec(h=1.0, tau=0.01, n_half=2, k_max=1)
        r = ell1_radius_grid(spec)
        assert r[2, 2, 2] == 0
        assert r[0, 0, 0] == 6
        assert r[2, 2, 3] == 1
        assert r[4, 3, 2] == 3


class TestComplexField3D:
    def test_shape_mismatch_rejected(self, small_spec):
        with pytest.raises(ConfigurationError):
            ComplexField3D(small_spec, np.zeros((3, 3, 3), dtype=complex))

    def test_nonfinite_rejected(self, small_spec):
        vals = np.zeros(small_spec.shape, dtype=complex)
        vals[0, 0, 0] = np.nan
        with pytest.raises(NonFiniteFieldError):
            ComplexField3D(small_spec, vals)
        vals[0, 0, 0] = np.inf * 1j
        with pytest.raises(NonFiniteFieldError):
            ComplexField3D(small_spec, vals)

    def test_values_are_immutable_copies(self, small_spec):
        src = np.zeros(small_spec.shape, dtype=complex)
        f = ComplexField3D(small_spec, src)
        src[0, 0, 0] = 5.0  # mutating the source must not leak in
        assert f.values[0, 0, 0] == 0.0
        with pytest.raises(ValueError):
            f.values[0, 0, 0] = 1.0

    def test_arithmetic(self, small_spec):
        a = rand_field(small_spec, 1)
        b = rand_field(small_spec, 2)
        assert np.allclose((a + b).values, a.values + b.values)
        assert np.allclose((a - b).values, a.values - b.values)
        assert np.allclose((2j * a).values, 2j * a.values)
        assert np.allclose((a * 2j).values, 2j * a.values)
        assert np.allclose((-a).values, -a.values)

    def test_origin_value(self, small_spec):
        f = delta_h(small_spec)
        assert f.origin_value == pytest.approx(1.0 / 0.5**3)


class TestQuaternionField3D:
    def test_needs_four_components(self, small_spec):
        with pytest.raises(ConfigurationError):
            QuaternionField3D(small_spec, (zero_field(small_spec),) * 3)

    def test_components_share_spec(self, small_spec):
        other = LatticeSpec(h=1.0, tau=0.001, n_half=4, k_max=4)
        comps = [zero_field(small_spec)] * 3 + [zero_field(other)]
        with pytest.raises(ConfigurationError):
            QuaternionField3D(small_spec, tuple(comps))


class TestDeltas:
    def test_delta_h_values(self, small_spec):
        d = delta_h(small_spec)
        assert d.values[small_spec.origin_index] == 8.0  # 1/h^3 with h = 0.5
        assert np.count_nonzero(d.values) == 1

    def test_delta_h_unit_l1_norm(self, small_spec):
        assert l1_norm_spatial(delta_h(small_spec)) == 1.0

    def test_delta_tau(self, small_spec):
        assert delta_tau(small_spec, 0) == 1.0 / 0.001
        assert delta_tau(small_spec, 1) == 0.0
        assert delta_tau(small_spec, 7) == 0.0
        with pytest.raises(ConfigurationError):
            delta_tau(small_spec, -1)


class TestRestrictAndNorms:
    def test_restrict_samples_pointwise(self):
        spec = LatticeSpec(h=0.5, tau=0.01, n_half=1, k_max=2)

        def f(x, t):
            return complex(x[0] + 10 * x[1] + 100 * x[2] + 1000 * t)

        field = restrict(f, spec, 2)
        assert field.values[2, 1, 0] == pytest.approx(0.5 + 0.0 - 50.0 + 20.0)
        assert field.values[1, 1, 1] == pytest.approx(20.0)

    def test_l1_norm_spatial_hand_value(self):
        spec = LatticeSpec(h=2.0, tau=0.01, n_half=1, k_max=1)
        vals = np.zeros(spec.shape, dtype=complex)
        vals[0, 0, 0] = 3.0 + 4.0j  # |.| = 5
        vals[1, 1, 1] = -2.0
        f = ComplexField3D(spec, vals)
        assert l1_norm_spatial(f) == pytest.approx(7.0 * 8.0)

    def test_l1_norm_spacetime_weighting(self, small_spec):
        ones = ComplexField3D(small_spec, np.ones(small_spec.shape, dtype=complex))
        slices = [zero_field(small_spec), ones, ones, ones, ones]
        per_slice = 9**3 * 0.125
        assert l1_norm_spacetime(slices, 1, 4) == pytest.approx(0.001 * 4 * per_slice)
        assert l1_norm_spacetime(slices, 2, 2) == pytest.approx(0.001 * per_slice)

    def test_l1_norm_spacetime_range_validation(self, small_spec):
        slices = [zero_field(small_spec)] * 5
        with pytest.raises(ConfigurationError):
            l1_norm_spacetime(slices, 0, 3)
        with pytest.raises(ConfigurationError):
            l1_norm_spacetime(slices, 1, 5)
        with pytest.raises(ConfigurationError):
            l1_norm_spacetime(slices, 3, 2)
