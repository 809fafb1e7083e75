import numpy as np
import pytest
from numpy.testing import assert_allclose

from pwkit import (DirectionSet, GridSpec, SampledFunction, ZeroFunction,
                   choose_r_max, fourier_on_rays, fourier_slice_defect,
                   integrate, make_bump, marginal_projection, moment,
                   plancherel_defect, pointwise_inversion,
                   projection_compatibility_defect, radial_fourier,
                   radon_transform)

G = GridSpec(2, 1.5, 257)
DIRS = DirectionSet.circle(64)


@pytest.fixture(scope="module")
def bump():
    return make_bump([0.0, 0.0], 0.6, 1.0, G)


@pytest.fixture(scope="module")
def bump_sino(bump):
    return radon_transform(bump, directions=DIRS)


class TestRadialFourier:
    def test_zero(self):
        from pwkit import default_offsets
        p = default_offsets(G)
        from pwkit import Sinogram
        s = Sinogram(p, DIRS, np.zeros((len(p), 64)))
        v = radial_fourier(s, np.linspace(0, 4, 9))
        assert np.all(v.values == 0)

    def test_zero_radius_row_is_mass(self, bump_sino):
        v = radial_fourier(bump_sino, np.linspace(0, 4, 9))
        assert_allclose(v.values[0], moment(bump_sino, 0), atol=1e-12)

    def test_centered_bump_radial_and_real(self, bump_sino):
        v = radial_fourier(bump_sino, np.linspace(0, 6, 13))
        assert np.abs(v.values.imag).max() < 1e-8
        spread = np.abs(v.values - v.values.mean(axis=1, keepdims=True)).max()
        assert spread < 1e-8

    def test_evenness_transfer(self, bump):
        f = make_bump([0.25, -0.1], 0.5, 1.0, G)
        s = radon_transform(f, directions=DIRS)
        radii = np.linspace(0, 5, 11)
        v = radial_fourier(s, radii)
        # F(-r)(omega) := F(r)(-omega) must match direct evaluation at -r
        wp = s.offset_weights()
        E = np.exp(-2j * np.pi * np.outer(-radii, s.offsets)) * wp[None, :]
        direct_neg = E @ s.values
        assert np.abs(v.negative_radius() - direct_neg).max() < 1e-8


class TestFourierSlice:
    def test_bump_defect(self, bump):
        assert fourier_slice_defect(bump, directions=DIRS) < 1e-5

    def test_zero(self):
        z = SampledFunction(G, np.zeros((257, 257)), support_radius=1.0)
        assert fourier_slice_defect(z, directions=DIRS) == 0

    def test_shifted_bump_defect(self):
        f = make_bump([0.35, 0.2], 0.45, 1.0, G)
        assert fourier_slice_defect(f, directions=DIRS) < 1e-5

    def test_direct_side_at_zero_is_mass(self, bump):
        vals = fourier_on_rays(bump, np.array([0.0]), DIRS)
        assert_allclose(vals[0], integrate(bump), atol=1e-12)


class TestPlancherel:
    def test_bump(self, bump):
        assert plancherel_defect(bump, directions=DIRS) < 1e-4

    def test_scale_invariance(self, bump):
        d1 = plancherel_defect(bump, directions=DIRS)
        d2 = plancherel_defect(bump * 3.7, directions=DIRS)
        assert d2 == pytest.approx(d1, rel=1e-6)

    def test_two_disjoint_bumps(self):
        f = make_bump([-0.6, 0.0], 0.35, 1.0, G) + make_bump([0.55, 0.2], 0.3, 1.0, G)
        assert plancherel_defect(f, directions=DIRS) < 1e-4

    def test_zero_function_rejected(self):
        z = SampledFunction(G, np.zeros((257, 257)), support_radius=1.0)
        with pytest.raises(ZeroFunction):
            plancherel_defect(z, directions=DIRS)

    def test_defect_decreases_with_resolution(self, bump):
        coarse = plancherel_defect(bump, directions=DIRS)
        g2 = GridSpec(2, 1.5, 513)
        f2 = make_bump([0.0, 0.0], 0.6, 1.0, g2)
        fine = plancherel_defect(f2, directions=DirectionSet.circle(128))
        assert coarse / fine >= 4.0

    def test_r_max_detection(self, bump_sino):
        r_max, tail = choose_r_max(bump_sino)
        assert 5 < r_max < 0.5 / (bump_sino.offsets[1] - bump_sino.offsets[0])
        assert tail >= 0


class TestPointwiseInversion:
    def test_center_value(self, bump):
        val = pointwise_inversion(bump, np.zeros(2))
        assert abs(val - 1.0) < 1e-3

    def test_outside_support(self, bump):
        val = pointwise_inversion(bump, np.array([1.4, 1.4]))
        assert abs(val) < 1e-3

    def test_imaginary_part_small(self, bump):
        ax = G.axis()
        pts = np.array([[ax[100], ax[140]], [ax[128], ax[90]]])
        vals = pointwise_inversion(bump, pts)
        assert np.abs(vals.imag).max() < 1e-6


class TestMarginalProjection:
    G3 = GridSpec(3, 1.5, 97)

    def test_product_bump_factorizes(self):
        g3 = self.G3
        ax = g3.axis()
        X, Y = np.meshgrid(ax, ax, indexing="ij")
        r2 = X**2 + Y**2
        b2 = np.zeros_like(X)
        ins = r2 < 0.5**2
        b2[ins] = np.exp(-r2[ins] / (0.25 - r2[ins]))
        prof = np.zeros(g3.points)
        insz = np.abs(ax) < 0.4
        prof[insz] = np.exp(-ax[insz] ** 2 / (0.16 - ax[insz] ** 2))
        prof /= np.trapezoid(prof, dx=g3.spacing)
        f3 = SampledFunction(g3, b2[:, :, None] * prof[None, None, :])
        proj = marginal_projection(f3)
        assert np.abs(proj.values - b2).max() < 1e-6

    def test_zero(self):
        f3 = SampledFunction(self.G3, np.zeros((97,) * 3), support_radius=1.0)
        proj = marginal_projection(f3)
        assert np.all(proj.values == 0)

    def test_radial_bump_matches_fiber_oracle(self):
        f3 = make_bump([0, 0, 0], 0.7, 1.0, self.G3)
        proj = marginal_projection(f3)
        ax = self.G3.axis()
        rng = np.random.default_rng(3)
        for _ in range(12):
            i, j = rng.integers(20, 77, 2)
            rho2 = ax[i] ** 2 + ax[j] ** 2
            if rho2 >= 0.7**2:
                assert proj.values[i, j] == 0
                continue
            # 1-D fiber integral of the analytic bump at fine resolution
            zmax = np.sqrt(0.7**2 - rho2)
            z = np.linspace(-zmax, zmax, 4001)[1:-1]
            r2 = rho2 + z**2
            vals = np.exp(-r2 / (0.7**2 - r2))
            oracle = np.trapezoid(vals, dx=z[1] - z[0])
            assert proj.values[i, j] == pytest.approx(oracle, abs=1e-6)

    def test_support_radius_not_increased(self):
        f3 = make_bump([0.1, 0.0, 0.2], 0.5, 1.0, self.G3)
        proj = marginal_projection(f3)
        assert proj.support_radius <= f3.support_radius

    def test_wrong_dimension_rejected(self):
        from pwkit import UnsupportedPair
        f2 = make_bump([0, 0], 0.5, 1.0, G)
        with pytest.raises(UnsupportedPair):
            marginal_projection(f2)


class TestProjectionCompatibility:
    G3 = GridSpec(3, 1.5, 97)

    def test_centered_bump(self):
        f3 = make_bump([0, 0, 0], 0.65, 1.0, self.G3)
        assert projection_compatibility_defect(f3) < 1e-5

    def test_zero(self):
        f3 = SampledFunction(self.G3, np.zeros((97,) * 3), support_radius=1.0)
        assert projection_compatibility_defect(f3) == 0

    def test_translated_in_plane(self):
        f3 = make_bump([0.25, -0.15, 0.0], 0.6, 1.0, self.G3)
        assert projection_compatibility_defect(f3) < 1e-5
