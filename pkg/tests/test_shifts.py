"""Shift distributions: coefficients, transport and TV distances, sampling."""

import numpy as np
import pytest

from simlab.shifts import (
    Discrete,
    FourierDensity,
    GridDensity,
    discretize,
    fourier_coeff,
    in_class,
    raised_cosine_density,
    sample,
    shift_from_json,
    shift_to_json,
    sobolev_radius,
    tv_density,
    uniform_density,
    wasserstein1,
)


class TestInvariants:
    def test_discrete_weights_must_sum(self):
        with pytest.raises(ValueError):
            Discrete(np.array([0.1, 0.2]), np.array([0.5, 0.6]))

    def test_discrete_positions_in_range(self):
        with pytest.raises(ValueError):
            Discrete(np.array([1.0]), np.array([1.0]))

    def test_grid_mass_checked(self):
        with pytest.raises(ValueError):
            GridDensity(np.full(101, 2.0))

    def test_grid_nonnegative(self):
        vals = np.ones(101)
        vals[3] = -0.5
        with pytest.raises(ValueError):
            GridDensity(vals)

    def test_fourier_c0(self):
        with pytest.raises(ValueError):
            FourierDensity(np.array([0.2, 2.0, 0.2], dtype=complex))

    def test_fourier_hermitian(self):
        with pytest.raises(ValueError):
            FourierDensity(np.array([0.2j, 1.0, 0.2j], dtype=complex))

    def test_fourier_negative_reconstruction(self):
        with pytest.raises(ValueError):
            FourierDensity(np.array([0.9, 1.0, 0.9], dtype=complex))

    def test_json_round_trip(self):
        for g in (
            Discrete(np.array([0.1, 0.6]), np.array([0.3, 0.7])),
            raised_cosine_density(64),
            FourierDensity(np.array([0.25, 1.0, 0.25], dtype=complex)),
        ):
            back = shift_from_json(shift_to_json(g))
            assert type(back) is type(g)


class TestFourierCoeff:
    def test_uniform_coefficients(self):
        u = uniform_density(256)
        assert fourier_coeff(u, 0) == pytest.approx(1.0, abs=1e-12)
        for k in (1, 2, 5):
            assert abs(fourier_coeff(u, k)) < 1e-12

    def test_point_mass_all_ones(self):
        d = Discrete.point_mass(0.0)
        for k in range(-4, 5):
            assert fourier_coeff(d, k) == pytest.approx(1.0, abs=1e-15)

    def test_raised_cosine_first_coeff(self):
        rc = raised_cosine_density()
        assert fourier_coeff(rc, 1) == pytest.approx(0.5, abs=1e-10)
        assert fourier_coeff(rc, -1) == pytest.approx(0.5, abs=1e-10)

    def test_grid_agrees_with_quantization_in_the_limit(self):
        rc = raised_cosine_density()
        target = fourier_coeff(rc, 1)
        errors = []
        for atoms in (8, 32, 128):
            approx = fourier_coeff(discretize(rc, atoms), 1)
            errors.append(abs(approx - target))
        assert errors[0] > errors[1] > errors[2]


class TestWasserstein:
    def test_point_masses(self):
        a, b = Discrete.point_mass(0.2), Discrete.point_mass(0.7)
        assert wasserstein1(a, b) == pytest.approx(0.5, abs=1e-12)

    def test_self_distance(self):
        rc = raised_cosine_density()
        assert wasserstein1(rc, rc) == 0.0

    def test_uniform_vs_center(self):
        assert wasserstein1(uniform_density(), Discrete.point_mass(0.5)) == (
            pytest.approx(0.25, abs=1e-6)
        )

    def test_bounded_by_one(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            k = int(rng.integers(1, 5))
            g = Discrete(rng.uniform(0, 1, k), rng.dirichlet(np.ones(k)))
            h = raised_cosine_density(256, rng.uniform(0, 1))
            assert wasserstein1(g, h) <= 1.0

    def test_rejects_invalid_fourier_density(self):
        bad = FourierDensity(np.array([0.9, 1.0, 0.9], dtype=complex), validate=False)
        with pytest.raises(ValueError):
            wasserstein1(bad, uniform_density())


class TestTotalVariation:
    def test_self(self):
        rc = raised_cosine_density()
        assert tv_density(rc, rc) == 0.0

    def test_disjoint_atoms(self):
        a = Discrete(np.array([0.1]), np.array([1.0]))
        b = Discrete(np.array([0.9]), np.array([1.0]))
        assert tv_density(a, b) == pytest.approx(1.0, abs=1e-15)

    def test_raised_cosine_vs_uniform(self):
        # (1/2) int |cos(2 pi x)| dx = 1/pi
        val = tv_density(raised_cosine_density(), uniform_density())
        assert val == pytest.approx(1.0 / np.pi, abs=1e-5)

    def test_symmetry_and_positivity(self):
        rng = np.random.default_rng(1)
        t = np.linspace(0, 1, 257)
        for _ in range(5):
            g = GridDensity(1.0 + rng.uniform(0, 0.9) * np.cos(2 * np.pi * t))
            h = GridDensity(1.0 + rng.uniform(0, 0.9) * np.sin(2 * np.pi * t) ** 2 * 0)
            assert tv_density(g, h) == tv_density(h, g) >= 0.0

    def test_transport_dominated_by_tv_dominated_by_l2(self):
        # W1 <= d_TV and d_TV <= ||g - h||_{L2} / 2 on grid densities
        rng = np.random.default_rng(2)
        t = np.linspace(0, 1, 513)
        for _ in range(20):
            a1, a2 = rng.uniform(0, 0.6, 2)
            p1, p2 = rng.uniform(0, 1, 2)
            g = GridDensity(1.0 + a1 * np.cos(2 * np.pi * (t - p1)))
            h = GridDensity(1.0 + a2 * np.cos(2 * np.pi * (t - p2)))
            tv = tv_density(g, h)
            w1 = wasserstein1(g, h)
            l2 = np.sqrt(np.trapezoid((g.values - h.values) ** 2, t))
            assert w1 <= tv + 1e-9
            assert tv <= l2 / 2.0 + 1e-9


class TestSmoothnessRadius:
    def test_uniform_radius_zero(self):
        assert sobolev_radius(uniform_density(), 1.0) == pytest.approx(0.0, abs=1e-10)

    def test_raised_cosine(self):
        # two symmetric coefficients of modulus 1/2: sqrt(2 (1/2)^2)
        assert sobolev_radius(raised_cosine_density(), 1.0) == pytest.approx(
            2.0**-0.5, abs=1e-8
        )

    def test_power_law_partial_sum(self):
        k_max = 12
        beta = 2.0
        ks = np.arange(-k_max, k_max + 1)
        coeffs = np.zeros(ks.size, dtype=complex)
        coeffs[ks != 0] = 0.2 * np.abs(ks[ks != 0]).astype(float) ** (-beta)
        coeffs[k_max] = 1.0
        g = FourierDensity(coeffs)
        expected = np.sqrt(
            2.0 * np.sum(np.arange(1.0, k_max + 1) ** 3 * (0.2 * np.arange(1.0, k_max + 1) ** -2.0) ** 2)
        )
        assert sobolev_radius(g, 1.5) == pytest.approx(expected, rel=1e-12)

    def test_in_class(self):
        rc = raised_cosine_density()
        assert in_class(rc, 1.0, 1.0)
        assert not in_class(rc, 1.0, 0.5)

    def test_atom_rejected(self):
        with pytest.raises(TypeError):
            sobolev_radius(Discrete.point_mass(0.5), 1.0)


class TestSampling:
    def test_point_mass_draws(self):
        rng = np.random.default_rng(0)
        draws = sample(Discrete.point_mass(0.3), 50, rng)
        assert np.all(draws == 0.3)

    def test_uniform_mean(self):
        rng = np.random.default_rng(1)
        n = 10**5
        draws = sample(uniform_density(), n, rng)
        band = 3.0 * (1.0 / np.sqrt(12.0)) / np.sqrt(n)
        assert abs(draws.mean() - 0.5) < band

    def test_empirical_first_coefficient(self):
        rng = np.random.default_rng(2)
        g = raised_cosine_density()
        n = 200_000
        draws = sample(g, n, rng)
        empirical = np.mean(np.exp(-2j * np.pi * draws))
        assert abs(empirical - fourier_coeff(g, 1)) < 3.0 / np.sqrt(n)

    def test_deterministic_given_state(self):
        g = raised_cosine_density()
        a = sample(g, 10, np.random.default_rng(5))
        b = sample(g, 10, np.random.default_rng(5))
        assert np.array_equal(a, b)

    def test_count_validated(self):
        with pytest.raises(ValueError):
            sample(uniform_density(), 0, np.random.default_rng(0))


class TestDiscretize:
    def test_point_mass_fixed(self):
        d = discretize(Discrete.point_mass(0.4), 7)
        assert d.positions.tolist() == [0.4]
        assert d.weights.sum() == pytest.approx(1.0, abs=1e-12)
        assert d.weights.size == 1

    def test_uniform_quantiles(self):
        d = discretize(uniform_density(), 4)
        assert np.allclose(d.positions, [0.125, 0.375, 0.625, 0.875], atol=1e-9)
        assert np.allclose(d.weights, 0.25)

    def test_transport_error_rate(self):
        for j in (2, 5, 10):
            err = wasserstein1(uniform_density(), discretize(uniform_density(), j))
            assert err == pytest.approx(1.0 / (4.0 * j), abs=1e-6)

    def test_error_decreases(self):
        g = raised_cosine_density()
        errs = [wasserstein1(g, discretize(g, j)) for j in (4, 16, 64)]
        assert errs[0] > errs[1] > errs[2]
