import numpy as np
import pytest

from cpmetric import (
    DensityState,
    StarAlgebraPresentation,
    SubspaceBasis,
    ad_unitary,
    commutant,
    common_representation,
    dist_to_scalars,
    dist_to_subspace,
    full_matrix_algebra,
    numerical_range,
    smallest_enclosing_circle,
    sqrt_fidelity,
)
from cpmetric.errors import DimensionMismatch, InvariantViolation
from cpmetric.linalg import dagger, matrix_units, operator_norm
from cpmetric.sampling import (
    complex_gaussian,
    haar_unitary,
    random_density_matrix,
    random_psd,
    random_unit_vector,
)

from oracles import chebyshev_radius_grid, commutant_bruteforce


def _span_projector(mats):
    stack = np.stack([m.reshape(-1) for m in mats])
    q, _ = np.linalg.qr(stack.conj().T)
    return q @ dagger(q)


class TestCommutant:
    def test_full_matrix_algebra_gives_scalars(self):
        basis = commutant(full_matrix_algebra(3))
        assert len(basis) == 1
        b = basis.basis[0]
        assert operator_norm(b - b[0, 0] * np.eye(3)) <= 1e-10

    def test_diagonal_generator_gives_diagonals(self):
        basis = commutant(StarAlgebraPresentation(2, [np.diag([1.0, 2.0])]))
        assert len(basis) == 2
        for b in basis.basis:
            assert abs(b[0, 1]) <= 1e-12 and abs(b[1, 0]) <= 1e-12

    def test_tensor_factor_against_bruteforce(self):
        rng = np.random.default_rng(21)
        gens = [np.kron(complex_gaussian(rng, 2, 2), np.eye(2)) for _ in range(3)]
        basis = commutant(StarAlgebraPresentation(4, gens))
        assert len(basis) == 4
        oracle = commutant_bruteforce(gens)
        assert len(oracle) == 4
        p1 = _span_projector(basis.basis)
        p2 = _span_projector(oracle)
        assert operator_norm(p1 - p2) <= 1e-8

    def test_residuals(self):
        rng = np.random.default_rng(22)
        gens = [complex_gaussian(rng, 3, 3)]
        basis = commutant(StarAlgebraPresentation(3, gens))
        for b in basis.basis:
            assert operator_norm(b @ gens[0] - gens[0] @ b) <= 1e-10


class TestSmallestEnclosingCircle:
    def test_two_points(self):
        center, radius, _ = smallest_enclosing_circle([1.0, -1.0])
        assert abs(center) <= 1e-12 and radius == pytest.approx(1.0)

    def test_matches_grid_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            pts = complex_gaussian(rng, 7)
            center, radius, _ = smallest_enclosing_circle(pts)
            r_oracle, _ = chebyshev_radius_grid(pts)
            assert radius == pytest.approx(r_oracle, abs=1e-5)
            assert np.max(np.abs(pts - center)) <= radius + 1e-10


class TestDistToScalars:
    def test_identity(self):
        res = dist_to_scalars(np.eye(3))
        assert res.distance == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(res.witness, np.eye(3))

    def test_two_phase_unitary(self):
        # [PAPER] example value: two phases e^{+-i pi/3} at distance sin(pi/3)
        theta = np.pi / 3
        t = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
        res = dist_to_scalars(t)
        assert res.distance == pytest.approx(np.sin(theta), abs=1e-12)
        assert res.witness[0, 0] == pytest.approx(np.cos(theta), abs=1e-9)
        # cross-check by grid search over the enclosing circle
        r_grid, _ = chebyshev_radius_grid(np.diag(t))
        assert res.distance == pytest.approx(r_grid, abs=1e-5)

    def test_random_normal_matches_spectrum_radius(self):
        rng = np.random.default_rng(24)
        for _ in range(10):
            n = int(rng.integers(2, 7))
            u = haar_unitary(n, rng)
            eigs = complex_gaussian(rng, n)
            t = (u * eigs) @ dagger(u)
            res = dist_to_scalars(t)
            r_grid, _ = chebyshev_radius_grid(eigs)
            assert res.distance == pytest.approx(r_grid, abs=1e-5)
            assert res.certified_gap <= 1e-7
            assert abs(operator_norm(t - res.witness) - res.distance) <= 1e-9

    def test_non_normal_certified(self):
        rng = np.random.default_rng(25)
        t = complex_gaussian(rng, 3, 3)
        res = dist_to_scalars(t)
        assert res.certified_gap <= 1e-6
        assert abs(operator_norm(t - res.witness) - res.distance) <= 1e-9


class TestDistToSubspace:
    def test_full_space_distance_zero(self):
        rng = np.random.default_rng(26)
        t = complex_gaussian(rng, 2, 2)
        units = [u for row in matrix_units(2) for u in row]
        res = dist_to_subspace(t, SubspaceBasis.span(units))
        assert res.distance <= 1e-9

    def test_scalar_span_consistency(self):
        rng = np.random.default_rng(27)
        for _ in range(5):
            t = complex_gaussian(rng, 3, 3)
            res_sub = dist_to_subspace(t, SubspaceBasis.span([np.eye(3)]))
            res_sc = dist_to_scalars(t)
            assert abs(res_sub.distance - res_sc.distance) <= 1e-6

    def test_bures_optimal_tuple_closed_form(self):
        # at the optimal common representation the commutant distance equals
        # sqrt(1 - fidelity^2)
        rng = np.random.default_rng(28)
        for k in range(5):
            rho = DensityState.from_matrix(random_density_matrix(2, rng))
            sigma = DensityState.from_matrix(random_density_matrix(2, rng))
            cr = common_representation(rho, sigma)
            u = ad_unitary(cr.x, cr.y)
            comm = commutant(StarAlgebraPresentation(4, cr.rep.generators()))
            res = dist_to_subspace(u, comm, seed=k)
            f = sqrt_fidelity(rho, sigma)
            assert res.distance == pytest.approx(np.sqrt(1 - f * f), abs=1e-6)

    def test_monotone_under_inclusion(self):
        rng = np.random.default_rng(29)
        t = complex_gaussian(rng, 4, 4)
        r1 = complex_gaussian(rng, 4, 4)
        r2 = complex_gaussian(rng, 4, 4)
        small = SubspaceBasis.span([np.eye(4), r1])
        big = SubspaceBasis.span([np.eye(4), r1, r2])
        d_small = dist_to_subspace(t, small, seed=1)
        d_big = dist_to_subspace(t, big, seed=1)
        assert d_big.distance <= d_small.distance + 1e-6

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            dist_to_subspace(np.eye(3), SubspaceBasis.span([np.eye(2)]))


class TestJohnsonAgreement:
    def test_unitary_over_full_algebra(self):
        rng = np.random.default_rng(30)
        for n in (2, 3):
            u = haar_unitary(n, rng)
            comm = commutant(full_matrix_algebra(n))
            d_sub = dist_to_subspace(u, comm, seed=n)
            d_sc = dist_to_scalars(u)
            assert abs(2 * d_sub.distance - 2 * d_sc.distance) <= 1e-6


class TestDifferenceBound:
    def test_unitary_vs_positive(self):
        rng = np.random.default_rng(31)
        for _ in range(30):
            k = int(rng.integers(2, 6))
            x = random_unit_vector(k, rng)
            y = random_unit_vector(k, rng)
            w = ad_unitary(x, y)
            p = random_psd(k, rng)
            bound = np.sqrt(max(0.0, 1.0 - np.real(np.vdot(x, y)) ** 2))
            assert operator_norm(w - p) >= bound - 1e-9


class TestNumericalRange:
    def test_identity(self):
        nr = numerical_range(np.eye(2), 64)
        assert np.allclose(nr.boundary_points, 1.0)
        assert nr.min_modulus == pytest.approx(1.0, abs=1e-10)

    def test_chord(self):
        theta = 0.8
        t = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
        nr = numerical_range(t, 256)
        assert nr.min_modulus == pytest.approx(np.cos(theta), abs=1e-10)
        assert nr.min_modulus_point.real == pytest.approx(np.cos(theta), abs=1e-8)
        assert abs(nr.min_modulus_point.imag) <= 1e-6

    def test_contains_zero(self):
        nr = numerical_range(np.diag([1.0, -1.0]), 64)
        assert nr.contains_zero
        assert nr.min_modulus == 0.0

    def test_samples_are_attained_values(self):
        rng = np.random.default_rng(32)
        t = complex_gaussian(rng, 3, 3)
        nr = numerical_range(t, 64)
        for z, v in zip(nr.boundary_points, nr.boundary_vectors):
            assert abs(complex(np.vdot(v, t @ v)) - z) <= 1e-10

    def test_min_modulus_below_all_samples(self):
        rng = np.random.default_rng(33)
        t = complex_gaussian(rng, 4, 4)
        nr = numerical_range(t, 64)
        for _ in range(200):
            v = random_unit_vector(4, rng)
            assert nr.min_modulus <= abs(complex(np.vdot(v, t @ v))) + 1e-8

    def test_angle_count_floor(self):
        with pytest.raises(InvariantViolation):
            numerical_range(np.eye(2), 8)


class TestSubspaceBasis:
    def test_gram_condition_guard(self):
        a = np.eye(2)
        b = np.eye(2) * (1.0 + 1e-12)
        with pytest.raises(InvariantViolation):
            SubspaceBasis(dimension=2, basis=[a, b])

    def test_span_orthonormalizes_dependent_families(self):
        basis = SubspaceBasis.span([np.eye(2), 2.0 * np.eye(2)])
        assert len(basis) == 1
