import numpy as np
import pytest

from cpmetric import (
    DensityState,
    StateDistanceReport,
    bures_states,
    functional_cb_distance,
    sqrt_fidelity,
    state_distance_report,
)
from cpmetric.errors import DimensionMismatch, InvariantViolation
from cpmetric.linalg import dagger
from cpmetric.sampling import haar_unitary, random_density_matrix, random_unit_vector

from oracles import purification_overlap_search, trace_norm_ascent

SQRT2 = np.sqrt(2.0)


def _state(mat):
    return DensityState.from_matrix(mat)


def _qubit_closed_form(rho, sigma):
    # two-dimensional closed form: F^2 = tr(rho sigma) + 2 sqrt(det rho det sigma)
    val = np.trace(rho @ sigma).real + 2.0 * np.sqrt(
        max(np.linalg.det(rho).real, 0.0) * max(np.linalg.det(sigma).real, 0.0))
    return np.sqrt(max(val, 0.0))


class TestDensityState:
    def test_accepts_valid(self):
        s = _state(np.diag([0.5, 0.5]))
        assert s.dimension == 2

    def test_rejects_wrong_trace(self):
        with pytest.raises(InvariantViolation):
            _state(np.diag([0.6, 0.6]))

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvariantViolation):
            _state(np.array([[0.5, 0.5], [0.0, 0.5]]))

    def test_rejects_negative(self):
        with pytest.raises(InvariantViolation):
            _state(np.diag([1.2, -0.2]))


class TestSqrtFidelity:
    def test_self_overlap_is_one(self):
        rng = np.random.default_rng(1)
        rho = _state(random_density_matrix(3, rng))
        assert sqrt_fidelity(rho, rho) == pytest.approx(1.0, abs=1e-10)

    def test_orthogonal_pure_states(self):
        rho = _state(np.diag([1.0, 0.0]))
        sigma = _state(np.diag([0.0, 1.0]))
        assert sqrt_fidelity(rho, sigma) == pytest.approx(0.0, abs=1e-12)

    def test_pure_vs_maximally_mixed(self):
        # frozen from the purification search oracle: value 1/sqrt(2)
        rho = _state(np.diag([1.0, 0.0]))
        sigma = _state(np.diag([0.5, 0.5]))
        value = sqrt_fidelity(rho, sigma)
        assert value == pytest.approx(1.0 / SQRT2, abs=1e-12)
        rng = np.random.default_rng(2)
        oracle = purification_overlap_search(rho.rho, sigma.rho, rng,
                                             restarts=40, steps=80)
        assert value == pytest.approx(oracle, abs=1e-8)

    def test_random_pairs_against_purification_search(self):
        rng = np.random.default_rng(3)
        for n in (2, 3):
            rho = _state(random_density_matrix(n, rng))
            sigma = _state(random_density_matrix(n, rng))
            value = sqrt_fidelity(rho, sigma)
            oracle = purification_overlap_search(rho.rho, sigma.rho, rng,
                                                 restarts=120, steps=150)
            assert value == pytest.approx(oracle, abs=1e-6)

    def test_qubit_closed_form(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            rho = random_density_matrix(2, rng)
            sigma = random_density_matrix(2, rng)
            assert sqrt_fidelity(_state(rho), _state(sigma)) == pytest.approx(
                _qubit_closed_form(rho, sigma), abs=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            sqrt_fidelity(_state(np.eye(2) / 2), _state(np.eye(3) / 3))

    def test_bitwise_symmetry(self):
        rng = np.random.default_rng(5)
        rho = _state(random_density_matrix(3, rng))
        sigma = _state(random_density_matrix(3, rng))
        assert sqrt_fidelity(rho, sigma) == sqrt_fidelity(sigma, rho)


class TestBures:
    def test_identical_states(self):
        # sqrt amplifies the ~1e-16 fidelity rounding to ~1e-8 near zero
        rng = np.random.default_rng(6)
        rho = _state(random_density_matrix(2, rng))
        assert bures_states(rho, rho) == pytest.approx(0.0, abs=1e-7)

    def test_orthogonal_pure_states_attain_sqrt2(self):
        # [PAPER] orthogonal states sit at the maximal Bures distance sqrt(2)
        rho = _state(np.diag([1.0, 0.0]))
        sigma = _state(np.diag([0.0, 1.0]))
        assert bures_states(rho, sigma) == pytest.approx(SQRT2, abs=1e-12)

    def test_pure_overlap_formula(self):
        rng = np.random.default_rng(7)
        for theta in (0.2, 0.7, 1.2):
            x = np.array([1.0, 0.0, 0.0], dtype=complex)
            y = np.array([np.cos(theta), np.sin(theta), 0.0], dtype=complex)
            u = haar_unitary(3, rng)
            rho = _state(np.outer(u @ x, (u @ x).conj()))
            sigma = _state(np.outer(u @ y, (u @ y).conj()))
            assert bures_states(rho, sigma) == pytest.approx(
                np.sqrt(2.0 - 2.0 * np.cos(theta)), abs=1e-9)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            a = _state(random_density_matrix(2, rng))
            b = _state(random_density_matrix(2, rng))
            c = _state(random_density_matrix(2, rng))
            assert bures_states(a, c) <= bures_states(a, b) + bures_states(b, c) + 1e-9


class TestFunctionalCbDistance:
    def test_identical(self):
        rng = np.random.default_rng(9)
        rho = _state(random_density_matrix(3, rng))
        assert functional_cb_distance(rho, rho) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_pure(self):
        rho = _state(np.diag([1.0, 0.0]))
        sigma = _state(np.diag([0.0, 1.0]))
        assert functional_cb_distance(rho, sigma) == pytest.approx(2.0, abs=1e-12)

    def test_random_qubits_against_search(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            rho = _state(random_density_matrix(2, rng))
            sigma = _state(random_density_matrix(2, rng))
            value = functional_cb_distance(rho, sigma)
            oracle = trace_norm_ascent(rho.rho - sigma.rho)
            assert oracle <= value + 1e-9
            assert value == pytest.approx(oracle, abs=1e-3)


class TestInvariants:
    def test_unitary_invariance(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            rho = _state(random_density_matrix(3, rng))
            sigma = _state(random_density_matrix(3, rng))
            u = haar_unitary(3, rng)
            rho_u = _state(u @ rho.rho @ dagger(u))
            sigma_u = _state(u @ sigma.rho @ dagger(u))
            assert sqrt_fidelity(rho_u, sigma_u) == pytest.approx(
                sqrt_fidelity(rho, sigma), abs=1e-9)

    def test_sandwich(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            rho = _state(random_density_matrix(2, rng))
            sigma = _state(random_density_matrix(2, rng))
            b = bures_states(rho, sigma)
            cb = functional_cb_distance(rho, sigma)
            assert b * b <= cb + 1e-9
            assert cb <= 2.0 * b + 1e-9

    def test_report_invariants_enforced(self):
        with pytest.raises(InvariantViolation):
            StateDistanceReport(sqrt_fidelity=0.5, bures=1.2,
                                functional_cb_distance=0.1)

    def test_report_roundtrip(self):
        rng = np.random.default_rng(13)
        rho = _state(random_density_matrix(2, rng))
        sigma = _state(random_density_matrix(2, rng))
        rep = state_distance_report(rho, sigma)
        assert rep.bures ** 2 == pytest.approx(2 - 2 * rep.sqrt_fidelity, abs=1e-9)


def test_vector_norm_guard():
    with pytest.raises(InvariantViolation):
        DensityState.from_matrix(np.full((2, 2), np.nan))


def test_random_unit_vector_is_unit():
    rng = np.random.default_rng(14)
    assert np.linalg.norm(random_unit_vector(5, rng)) == pytest.approx(1.0)
