import math

import numpy as np
import pytest

from cpmetric import (
    DensityState,
    MetricReport,
    QuantumChannel,
    beta_from_gamma,
    bures_channels,
    cb_distance_lower_bound,
    channel_marginal_state,
    check_ampliation,
    check_composition,
    dist_to_scalars,
    example_one,
    example_two,
    gamma_channels,
    gamma_from_beta,
    gamma_states,
    gamma_states_constructive,
)
from cpmetric.errors import DimensionMismatch, InvariantViolation
from cpmetric.linalg import operator_norm
from cpmetric.sampling import (
    complex_gaussian,
    haar_unitary,
    random_density_matrix,
    random_isometry,
    random_unit_vector,
)

SQRT2 = math.sqrt(2.0)


def _state(mat):
    return DensityState.from_matrix(mat)


def _random_channel(n, m, rng, rank=None):
    d = rank or int(rng.integers(1, n * m + 1))
    v = random_isometry(n * d, m, rng)
    return QuantumChannel.from_kraus([v[k::d, :] for k in range(d)], n, m)


class TestGammaStates:
    def test_identical(self):
        rng = np.random.default_rng(1)
        rho = _state(random_density_matrix(2, rng))
        rep = gamma_states(rho, rho)
        assert rep.beta == pytest.approx(0.0, abs=1e-7)
        assert rep.gamma == pytest.approx(0.0, abs=2e-7)

    def test_orthogonal_pure_states(self):
        # [PAPER] beta = sqrt(2) and gamma = 2 for orthogonal states
        rho = _state(np.diag([1.0, 0.0]))
        sigma = _state(np.diag([0.0, 1.0]))
        rep = gamma_states(rho, sigma)
        assert rep.beta == pytest.approx(SQRT2, abs=1e-12)
        assert rep.gamma == pytest.approx(2.0, abs=1e-12)

    def test_pure_overlap_gives_two_sin(self):
        # [PAPER] gamma = 2 sqrt(1 - |<x,y>|^2) for pure states
        for theta in (0.875, np.pi / 5):
            x = np.array([1.0, 0.0], dtype=complex)
            y = np.array([np.cos(theta), np.sin(theta)], dtype=complex)
            rep = gamma_states(_state(np.outer(x, x.conj())),
                               _state(np.outer(y, y.conj())))
            assert rep.gamma == pytest.approx(2.0 * np.sin(theta), abs=1e-9)

    def test_main_identity(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            rho = _state(random_density_matrix(3, rng))
            sigma = _state(random_density_matrix(3, rng))
            rep = gamma_states(rho, sigma)
            assert rep.beta ** 2 + math.sqrt(4.0 - rep.gamma ** 2) == pytest.approx(2.0, abs=1e-9)
            assert beta_from_gamma(rep.gamma) == pytest.approx(rep.beta, abs=1e-9)

    def test_bound_chain(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            rho = _state(random_density_matrix(2, rng))
            sigma = _state(random_density_matrix(2, rng))
            rep = gamma_states(rho, sigma)
            assert rep.cb_lower - 1e-9 <= rep.gamma <= rep.cb_upper + 1e-9


class TestGammaConstructive:
    def test_identical(self):
        rng = np.random.default_rng(4)
        rho = _state(random_density_matrix(2, rng))
        rep = gamma_states_constructive(rho, rho, seed=0)
        assert rep.gamma_constructive == pytest.approx(0.0, abs=1e-7)

    def test_orthogonal_pure(self):
        # [PAPER] the commutant route reproduces gamma = 2
        rho = _state(np.diag([1.0, 0.0]))
        sigma = _state(np.diag([0.0, 1.0]))
        rep = gamma_states_constructive(rho, sigma, seed=0)
        assert rep.gamma_constructive == pytest.approx(2.0, abs=1e-6)

    def test_random_pairs_match_formula(self):
        rng = np.random.default_rng(5)
        for k in range(10):
            n = 2 + k % 2
            rho = _state(random_density_matrix(n, rng))
            sigma = _state(random_density_matrix(n, rng))
            rep = gamma_states_constructive(rho, sigma, seed=k)
            assert abs(rep.gamma_constructive - rep.gamma) <= 1e-5
            assert "unitary" in rep.witnesses

    def test_dimension_cap(self):
        rho = _state(np.eye(9) / 9)
        with pytest.raises(InvariantViolation):
            gamma_states_constructive(rho, rho)


class TestChannelMarginal:
    def test_identity_channel_maximally_entangled(self):
        ch = QuantumChannel.identity(2)
        omega = np.zeros(4, dtype=complex)
        omega[0] = omega[3] = 1.0 / SQRT2
        st = channel_marginal_state(ch, omega)
        # pure state: rank one
        eigs = np.linalg.eigvalsh(st.rho)
        assert eigs[-1] == pytest.approx(1.0, abs=1e-9)

    def test_product_vector_marginal_consistency(self):
        rng = np.random.default_rng(6)
        ch = _random_channel(2, 2, rng)
        e = np.array([1.0, 0.0], dtype=complex)
        f = random_unit_vector(2, rng)
        omega = np.kron(e, f)
        st = channel_marginal_state(ch, omega)
        b = complex_gaussian(rng, 2, 2)
        got = np.trace(st.rho @ np.kron(np.eye(2), b))
        want = np.vdot(f, b @ f)
        assert got == pytest.approx(want, abs=1e-9)

    def test_random_against_direct_evaluation(self):
        rng = np.random.default_rng(7)
        ch = _random_channel(3, 2, rng)
        omega = random_unit_vector(4, rng)
        st = channel_marginal_state(ch, omega)
        for _ in range(10):
            a = complex_gaussian(rng, 3, 3)
            b = complex_gaussian(rng, 2, 2)
            got = np.trace(st.rho @ np.kron(a, b))
            want = np.vdot(omega, np.kron(ch.apply(a), b) @ omega)
            assert got == pytest.approx(want, abs=1e-8)

    def test_norm_guard(self):
        ch = QuantumChannel.identity(2)
        with pytest.raises(InvariantViolation):
            channel_marginal_state(ch, np.array([1.0, 0.0, 0.0, 1.0]))


class TestBuresChannels:
    def test_equal_channels(self):
        rng = np.random.default_rng(8)
        ch = _random_channel(2, 2, rng)
        beta, _ = bures_channels(ch, ch, seed=0, restarts=6)
        assert beta == pytest.approx(0.0, abs=1e-7)

    def test_identity_vs_phase_conjugation(self):
        # closed form sqrt(2) (1 - cos theta)^(1/2), certified from below by
        # dense omega sampling
        theta = 0.9
        u = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
        ch1 = QuantumChannel.identity(2)
        ch2 = QuantumChannel.from_unitary(u)
        beta, omega = bures_channels(ch1, ch2, seed=1)
        expected = SQRT2 * math.sqrt(1.0 - math.cos(theta))
        assert beta == pytest.approx(expected, abs=1e-7)
        rng = np.random.default_rng(9)
        from cpmetric.states import bures_states
        sample_best = 0.0
        for _ in range(400):
            w = random_unit_vector(4, rng)
            sample_best = max(sample_best, bures_states(
                channel_marginal_state(ch1, w), channel_marginal_state(ch2, w)))
        assert sample_best <= beta + 1e-9

    def test_m1_reduction_matches_states(self):
        rng = np.random.default_rng(10)
        rho = _state(random_density_matrix(2, rng))
        sigma = _state(random_density_matrix(2, rng))
        from cpmetric.states import bures_states
        beta, _ = bures_channels(QuantumChannel.state_as_channel(rho),
                                 QuantumChannel.state_as_channel(sigma),
                                 seed=2, restarts=6)
        assert beta == pytest.approx(bures_states(rho, sigma), abs=1e-7)

    def test_dimension_guard(self):
        with pytest.raises(DimensionMismatch):
            bures_channels(QuantumChannel.identity(2), QuantumChannel.identity(3))


class TestGammaChannels:
    def test_identical(self):
        rng = np.random.default_rng(11)
        ch = _random_channel(2, 2, rng)
        rep = gamma_channels(ch, ch, seed=0, restarts=6)
        assert rep.gamma == pytest.approx(0.0, abs=1e-6)

    def test_phase_conjugation_two_sin(self):
        theta = 0.7
        u = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
        rep = gamma_channels(QuantumChannel.identity(2),
                             QuantumChannel.from_unitary(u), seed=1)
        assert rep.gamma == pytest.approx(2.0 * math.sin(theta), abs=1e-6)
        assert rep.cb_lower - 1e-6 <= rep.gamma <= rep.cb_upper + 1e-6

    def test_orthogonal_output_endpoint(self):
        rho = _state(np.diag([1.0, 0.0]))
        sigma = _state(np.diag([0.0, 1.0]))
        rep = gamma_channels(QuantumChannel.state_as_channel(rho),
                             QuantumChannel.state_as_channel(sigma),
                             seed=2, restarts=6)
        assert rep.beta == pytest.approx(SQRT2, abs=1e-7)
        assert rep.gamma == pytest.approx(2.0, abs=1e-6)

    def test_cb_lower_bound_is_valid(self):
        theta = 0.5
        u = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
        ch1 = QuantumChannel.identity(2)
        ch2 = QuantumChannel.from_unitary(u)
        val = cb_distance_lower_bound(ch1, ch2, seed=0)
        # the cb distance of the pair is 2 d(u, C) = 2 sin(theta)
        assert val <= 2.0 * math.sin(theta) + 1e-9
        assert val == pytest.approx(2.0 * math.sin(theta), abs=1e-6)


class TestAmpliation:
    def test_identical_states(self):
        rng = np.random.default_rng(12)
        rho = _state(random_density_matrix(2, rng))
        base, ampl, ok = check_ampliation(rho, rho, 2, seed=0)
        assert ok and base == pytest.approx(0.0, abs=1e-6)

    def test_orthogonal_pure(self):
        rho = _state(np.diag([1.0, 0.0]))
        sigma = _state(np.diag([0.0, 1.0]))
        base, ampl, ok = check_ampliation(rho, sigma, 2, seed=1)
        assert ok
        assert base == pytest.approx(2.0, abs=1e-9)
        assert ampl == pytest.approx(2.0, abs=1e-3)

    def test_random_pair(self):
        rng = np.random.default_rng(13)
        rho = _state(random_density_matrix(2, rng))
        sigma = _state(random_density_matrix(2, rng))
        base, ampl, ok = check_ampliation(rho, sigma, 2, seed=2)
        assert ok, f"{base} vs {ampl}"

    def test_rejects_large_factor(self):
        rho = _state(np.eye(2) / 2)
        with pytest.raises(InvariantViolation):
            check_ampliation(rho, rho, 5)


class TestComposition:
    def test_identity_channel_preserves(self):
        rng = np.random.default_rng(14)
        rho = _state(random_density_matrix(2, rng))
        sigma = _state(random_density_matrix(2, rng))
        before, after, ok = check_composition(rho, sigma, QuantumChannel.identity(2))
        assert ok and after == pytest.approx(before, abs=1e-10)

    def test_depolarizing_collapses(self):
        rng = np.random.default_rng(15)
        rho = _state(random_density_matrix(2, rng))
        sigma = _state(random_density_matrix(2, rng))
        before, after, ok = check_composition(rho, sigma, QuantumChannel.depolarizing(2))
        assert ok and after == pytest.approx(0.0, abs=1e-9)

    def test_random_channels_contract(self):
        rng = np.random.default_rng(16)
        for k in range(50):
            rho = _state(random_density_matrix(2, rng))
            sigma = _state(random_density_matrix(2, rng))
            psi = _random_channel(int(rng.integers(2, 4)), 2, rng)
            before, after, ok = check_composition(rho, sigma, psi)
            assert ok, f"trial {k}: {after} > {before}"


class TestExampleOne:
    def test_value_at_pi_over_three(self):
        # [PAPER] |lambda - conj(lambda)| = 2 sin(pi/3) = sqrt(3)
        rep = example_one(math.pi / 3)
        assert rep.quantities["gamma_inner"] == pytest.approx(math.sqrt(3.0), abs=1e-9)
        assert rep.all_hold()

    def test_continuity_near_zero(self):
        rep = example_one(1e-4)
        for name in ("gamma_inner", "beta_tilde", "gamma_tilde"):
            assert rep.quantities[name] <= 5e-4

    def test_dist_oracle_at_pi_over_four(self):
        rep = example_one(math.pi / 4)
        assert rep.quantities["gamma_tilde"] == pytest.approx(SQRT2, abs=1e-8)
        u = np.diag([np.exp(1j * math.pi / 4), np.exp(-1j * math.pi / 4)])
        assert 2.0 * dist_to_scalars(u).distance == pytest.approx(
            rep.quantities["gamma_inner"], abs=1e-8)

    def test_range_guard(self):
        with pytest.raises(InvariantViolation):
            example_one(2.0)


class TestExampleTwo:
    def test_closed_form_at_pi_over_six(self):
        rep = example_two(math.pi / 6)
        cos_t = math.cos(math.pi / 6)
        assert rep.quantities["gamma_tilde"] == pytest.approx(
            math.sqrt((3.0 + cos_t) * (1.0 - cos_t)), abs=1e-12)
        assert rep.quantities["gamma_tilde"] == pytest.approx(
            math.sqrt(3.0 - 2.0 * cos_t - cos_t ** 2), abs=1e-12)
        assert rep.all_hold()

    def test_minimizer_sits_at_one(self):
        rep = example_two(0.5)
        lam = complex(rep.quantities["lambda_star_real"],
                      rep.quantities["lambda_star_imag"])
        assert abs(lam - 1.0) <= 1e-6

    def test_range_guard(self):
        with pytest.raises(InvariantViolation):
            example_two(math.pi / 3)


class TestMetricReportInvariants:
    def test_rejects_mismatched_gamma(self):
        with pytest.raises(InvariantViolation):
            MetricReport(beta=0.5, gamma=1.5, cb_lower=0.0, cb_upper=2.0)

    def test_rejects_broken_chain(self):
        beta = 0.5
        gamma = gamma_from_beta(beta)
        with pytest.raises(InvariantViolation):
            MetricReport(beta=beta, gamma=gamma, cb_lower=1.5, cb_upper=1.6)

    def test_monotone_formula(self):
        grid = np.linspace(0.0, SQRT2, 100)
        vals = [gamma_from_beta(b) for b in grid]
        assert all(lo < hi for lo, hi in zip(vals, vals[1:]))
