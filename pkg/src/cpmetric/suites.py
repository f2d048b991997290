"""Deterministic verification suites.

Each suite replays the library's invariants on seeded random ensembles.
Trial randomness comes from (base seed, trial index), so results are
reproducible and independent of execution order; the runner can fan trials
out over threads and aggregation stays order-independent (failures are
sorted by trial).
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channels import QuantumChannel
from .dilations import (
    ad_unitary,
    gns_state,
    halmos_dilation,
    choi_li_dilation,
    intertwining_unitary,
    joint_rep_direct_sum,
    stinespring,
)
from .errors import CpmetricError
from .geometry import (
    SubspaceBasis,
    commutant,
    dist_to_scalars,
    dist_to_subspace,
    full_matrix_algebra,
    numerical_range,
)
from .linalg import (
    dagger,
    herm_eig,
    matrix_unit,
    operator_norm,
    psd_sqrt,
    trace_norm,
    vec,
)
from .metrics import (
    beta_from_gamma,
    check_composition,
    example_one,
    example_two,
    gamma_from_beta,
    gamma_states,
    gamma_states_constructive,
    bures_channels,
)
from .sampling import (
    complex_gaussian,
    haar_unitary,
    random_contraction,
    random_density_matrix,
    random_isometry,
    random_psd,
    random_unit_vector,
    rng_for,
)
from .states import DensityState, bures_states, functional_cb_distance, sqrt_fidelity


@dataclass
class SuiteFailure:
    trial_seed: int
    assertion: str
    lhs: float
    rhs: float
    tolerance: float


@dataclass
class SuiteResult:
    suite: str
    trials: int
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures


class _Trial:
    """Collects tolerance-checked assertions for one seeded trial."""

    def __init__(self, trial: int):
        self.trial = trial
        self.failures = []

    def check(self, assertion: str, lhs: float, rhs: float, tol: float):
        # asserts lhs <= rhs + tol
        if not (lhs <= rhs + tol):
            self.failures.append(SuiteFailure(self.trial, assertion,
                                              float(lhs), float(rhs), float(tol)))

    def close(self, assertion: str, lhs: float, rhs: float, tol: float):
        self.check(assertion, abs(lhs - rhs), 0.0, tol)

    def true(self, assertion: str, flag: bool):
        if not flag:
            self.failures.append(SuiteFailure(self.trial, assertion, 0.0, 1.0, 0.0))


def _suite_matrix_core(seed: int, trial: int) -> list:
    t = _Trial(trial)
    rng = rng_for(seed, trial)
    n = int(rng.integers(2, 17))
    h = 0.5 * (lambda g: g + dagger(g))(complex_gaussian(rng, n, n))
    dec = herm_eig(h)
    t.close("eig_sum_equals_trace", float(dec.eigenvalues.sum()),
            float(np.trace(h).real), 1e-9 * max(1.0, abs(np.trace(h).real)))
    a = complex_gaussian(rng, n, n)
    b = complex_gaussian(rng, n, n)
    t.check("operator_norm_submultiplicative", operator_norm(a @ b),
            operator_norm(a) * operator_norm(b), 1e-9)
    u = haar_unitary(n, rng)
    t.check("trace_norm_duality_lower_bound", abs(np.trace(dagger(u) @ a).real),
            trace_norm(a), 1e-9)
    if trial == 0:
        for c in (0.0, 1.0, 4.0):
            s = psd_sqrt(c * np.eye(3, dtype=complex))
            t.close("psd_sqrt_scalar", operator_norm(s - math.sqrt(c) * np.eye(3)),
                    0.0, 1e-12)
    return t.failures


def _suite_operator_geometry(seed: int, trial: int) -> list:
    t = _Trial(trial)
    rng = rng_for(seed, trial)
    n = 2 + trial % 2
    u = haar_unitary(n, rng)
    comm = commutant(full_matrix_algebra(n))
    d_sub = dist_to_subspace(u, comm, seed=seed * 1000 + trial)
    d_sc = dist_to_scalars(u)
    t.close("johnson_agreement_full_algebra", 2.0 * d_sub.distance,
            2.0 * d_sc.distance, 1e-6)

    k = int(rng.integers(2, 6))
    x = random_unit_vector(k, rng)
    y = random_unit_vector(k, rng)
    w0 = ad_unitary(x, y)
    w = w0 @ _unitary_fixing(x, rng)
    p = random_psd(k, rng)
    bound = math.sqrt(max(0.0, 1.0 - float(np.real(np.vdot(x, y))) ** 2))
    t.check("difference_bound_unitary_vs_psd", bound,
            operator_norm(w - p), 1e-9)

    m = int(rng.integers(3, 6))
    r1 = complex_gaussian(rng, m, m)
    r2 = complex_gaussian(rng, m, m)
    target = complex_gaussian(rng, m, m)
    s_small = SubspaceBasis.span([np.eye(m, dtype=complex), r1])
    s_big = SubspaceBasis.span([np.eye(m, dtype=complex), r1, r2])
    d_small = dist_to_subspace(target, s_small, seed=seed * 7 + trial)
    d_big = dist_to_subspace(target, s_big, seed=seed * 7 + trial)
    t.check("subspace_monotonicity", d_big.distance, d_small.distance, 1e-6)

    q = int(rng.integers(2, 6))
    tm = complex_gaussian(rng, q, q)
    summary = numerical_range(tm, 128)
    for _ in range(10):
        v = random_unit_vector(q, rng)
        t.check("min_modulus_below_samples", summary.min_modulus,
                abs(complex(np.vdot(v, tm @ v))), 1e-8)
    return t.failures


def _unitary_fixing(x: np.ndarray, rng) -> np.ndarray:
    """Haar unitary on the orthogonal complement of x, identity on x."""
    k = x.size
    basis = np.linalg.qr(np.column_stack([x, complex_gaussian(rng, k, k - 1)]))[0]
    inner = haar_unitary(k - 1, rng)
    out = np.eye(k, dtype=complex) + basis[:, 1:] @ (inner - np.eye(k - 1)) @ dagger(basis[:, 1:])
    return out


def _suite_quantum_states(seed: int, trial: int) -> list:
    t = _Trial(trial)
    rng = rng_for(seed, trial)
    n = 2 + trial % 3
    rho = DensityState.from_matrix(random_density_matrix(n, rng))
    sigma = DensityState.from_matrix(random_density_matrix(n, rng))
    tau = DensityState.from_matrix(random_density_matrix(n, rng))
    t.close("fidelity_symmetry", sqrt_fidelity(rho, sigma),
            sqrt_fidelity(sigma, rho), 1e-10)
    t.close("bures_symmetry", bures_states(rho, sigma), bures_states(sigma, rho), 1e-10)
    t.close("cb_symmetry", functional_cb_distance(rho, sigma),
            functional_cb_distance(sigma, rho), 1e-10)
    u = haar_unitary(n, rng)
    rho_u = DensityState.from_matrix(u @ rho.rho @ dagger(u))
    sigma_u = DensityState.from_matrix(u @ sigma.rho @ dagger(u))
    t.close("fidelity_unitary_invariance", sqrt_fidelity(rho_u, sigma_u),
            sqrt_fidelity(rho, sigma), 1e-9)
    t.check("bures_triangle", bures_states(rho, tau),
            bures_states(rho, sigma) + bures_states(sigma, tau), 1e-9)
    b = bures_states(rho, sigma)
    cb = functional_cb_distance(rho, sigma)
    t.check("sandwich_lower", b * b, cb, 1e-9)
    t.check("sandwich_upper", cb, 2.0 * b, 1e-9)
    return t.failures


def _suite_dilation_lab(seed: int, trial: int) -> list:
    t = _Trial(trial)
    rng = rng_for(seed, trial)
    n = 2 + trial % 2
    rho = DensityState.from_matrix(random_density_matrix(n, rng))
    rep, x = gns_state(rho)
    worst = 0.0
    for i in range(n):
        for j in range(n):
            got = complex(np.vdot(x, rep.unit_images[i, j] @ x))
            worst = max(worst, abs(got - rho.expectation(matrix_unit(n, i, j))))
    t.check("gns_reproduction", worst, 0.0, 1e-10)

    k = int(rng.integers(2, 9))
    xv = random_unit_vector(k, rng)
    yv = random_unit_vector(k, rng)
    u = ad_unitary(xv, yv)
    overlap = abs(complex(np.vdot(xv, yv)))
    t.close("ad_unitary_optimality", 2.0 * dist_to_scalars(u).distance,
            2.0 * math.sqrt(max(0.0, 1.0 - overlap * overlap)), 1e-6)

    m = int(rng.integers(1, 4))
    ch = _random_channel(n, m, rng)
    v, d = stinespring(ch)
    t.true("stinespring_minimal_ancilla", d == ch.choi_rank())
    rebuilt = _choi_from_stinespring(v, n, ch.dim_out, d)
    t.close("stinespring_roundtrip", operator_norm(rebuilt - ch.choi), 0.0, 1e-9)

    nn = int(rng.integers(2, 7))
    tc = random_contraction(nn, rng, normal=bool(rng.integers(0, 2)))
    w = haar_unitary(nn, rng)
    dil = halmos_dilation(tc, w)
    t.close("halmos_unitarity", operator_norm(dagger(dil.v) @ dil.v - np.eye(2 * nn)),
            0.0, 1e-9)

    if trial % 4 == 0:
        mm = int(rng.integers(1, 3))
        gg = 2 * mm + 1
        xi = random_isometry(gg, mm, rng)
        yi = random_isometry(gg, mm, rng)
        if operator_norm(dagger(xi) @ yi) < 1.0 - 1e-6:
            res = intertwining_unitary(xi, yi, seed=seed + trial)
            d_u = dist_to_scalars(res.unitary).distance
            t.check("intertwiner_upper_bound", 2.0 * d_u,
                    2.0 * res.scalar_distance_bound, 1e-5)
            sup = 0.0
            for _ in range(64):
                mv = random_unit_vector(mm, rng)
                ov = complex(np.vdot(xi @ mv, np.exp(-1j * res.phase) * (yi @ mv)))
                sup = max(sup, math.sqrt(max(0.0, 1.0 - ov.real ** 2)))
            t.check("intertwiner_lower_bound", 2.0 * sup, 2.0 * d_u, 1e-5)

        rho2 = DensityState.from_matrix(random_density_matrix(2, rng))
        sig2 = DensityState.from_matrix(random_density_matrix(2, rng))
        joint = joint_rep_direct_sum(rho2, sig2)
        try:
            joint.validate(rho2, sig2)
            t.true("joint_tuple_invariants", True)
        except CpmetricError:
            t.true("joint_tuple_invariants", False)
    return t.failures


def _random_channel(n: int, m: int, rng) -> QuantumChannel:
    d = int(rng.integers(1, n * m + 1))
    v = random_isometry(n * d, m, rng)
    kraus = [v[k::d, :] for k in range(d)]
    return QuantumChannel.from_kraus(kraus, n, m)


def _choi_from_stinespring(v: np.ndarray, n: int, m: int, d: int) -> np.ndarray:
    eye_d = np.eye(d, dtype=complex)
    choi = np.zeros((n * m, n * m), dtype=complex)
    for i in range(n):
        for j in range(n):
            block = dagger(v) @ np.kron(matrix_unit(n, i, j), eye_d) @ v
            choi[i * m:(i + 1) * m, j * m:(j + 1) * m] = block
    return choi


def _suite_metric_axioms(seed: int, trial: int) -> list:
    t = _Trial(trial)
    rng = rng_for(seed, trial)
    rho = DensityState.from_matrix(random_density_matrix(2, rng))
    sigma = DensityState.from_matrix(random_density_matrix(2, rng))
    tau = DensityState.from_matrix(random_density_matrix(2, rng))
    g12 = gamma_states(rho, sigma).gamma
    g21 = gamma_states(sigma, rho).gamma
    t.true("gamma_symmetry_exact", g12 == g21)
    g13 = gamma_states(rho, tau).gamma
    g23 = gamma_states(sigma, tau).gamma
    t.check("gamma_triangle", g13, g12 + g23, 1e-9)
    rep = gamma_states(rho, sigma)
    t.close("beta_gamma_identity", rep.beta ** 2 + math.sqrt(4.0 - rep.gamma ** 2),
            2.0, 1e-9)
    if trial == 0:
        grid = np.linspace(0.0, math.sqrt(2.0), 200)
        gvals = [gamma_from_beta(b) for b in grid]
        t.true("gamma_strictly_increasing_in_beta",
               all(g2 > g1 for g1, g2 in zip(gvals, gvals[1:])))
        t.true("beta_gamma_roundtrip",
               all(abs(beta_from_gamma(g) - b) <= 1e-9 for b, g in zip(grid, gvals)))
    return t.failures


def _suite_bound_chain(seed: int, trial: int) -> list:
    t = _Trial(trial)
    rng = rng_for(seed, trial)
    n = 2 + trial % 3
    rho = DensityState.from_matrix(random_density_matrix(n, rng))
    sigma = DensityState.from_matrix(random_density_matrix(n, rng))
    rep = gamma_states(rho, sigma)
    t.check("chain_lower", rep.cb_lower, rep.gamma, 1e-9)
    t.check("chain_upper", rep.gamma, rep.cb_upper, 1e-9)
    return t.failures


def _suite_formula_vs_construction(seed: int, trial: int) -> list:
    t = _Trial(trial)
    rng = rng_for(seed, trial)
    n = 2 + trial % 2
    rho = DensityState.from_matrix(random_density_matrix(n, rng))
    sigma = DensityState.from_matrix(random_density_matrix(n, rng))
    try:
        rep = gamma_states_constructive(rho, sigma, seed=seed + trial)
        t.close("formula_vs_construction", rep.gamma_constructive, rep.gamma, 1e-5)
    except CpmetricError:
        t.true("constructive_route_certified", False)
    return t.failures


def _suite_channel_properties(seed: int, trial: int) -> list:
    t = _Trial(trial)
    rng = rng_for(seed, trial)
    rho = DensityState.from_matrix(random_density_matrix(2, rng))
    sigma = DensityState.from_matrix(random_density_matrix(2, rng))
    # m = 1 reduction agrees with the state Bures distance
    b_state = bures_states(rho, sigma)
    b_chan, _ = bures_channels(QuantumChannel.state_as_channel(rho),
                               QuantumChannel.state_as_channel(sigma),
                               seed=seed + trial, restarts=6)
    t.close("m1_reduction", b_chan, b_state, 1e-7)
    # injective embedding leaves gamma unchanged (up to optimizer tolerance)
    g_state = gamma_states(rho, sigma).gamma
    b_embed, _ = bures_channels(QuantumChannel.state_embedding(rho, 2),
                                QuantumChannel.state_embedding(sigma, 2),
                                seed=seed + trial, restarts=10)
    t.close("injective_embedding", gamma_from_beta(b_embed), g_state, 1e-3)
    # composition with a random UCP map contracts gamma
    psi = _random_channel(int(rng.integers(2, 4)), 2, rng)
    before, after, contracted = check_composition(rho, sigma, psi)
    t.true("composition_contracts", contracted)
    return t.failures


def _suite_examples(seed: int, trial: int) -> list:
    t = _Trial(trial)
    rng = rng_for(seed, trial)
    theta1 = float(rng.uniform(0.05, math.pi / 2 - 0.05))
    rep1 = example_one(theta1)
    t.true("example_one_checks", rep1.all_hold())
    theta2 = float(rng.uniform(0.02, math.pi / 4 - 0.02))
    rep2 = example_two(theta2)
    t.true("example_two_checks", rep2.all_hold())
    return t.failures


def _suite_dilation_search(seed: int, trial: int) -> list:
    t = _Trial(trial)
    rng = rng_for(seed, trial)
    n = 2 + trial % 3
    tc = random_contraction(n, rng, normal=bool(rng.integers(0, 2)))
    two_r = float(np.linalg.eigvalsh(tc + dagger(tc))[0])
    try:
        dil = choi_li_dilation(tc, seed=seed + trial)
        t.close("dilation_unitary",
                operator_norm(dagger(dil.v) @ dil.v - np.eye(2 * n)), 0.0, 1e-9)
        t.check("dilation_half_gap", two_r - 1e-5,
                2.0 * dil.achieved_half_gap, 0.0)
    except CpmetricError:
        t.true("dilation_search_succeeds", False)
    return t.failures


_SUITES = {
    "matrix-core": (_suite_matrix_core, 500),
    "operator-geometry": (_suite_operator_geometry, 100),
    "quantum-states": (_suite_quantum_states, 300),
    "dilation-lab": (_suite_dilation_lab, 200),
    "dilation-search": (_suite_dilation_search, 50),
    "metric-axioms": (_suite_metric_axioms, 1000),
    "bound-chain": (_suite_bound_chain, 500),
    "formula-vs-construction": (_suite_formula_vs_construction, 20),
    "channel-properties": (_suite_channel_properties, 3),
    "examples": (_suite_examples, 50),
}


def suite_names():
    return sorted(_SUITES)


def run_suite(name: str, seed: int = 0, trials: int | None = None,
              workers: int = 1) -> SuiteResult:
    """Run one named suite; failures are sorted by trial for determinism."""
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(suite_names())}")
    fn, default_trials = _SUITES[name]
    count = default_trials if trials is None else int(trials)
    start = time.perf_counter()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: fn(seed, i), range(count)))
    else:
        results = [fn(seed, i) for i in range(count)]
    failures = [f for sub in results for f in sub]
    failures.sort(key=lambda f: (f.trial_seed, f.assertion))
    wall = time.perf_counter() - start
    return SuiteResult(suite=name, trials=count, failures=failures, wall_time=wall)
