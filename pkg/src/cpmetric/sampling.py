"""Seeded random ensembles for suites and optimizer restarts.

All randomness in the package flows through ``numpy.random.Generator``
objects created here.  Suites derive one child generator per trial from a
(base seed, trial index) pair, so trial outcomes do not depend on execution
order or concurrency.
"""

import os

import numpy as np

from .linalg import dagger


def resolve_seed(seed=None) -> int:
    """Explicit seed, else CPMETRIC_SEED, else 0."""
    if seed is not None:
        return int(seed)
    env = os.environ.get("CPMETRIC_SEED")
    return int(env) if env else 0


def rng_for(seed=None, *counters) -> np.random.Generator:
    """Generator seeded by (base seed, counter...) for per-trial splitting."""
    base = resolve_seed(seed)
    return np.random.default_rng([base, *[int(c) for c in counters]])


def complex_gaussian(rng, *shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_unitary(n: int, rng) -> np.ndarray:
    """Haar-distributed unitary via QR with phase fixing."""
    z = complex_gaussian(rng, n, n) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian(n: int, rng, scale: float = 1.0) -> np.ndarray:
    g = complex_gaussian(rng, n, n)
    return scale * 0.5 * (g + dagger(g))


def random_psd(n: int, rng, scale: float = 1.0) -> np.ndarray:
    g = complex_gaussian(rng, n, n)
    return scale * (g @ dagger(g)) / n


def random_density_matrix(n: int, rng) -> np.ndarray:
    """Hilbert-Schmidt ensemble: G G^dag normalized to unit trace."""
    g = complex_gaussian(rng, n, n)
    p = g @ dagger(g)
    return p / np.trace(p).real


def random_unit_vector(n: int, rng) -> np.ndarray:
    v = complex_gaussian(rng, n)
    return v / np.linalg.norm(v)


def random_pure_density(n: int, rng) -> np.ndarray:
    v = random_unit_vector(n, rng)
    return np.outer(v, v.conj())


def random_contraction(n: int, rng, normal: bool = False, strict: bool = True) -> np.ndarray:
    """Random contraction, optionally normal, with norm in (0, 1)."""
    if normal:
        u = haar_unitary(n, rng)
        radii = rng.uniform(0.05, 0.97, size=n)
        phases = rng.uniform(0.0, 2.0 * np.pi, size=n)
        d = radii * np.exp(1j * phases)
        t = (u * d) @ dagger(u)
    else:
        g = complex_gaussian(rng, n, n)
        t = g / np.linalg.norm(g, 2)
        t = t * rng.uniform(0.3, 0.97)
    if not strict:
        t = t / max(1.0, np.linalg.norm(t, 2))
    return t


def random_isometry(rows: int, cols: int, rng) -> np.ndarray:
    """Haar random isometry with orthonormal columns (rows >= cols)."""
    if rows < cols:
        raise ValueError("random_isometry: need rows >= cols")
    z = complex_gaussian(rng, rows, cols)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
