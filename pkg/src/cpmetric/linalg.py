"""Dense complex linear algebra kernels.

Everything downstream (commutants, dilations, fidelities, metrics) consumes
these wrappers rather than calling LAPACK directly, so that shape and
finiteness checks, tolerance policy and eigenvalue ordering are applied in
exactly one place.  All functions are pure; matrices are plain complex
``numpy`` arrays.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvariantViolation
from .tolerances import active_profile


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex array with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise InvariantViolation(f"{name}: expected a 2-D array, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise InvariantViolation(f"{name}: non-finite entries")
    return m


def as_square(a, name: str = "matrix") -> np.ndarray:
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name}: expected square, got {m.shape}")
    return m


def as_vector(v, name: str = "vector") -> np.ndarray:
    x = np.asarray(v, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(x.real)) or not np.all(np.isfinite(x.imag)):
        raise InvariantViolation(f"{name}: non-finite entries")
    return x


def dagger(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def vec(m: np.ndarray) -> np.ndarray:
    """Row-major vectorization; <vec A, vec B> = tr(A^dag B)."""
    return np.asarray(m).reshape(-1)


def unvec(v: np.ndarray, rows: int, cols: int) -> np.ndarray:
    return np.asarray(v).reshape(rows, cols)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + dagger(a))


def is_hermitian(h: np.ndarray, tol: float | None = None) -> bool:
    h = as_square(h)
    if tol is None:
        tol = active_profile().construction
    scale = max(1.0, operator_norm(h))
    return operator_norm(h - dagger(h)) <= tol * scale


def matrix_unit(n: int, i: int, j: int) -> np.ndarray:
    e = np.zeros((n, n), dtype=complex)
    e[i, j] = 1.0
    return e


def matrix_units(n: int):
    """All n^2 matrix units of M_n, indexed [i][j]."""
    return [[matrix_unit(n, i, j) for j in range(n)] for i in range(n)]


@dataclass
class SpectralDecomposition:
    """Eigen-system of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ dagger(q)


def herm_eig(h) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Eigenvalues come back ascending with orthonormal eigenvector columns.
    Rejects inputs that are not Hermitian within the construction tolerance.
    """
    h = as_square(h, "herm_eig input")
    tol = active_profile()
    scale = max(operator_norm(h), 1e-300)
    if operator_norm(h - dagger(h)) > tol.construction * max(scale, 1.0):
        raise InvariantViolation("herm_eig: input is not Hermitian within tolerance")
    w, q = np.linalg.eigh(0.5 * (h + dagger(h)))
    dec = SpectralDecomposition(eigenvalues=w, eigenvectors=q)
    resid = operator_norm(dec.reconstruct() - h)
    if resid > tol.decomposition * max(scale, 1.0):
        raise InvariantViolation(f"herm_eig: reconstruction residual {resid:.3e}")
    return dec


def svd(a):
    """Singular value decomposition a = u @ diag(s) @ vh, s descending."""
    a = as_matrix(a, "svd input")
    u, s, vh = np.linalg.svd(a)
    return u, s, vh


def operator_norm(a) -> float:
    """Largest singular value."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def trace_norm(a) -> float:
    """Sum of singular values."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False).sum())


def psd_sqrt(p) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [-clip, 0) are treated as zero; anything more negative is
    rejected as indefinite.  The clip absorbs the tiny negative eigenvalues
    that density-matrix arithmetic produces.
    """
    p = as_square(p, "psd_sqrt input")
    tol = active_profile()
    dec = herm_eig(p)
    clip = tol.psd_clip * max(1.0, float(dec.eigenvalues[-1]) if dec.eigenvalues.size else 1.0)
    if dec.eigenvalues.size and dec.eigenvalues[0] < -clip:
        raise InvariantViolation(
            f"psd_sqrt: indefinite input, lambda_min={dec.eigenvalues[0]:.3e}"
        )
    w = np.sqrt(np.clip(dec.eigenvalues, 0.0, None))
    q = dec.eigenvectors
    s = (q * w) @ dagger(q)
    return 0.5 * (s + dagger(s))


def polar(a):
    """Left polar decomposition a = v @ p with v unitary and p PSD.

    The unitary factor comes from the SVD, so it is a genuine unitary even
    when ``a`` is singular (the kernel directions get completed).
    """
    a = as_square(a, "polar input")
    u, s, vh = np.linalg.svd(a)
    v = u @ vh
    p = dagger(vh) @ (s[:, None] * vh)
    p = 0.5 * (p + dagger(p))
    return v, p


def frobenius_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product tr(a^dag b)."""
    return complex(np.vdot(a, b))
