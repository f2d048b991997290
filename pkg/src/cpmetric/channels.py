"""Unital completely positive maps between matrix algebras.

A channel here is a UCP map Phi : M_n -> M_m in the Heisenberg picture,
stored through its Choi matrix

    C = sum_ij E_ij (x) Phi(E_ij)   on  C^n (x) C^m,

which is PSD exactly when Phi is completely positive, and whose partial
trace over the first factor equals I_m exactly when Phi is unital.
Kraus operators K_l (n x m, Phi(a) = sum K_l^dag a K_l) are recovered from
the Choi eigendecomposition; the number of nonzero eigenvalues is the
minimal ancilla dimension.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvariantViolation
from .linalg import as_square, dagger, matrix_unit, operator_norm
from .states import DensityState


@dataclass
class QuantumChannel:
    dim_in: int
    dim_out: int
    choi: np.ndarray

    def __post_init__(self):
        n, m = self.dim_in, self.dim_out
        choi = as_square(self.choi, "choi")
        if choi.shape[0] != n * m:
            raise DimensionMismatch(
                f"choi of shape {choi.shape} for dims ({n}, {m})"
            )
        herm = operator_norm(choi - dagger(choi))
        scale = max(1.0, operator_norm(choi))
        if herm > 1e-10 * scale:
            raise InvariantViolation(f"QuantumChannel: Choi not Hermitian ({herm:.3e})")
        choi = 0.5 * (choi + dagger(choi))
        lam_min = float(np.linalg.eigvalsh(choi)[0])
        if lam_min < -1e-10 * scale:
            raise InvariantViolation(
                f"QuantumChannel: Choi not PSD (lambda_min {lam_min:.3e})"
            )
        blocks = choi.reshape(n, m, n, m)
        unit_defect = operator_norm(np.einsum("iaib->ab", blocks) - np.eye(m))
        if unit_defect > 1e-9:
            raise InvariantViolation(
                f"QuantumChannel: not unital (defect {unit_defect:.3e})"
            )
        self.choi = choi

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_kraus(cls, kraus, dim_in: int, dim_out: int) -> "QuantumChannel":
        """Channel a -> sum K^dag a K from Kraus operators K (dim_in x dim_out)."""
        choi = np.zeros((dim_in * dim_out, dim_in * dim_out), dtype=complex)
        for k in kraus:
            k = np.asarray(k, dtype=complex).reshape(dim_in, dim_out)
            w = k.conj().reshape(-1)
            choi += np.outer(w, w.conj())
        return cls(dim_in=dim_in, dim_out=dim_out, choi=choi)

    @classmethod
    def identity(cls, n: int) -> "QuantumChannel":
        return cls.from_kraus([np.eye(n, dtype=complex)], n, n)

    @classmethod
    def from_unitary(cls, u) -> "QuantumChannel":
        """Conjugation a -> u^dag a u."""
        u = as_square(u, "unitary")
        if operator_norm(u @ dagger(u) - np.eye(u.shape[0])) > 1e-9:
            raise InvariantViolation("from_unitary: input is not unitary")
        return cls.from_kraus([u], u.shape[0], u.shape[0])

    @classmethod
    def depolarizing(cls, n: int) -> "QuantumChannel":
        """Completely depolarizing UCP map a -> tr(a)/n I."""
        kraus = [matrix_unit(n, i, j) / np.sqrt(n) for i in range(n) for j in range(n)]
        return cls.from_kraus(kraus, n, n)

    @classmethod
    def state_as_channel(cls, state: DensityState) -> "QuantumChannel":
        """A state as a UCP map into M_1."""
        w, q = np.linalg.eigh(state.rho)
        kraus = [np.sqrt(max(lam, 0.0)) * q[:, i:i + 1] for i, lam in enumerate(w) if lam > 1e-14]
        return cls.from_kraus(kraus, state.dimension, 1)

    @classmethod
    def state_embedding(cls, state: DensityState, m: int) -> "QuantumChannel":
        """Injective-range embedding a -> tr(rho a) I_m of a state."""
        w, q = np.linalg.eigh(state.rho)
        kraus = []
        for i, lam in enumerate(w):
            if lam <= 1e-14:
                continue
            for alpha in range(m):
                k = np.zeros((state.dimension, m), dtype=complex)
                k[:, alpha] = np.sqrt(lam) * q[:, i]
                kraus.append(k)
        return cls.from_kraus(kraus, state.dimension, m)

    @classmethod
    def state_ampliation(cls, state: DensityState, k: int) -> "QuantumChannel":
        """k-fold ampliation of a state: entrywise application on M_k(M_n)."""
        w, q = np.linalg.eigh(state.rho)
        eye = np.eye(k, dtype=complex)
        kraus = [np.kron(eye, np.sqrt(max(lam, 0.0)) * q[:, i:i + 1])
                 for i, lam in enumerate(w) if lam > 1e-14]
        return cls.from_kraus(kraus, k * state.dimension, k)

    # -- actions ------------------------------------------------------------

    def blocks(self) -> np.ndarray:
        """Choi reshaped so blocks()[i, :, j, :] = Phi(E_ij)."""
        n, m = self.dim_in, self.dim_out
        return self.choi.reshape(n, m, n, m)

    def apply(self, a) -> np.ndarray:
        """Heisenberg action Phi(a)."""
        a = as_square(a, "channel argument")
        if a.shape[0] != self.dim_in:
            raise DimensionMismatch(
                f"argument of dimension {a.shape[0]} for channel input {self.dim_in}"
            )
        return np.einsum("ij,iajb->ab", a, self.blocks())

    def schrodinger(self, xi) -> np.ndarray:
        """Trace adjoint: tr(Phi(a) xi) = tr(a Phi_*(xi)); CPTP when Phi is UCP."""
        xi = as_square(xi, "schrodinger argument")
        if xi.shape[0] != self.dim_out:
            raise DimensionMismatch(
                f"argument of dimension {xi.shape[0]} for channel output {self.dim_out}"
            )
        return np.einsum("qapb,ba->pq", self.blocks(), xi)

    def push_state(self, state: DensityState) -> DensityState:
        """Image of a density matrix under the trace adjoint."""
        return DensityState.from_matrix(self.schrodinger(state.rho))

    def kraus(self, tol: float = 1e-10):
        """Kraus operators from the Choi eigendecomposition (minimal family)."""
        w, x = np.linalg.eigh(self.choi)
        scale = max(1.0, float(w[-1]) if w.size else 1.0)
        ops = []
        for i in range(w.size):
            if w[i] > tol * scale:
                ops.append(np.sqrt(w[i]) * x[:, i].conj().reshape(self.dim_in, self.dim_out))
        return ops

    def choi_rank(self, tol: float = 1e-10) -> int:
        w = np.linalg.eigvalsh(self.choi)
        scale = max(1.0, float(w[-1]) if w.size else 1.0)
        return int(np.sum(w > tol * scale))
