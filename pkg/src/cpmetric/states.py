"""States on matrix algebras and their distance functionals.

A state on M_n is tr(rho .) for a density matrix rho.  The three scalars
computed here form the closed-form layer of the metric engine:

* sqrt_fidelity(rho, sigma) = trace_norm(sqrt(rho) sqrt(sigma)), the
  attained overlap of an optimal common representation;
* bures(rho, sigma) = sqrt(2 - 2 sqrt_fidelity);
* the functional/cb distance trace_norm(rho - sigma), which for states
  coincides with the completely bounded norm of the difference.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvariantViolation
from .linalg import as_square, dagger, operator_norm, psd_sqrt, trace_norm
from .tolerances import active_profile

_SQRT2 = float(np.sqrt(2.0))


def clamp_scalar(value: float, lo: float, hi: float, name: str,
                 tol: float = 1e-8) -> float:
    """Clamp into [lo, hi]; clamping beyond tol is a diagnostic error."""
    if value < lo - tol or value > hi + tol:
        raise InvariantViolation(
            f"{name}={value!r} outside [{lo}, {hi}] beyond tolerance {tol}"
        )
    return float(min(max(value, lo), hi))


@dataclass
class DensityState:
    """Unit-trace positive matrix representing the state a -> tr(rho a)."""

    dimension: int
    rho: np.ndarray

    def __post_init__(self):
        rho = as_square(self.rho, "rho")
        if rho.shape[0] != self.dimension:
            raise DimensionMismatch(
                f"rho of shape {rho.shape} for dimension {self.dimension}"
            )
        herm_defect = operator_norm(rho - dagger(rho))
        if herm_defect > 1e-10 * max(1.0, operator_norm(rho)):
            raise InvariantViolation(f"DensityState: not Hermitian ({herm_defect:.3e})")
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > 1e-10:
            raise InvariantViolation(f"DensityState: trace {tr} != 1")
        lam_min = float(np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))[0])
        if lam_min < -1e-10:
            raise InvariantViolation(f"DensityState: lambda_min {lam_min:.3e} < -1e-10")
        self.rho = 0.5 * (rho + dagger(rho))

    @classmethod
    def from_matrix(cls, rho) -> "DensityState":
        rho = as_square(rho, "rho")
        return cls(dimension=rho.shape[0], rho=rho)

    @classmethod
    def pure(cls, vector) -> "DensityState":
        v = np.asarray(vector, dtype=complex).reshape(-1)
        v = v / np.linalg.norm(v)
        return cls(dimension=v.size, rho=np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, n: int) -> "DensityState":
        return cls(dimension=n, rho=np.eye(n, dtype=complex) / n)

    def sqrt(self) -> np.ndarray:
        return psd_sqrt(self.rho)

    def expectation(self, a) -> complex:
        return complex(np.trace(self.rho @ np.asarray(a, dtype=complex)))


@dataclass
class StateDistanceReport:
    """The three closed-form distance scalars for a pair of states."""

    sqrt_fidelity: float
    bures: float
    functional_cb_distance: float

    def __post_init__(self):
        f = clamp_scalar(self.sqrt_fidelity, 0.0, 1.0, "sqrt_fidelity")
        b = clamp_scalar(self.bures, 0.0, _SQRT2, "bures")
        d = clamp_scalar(self.functional_cb_distance, 0.0, 2.0, "functional_cb_distance")
        if abs(b * b - (2.0 - 2.0 * f)) > 1e-9:
            raise InvariantViolation("StateDistanceReport: bures^2 != 2 - 2 fidelity")
        if d > 2.0 * b + 1e-9 or b * b > d + 1e-9:
            raise InvariantViolation("StateDistanceReport: Bures-norm sandwich violated")
        self.sqrt_fidelity, self.bures, self.functional_cb_distance = f, b, d


def _check_pair(rho: DensityState, sigma: DensityState):
    if rho.dimension != sigma.dimension:
        raise DimensionMismatch(
            f"states of dimensions {rho.dimension} and {sigma.dimension}"
        )


def sqrt_fidelity(rho: DensityState, sigma: DensityState) -> float:
    """Uhlmann overlap tr|sqrt(rho) sqrt(sigma)|, in [0, 1].

    The value is symmetric in the arguments; evaluating on a canonical
    ordering of the pair makes the symmetry bitwise exact.
    """
    _check_pair(rho, sigma)
    if rho.rho.tobytes() > sigma.rho.tobytes():
        rho, sigma = sigma, rho
    value = trace_norm(rho.sqrt() @ sigma.sqrt())
    return clamp_scalar(value, 0.0, 1.0, "sqrt_fidelity")


def bures_states(rho: DensityState, sigma: DensityState) -> float:
    """Bures distance sqrt(2 - 2 overlap), clamped to [0, sqrt(2)]."""
    _check_pair(rho, sigma)
    f = sqrt_fidelity(rho, sigma)
    return clamp_scalar(np.sqrt(max(0.0, 2.0 - 2.0 * f)), 0.0, _SQRT2, "bures")


def functional_cb_distance(rho: DensityState, sigma: DensityState) -> float:
    """trace_norm(rho - sigma); equals the cb distance of the two states."""
    _check_pair(rho, sigma)
    return clamp_scalar(trace_norm(rho.rho - sigma.rho), 0.0, 2.0, "functional_cb_distance")


def state_distance_report(rho: DensityState, sigma: DensityState) -> StateDistanceReport:
    return StateDistanceReport(
        sqrt_fidelity=sqrt_fidelity(rho, sigma),
        bures=bures_states(rho, sigma),
        functional_cb_distance=functional_cb_distance(rho, sigma),
    )
