"""Constructive representation machinery.

Builds, as explicit matrices, the objects that the metric computations
minimize over:

* GNS representations of states (a -> a (x) I with cyclic vector
  vec(sqrt(rho)));
* Stinespring isometries of UCP maps from their Kraus families;
* common representations of two states realizing the Uhlmann-optimal
  overlap, and the unitary mapping one implementing vector to the other
  whose distance to the scalars is exactly sqrt(1 - |<x,y>|^2);
* joint representation tuples (one vector, two left actions) from the
  direct sum of the two GNS spaces and a swap unitary;
* Halmos block dilations of contractions and their phase-constrained
  refinement: given a contraction T with T + T^dag >= 2r, a unitary
  dilation V on the doubled space with V + V^dag >= 2r (the free unitary
  block is found by Riemannian ascent; for normal T the identity block is
  exact);
* the intertwining unitary U with UX = Y for isometries X, Y whose
  distance to the scalars is controlled by the minimum modulus of the
  numerical range of X^dag Y.
"""

from dataclasses import dataclass

import numpy as np

from .channels import QuantumChannel
from .errors import DilationSearchError, DimensionMismatch, InvariantViolation
from .geometry import numerical_range
from .linalg import (
    as_matrix,
    as_square,
    as_vector,
    commutator,
    dagger,
    matrix_unit,
    operator_norm,
    psd_sqrt,
    vec,
)
from .sampling import haar_unitary, rng_for
from .states import DensityState


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

@dataclass
class Representation:
    """Unital *-representation of M_n, stored on the matrix-unit basis.

    Storing the n^2 images makes unitality, multiplicativity and
    *-preservation finitely checkable.
    """

    algebra_dim: int
    space_dim: int
    unit_images: np.ndarray  # shape (n, n, K, K)

    def apply(self, a) -> np.ndarray:
        a = as_square(a, "representation argument")
        if a.shape[0] != self.algebra_dim:
            raise DimensionMismatch("representation argument dimension mismatch")
        return np.einsum("ij,ijkl->kl", a, self.unit_images)

    def generators(self):
        n = self.algebra_dim
        return [self.unit_images[i, j] for i in range(n) for j in range(n)]

    def validate(self, tol: float = 1e-9):
        n, k = self.algebra_dim, self.space_dim
        eye = np.eye(k, dtype=complex)
        unital = sum(self.unit_images[i, i] for i in range(n))
        if operator_norm(unital - eye) > 1e-10 * max(1.0, np.sqrt(k)):
            raise InvariantViolation("Representation: image of identity is not I")
        for i in range(n):
            for j in range(n):
                if operator_norm(self.unit_images[i, j] - dagger(self.unit_images[j, i])) > tol:
                    raise InvariantViolation("Representation: not *-preserving")
        for i in range(n):
            for j in range(n):
                for p in range(n):
                    prod = self.unit_images[i, j] @ self.unit_images[p, 0]
                    expect = self.unit_images[i, 0] if p == j else np.zeros((k, k))
                    if operator_norm(prod - expect) > tol:
                        raise InvariantViolation("Representation: not multiplicative")
        return self


def gns_representation(n: int) -> Representation:
    """The ampliation a -> a (x) I_n on C^n (x) C^n (GNS ambient for states)."""
    eye = np.eye(n, dtype=complex)
    images = np.empty((n, n, n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            images[i, j] = np.kron(matrix_unit(n, i, j), eye)
    return Representation(algebra_dim=n, space_dim=n * n, unit_images=images)


def gns_state(rho: DensityState):
    """GNS triple of a state: representation a (x) I and cyclic vector vec(sqrt(rho)).

    <x, (a (x) I) x> = tr(sqrt(rho) a sqrt(rho)) = tr(rho a) per matrix unit.
    """
    rep = gns_representation(rho.dimension)
    x = vec(psd_sqrt(rho.rho))
    return rep, x


def stinespring(channel: QuantumChannel):
    """Stinespring isometry V with Phi(a) = V^dag (a (x) I_d) V, d the Choi rank."""
    n, m = channel.dim_in, channel.dim_out
    kraus = channel.kraus()
    d = len(kraus)
    if d == 0:
        raise InvariantViolation("stinespring: channel with zero Choi rank")
    v = np.zeros((n * d, m), dtype=complex)
    for k_idx, k in enumerate(kraus):
        v[k_idx::d, :] = k  # row (i, k_idx) = i * d + k_idx
    if operator_norm(dagger(v) @ v - np.eye(m)) > 1e-9:
        raise InvariantViolation("stinespring: V is not an isometry (non-UCP input)")
    eye_d = np.eye(d, dtype=complex)
    for i in range(n):
        for j in range(n):
            lhs = dagger(v) @ np.kron(matrix_unit(n, i, j), eye_d) @ v
            rhs = channel.blocks()[i, :, j, :]
            if operator_norm(lhs - rhs) > 1e-9:
                raise InvariantViolation("stinespring: reproduction failure on a matrix unit")
    return v, d


# ---------------------------------------------------------------------------
# common and joint representations of two states
# ---------------------------------------------------------------------------

@dataclass
class CommonRepresentation:
    """Shared representation with two implementing vectors and their overlap."""

    rep: Representation
    x: np.ndarray
    y: np.ndarray
    overlap: float

    def validate(self, rho: DensityState, sigma: DensityState, tol: float = 1e-9):
        n = rho.dimension
        for i in range(n):
            for j in range(n):
                img = self.rep.unit_images[i, j]
                e1 = complex(np.vdot(self.x, img @ self.x)) - rho.expectation(matrix_unit(n, i, j))
                e2 = complex(np.vdot(self.y, img @ self.y)) - sigma.expectation(matrix_unit(n, i, j))
                if abs(e1) > tol or abs(e2) > tol:
                    raise InvariantViolation("CommonRepresentation: state reproduction failure")
        return self


def common_representation(rho: DensityState, sigma: DensityState) -> CommonRepresentation:
    """Common representation attaining the Bures distance of two states.

    Both vectors live in the GNS space of rho; y is vec(sqrt(sigma) W) with
    W the unitary aligning the overlap, so <x, y> = tr|sqrt(rho) sqrt(sigma)|
    is real and nonnegative.
    """
    if rho.dimension != sigma.dimension:
        raise DimensionMismatch("common_representation: dimension mismatch")
    rep, x = gns_state(rho)
    m = psd_sqrt(rho.rho) @ psd_sqrt(sigma.rho)
    u, s, vh = np.linalg.svd(m)
    w_opt = dagger(vh) @ dagger(u)  # maximizes Re tr(m W) at value sum(s)
    y = vec(psd_sqrt(sigma.rho) @ w_opt)
    overlap = complex(np.vdot(x, y))
    if abs(overlap.imag) > 1e-9 or overlap.real < -1e-9:
        raise InvariantViolation(f"common_representation: overlap {overlap} not aligned")
    return CommonRepresentation(rep=rep, x=x, y=y, overlap=float(max(overlap.real, 0.0)))


def ad_unitary(x, y) -> np.ndarray:
    """Unitary U with Ux = y minimizing the distance to the scalars.

    dist_to_scalars(U) = sqrt(1 - |<x,y>|^2): U rotates the plane spanned by
    x and y and acts as the overlap phase on the orthogonal complement, so
    its spectrum sits on the arc whose Chebyshev radius is exactly that
    value.  For phase-aligned overlaps the complement action is the
    identity; x = y returns I.
    """
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.size != y.size:
        raise DimensionMismatch("ad_unitary: vectors of different dimensions")
    if abs(np.linalg.norm(x) - 1.0) > 1e-10 or abs(np.linalg.norm(y) - 1.0) > 1e-10:
        raise InvariantViolation("ad_unitary: inputs must be unit vectors")
    k = x.size
    eye = np.eye(k, dtype=complex)
    if np.linalg.norm(x - y) <= 1e-12:
        return eye
    c = complex(np.vdot(x, y))
    delta = np.angle(c) if abs(c) > 1e-14 else 0.0
    y_aligned = np.exp(-1j * delta) * y
    cos_t = float(np.real(np.vdot(x, y_aligned)))
    w_raw = y_aligned - np.vdot(x, y_aligned) * x
    sin_t = float(np.linalg.norm(w_raw))
    if sin_t <= 1e-12:
        return np.exp(1j * delta) * eye
    w = w_raw / sin_t
    rot = eye + (cos_t - 1.0) * (np.outer(x, x.conj()) + np.outer(w, w.conj())) \
        + sin_t * (np.outer(w, x.conj()) - np.outer(x, w.conj()))
    return np.exp(1j * delta) * rot


@dataclass
class JointRepresentationTuple:
    """One shared vector, two left actions, each reproducing one state."""

    rep1: Representation
    rep2: Representation
    x: np.ndarray

    def validate(self, rho: DensityState, sigma: DensityState, tol: float = 1e-9):
        n = rho.dimension
        for i in range(n):
            for j in range(n):
                v1 = complex(np.vdot(self.x, self.rep1.unit_images[i, j] @ self.x))
                v2 = complex(np.vdot(self.x, self.rep2.unit_images[i, j] @ self.x))
                if abs(v1 - rho.expectation(matrix_unit(n, i, j))) > tol:
                    raise InvariantViolation("JointRepresentationTuple: rep1 reproduction failure")
                if abs(v2 - sigma.expectation(matrix_unit(n, i, j))) > tol:
                    raise InvariantViolation("JointRepresentationTuple: rep2 reproduction failure")
        return self


def joint_rep_direct_sum(rho: DensityState, sigma: DensityState) -> JointRepresentationTuple:
    """Joint representation tuple on the direct sum of the two GNS spaces.

    The cyclic slots are swapped by a self-adjoint unitary (the orthogonal
    complement of each cyclic vector is left alone), and the second action
    is the first conjugated by that swap, so both states are implemented by
    the single vector x1 (+) 0.
    """
    if rho.dimension != sigma.dimension:
        raise DimensionMismatch("joint_rep_direct_sum: dimension mismatch")
    n = rho.dimension
    rep_a, x1 = gns_state(rho)
    rep_b, x2 = gns_state(sigma)
    k = rep_a.space_dim
    big = 2 * k
    images1 = np.zeros((n, n, big, big), dtype=complex)
    for i in range(n):
        for j in range(n):
            images1[i, j, :k, :k] = rep_a.unit_images[i, j]
            images1[i, j, k:, k:] = rep_b.unit_images[i, j]
    rep1 = Representation(algebra_dim=n, space_dim=big, unit_images=images1)
    p1 = np.zeros(big, dtype=complex)
    p1[:k] = x1
    p2 = np.zeros(big, dtype=complex)
    p2[k:] = x2
    swap = np.eye(big, dtype=complex) \
        - np.outer(p1, p1.conj()) - np.outer(p2, p2.conj()) \
        + np.outer(p2, p1.conj()) + np.outer(p1, p2.conj())
    images2 = np.einsum("pq,ijqr,rs->ijps", dagger(swap), images1, swap)
    rep2 = Representation(algebra_dim=n, space_dim=big, unit_images=images2)
    return JointRepresentationTuple(rep1=rep1, rep2=rep2, x=p1)


# ---------------------------------------------------------------------------
# dilations of contractions
# ---------------------------------------------------------------------------

@dataclass
class DilationResult:
    """Unitary dilation of a contraction on the doubled space."""

    t: np.ndarray
    w: np.ndarray
    v: np.ndarray
    defect1: np.ndarray  # (I - T^dag T)^(1/2)
    defect2: np.ndarray  # (I - T T^dag)^(1/2)
    half_gap: float          # lambda_min(T + T^dag) / 2 of the input
    achieved_half_gap: float  # lambda_min(V + V^dag) / 2 of the dilation


def _check_contraction(t) -> np.ndarray:
    t = as_square(t, "contraction")
    nrm = operator_norm(t)
    if nrm > 1.0 + 1e-10:
        raise InvariantViolation(f"expected a contraction, got norm {nrm:.12f}")
    if nrm > 1.0:
        t = t / nrm
    return t


def _defects(t: np.ndarray):
    """(I - T^dag T)^(1/2) and (I - T T^dag)^(1/2) from one SVD of T.

    Sharing the singular values keeps the intertwining T D1 = D2 T exact to
    machine precision even for contractions of norm exactly one.
    """
    u, s, vh = np.linalg.svd(t)
    root = np.sqrt(np.clip(1.0 - np.clip(s, 0.0, 1.0) ** 2, 0.0, None))
    d1 = dagger(vh) @ (root[:, None] * vh)
    d2 = u @ (root[:, None] * dagger(u))
    return 0.5 * (d1 + dagger(d1)), 0.5 * (d2 + dagger(d2))


def halmos_dilation(t, w) -> DilationResult:
    """Block unitary [[T, -D2 W], [D1, T^dag W]] with defects D_i.

    Every unitary dilation of a strict contraction on the doubled space is
    unitarily equivalent to one of this form, W a free unitary block.
    """
    t = _check_contraction(t)
    n = t.shape[0]
    w = as_square(w, "free unitary block")
    if w.shape[0] != n:
        raise DimensionMismatch("halmos_dilation: W size mismatch")
    if operator_norm(w @ dagger(w) - np.eye(n)) > 1e-9:
        raise InvariantViolation("halmos_dilation: W is not unitary")
    d1, d2 = _defects(t)
    v = np.block([[t, -d2 @ w], [d1, dagger(t) @ w]])
    if operator_norm(dagger(v) @ v - np.eye(2 * n)) > 1e-9:
        raise InvariantViolation("halmos_dilation: dilation failed unitarity check")
    half_gap = float(np.linalg.eigvalsh(t + dagger(t))[0]) / 2.0
    achieved = float(np.linalg.eigvalsh(v + dagger(v))[0]) / 2.0
    return DilationResult(t=t, w=w, v=v, defect1=d1, defect2=d2,
                          half_gap=half_gap, achieved_half_gap=achieved)


def _ascent_lambda_min(t, d1, d2, two_r, *, seed, restarts, max_steps, tol):
    """Maximize lambda_min(V(W) + V(W)^dag) over unitary W.

    The maximum over all dilations equals 2r = lambda_min(T + T^dag) exactly
    (compress to a bottom eigenvector of T + T^dag), and positivity of the
    block matrix forces W to map D1 v to D2 v on that eigenspace.  Fixing
    this coupling, the forced vectors become exact kernel directions of
    V + V^dag - 2r, so they are deflated from the objective and the ascent
    over the remaining free unitary block is no longer degenerate at the
    optimum.  The smoothed (softmax-weighted) eigenvalue gradient with a
    Cayley retraction then converges quickly; random restarts guard the
    rare bad basin.
    """
    n = t.shape[0]
    s_block = t + dagger(t)
    eye = np.eye(n, dtype=complex)
    s_eigs, s_vecs = np.linalg.eigh(s_block)
    kdim = max(1, int(np.sum(s_eigs <= two_r + 1e-8 * max(1.0, abs(two_r)))))
    kernel = s_vecs[:, :kdim]

    a_cols = d1 @ kernel
    b_cols = d2 @ kernel
    ua, sa, vha = np.linalg.svd(a_cols, full_matrices=False)
    rank = int(np.sum(sa > 1e-8))
    if rank:
        qa = ua[:, :rank]
        qb = b_cols @ vha.conj().T[:, :rank] @ np.diag(1.0 / sa[:rank])
        qb, rb = np.linalg.qr(qb)
        db = np.diagonal(rb)
        qb = qb * (db / np.abs(db))
    else:
        qa = np.zeros((n, 0), dtype=complex)
        qb = np.zeros((n, 0), dtype=complex)

    def completion(q):
        if q.shape[1] == 0:
            return np.eye(n, dtype=complex)
        u, _, _ = np.linalg.svd(q)
        return u[:, q.shape[1]:]

    pa = completion(qa)
    pb = completion(qb)
    free = pa.shape[1]
    w_fixed = qb @ dagger(qa)

    # complement of the forced kernel directions {(v, 0) : v in kernel}
    k_perp = completion(kernel)
    comp = np.zeros((2 * n, 2 * n - kdim), dtype=complex)
    comp[:n, :n - kdim] = k_perp
    comp[n:, n - kdim:] = eye

    def assemble_w(w_free):
        if free == 0:
            return w_fixed
        return w_fixed + pb @ w_free @ dagger(pa)

    def h_of(w):
        top_right = d1 - d2 @ w
        bottom = dagger(t) @ w + dagger(w) @ t
        return np.block([[s_block, top_right], [dagger(top_right), bottom]])

    def full_lam(w):
        return float(np.linalg.eigvalsh(h_of(w))[0])

    def deflated(w):
        hm = dagger(comp) @ h_of(w) @ comp
        return np.linalg.eigh(hm)

    rng = rng_for(seed, 7)
    target = two_r - 0.25 * tol
    best_w, best_val = assemble_w(np.eye(free, dtype=complex)), -np.inf
    for restart in range(restarts):
        w_free = np.eye(free, dtype=complex) if restart == 0 else haar_unitary(free, rng)
        if free == 0:
            w = assemble_w(None)
            return w, full_lam(w)
        lam_d, _ = deflated(assemble_w(w_free))
        val = float(lam_d[0])
        for it in range(max_steps):
            w = assemble_w(w_free)
            if val >= two_r - 0.5 * tol:
                true_val = full_lam(w)
                if true_val > best_val:
                    best_val, best_w = true_val, w
                if true_val >= target:
                    return best_w, best_val
            lam_d, vec_d = deflated(w)
            # softmax-smoothed subgradient of the smallest deflated eigenvalue
            beta = 10.0 ** (2 + min(it // 30, 5))
            weights = np.exp(-beta * (lam_d - lam_d[0]))
            weights /= weights.sum()
            vecs_full = comp @ vec_d
            proj = (vecs_full * weights) @ dagger(vecs_full)
            p21 = proj[n:, :n]
            p22 = proj[n:, n:]
            grad_w = -p21 @ d2 + p22 @ dagger(t)
            grad_free = dagger(pa) @ grad_w @ pb
            p_mat = grad_free @ w_free
            omega = 0.5 * (dagger(p_mat) - p_mat)
            onorm = np.linalg.norm(omega)
            if onorm <= 1e-14:
                jitter = 0.05 * (rng.standard_normal((free, free))
                                 + 1j * rng.standard_normal((free, free)))
                omega = 0.5 * (dagger(jitter) - jitter)
                onorm = np.linalg.norm(omega)
            eta = (two_r + 1e-8 - val) / max(2.0 * onorm * onorm, 1e-14)
            eta = float(np.clip(eta, 1e-6 / onorm, 0.5 / onorm))
            improved = False
            for _ in range(10):
                half = 0.5 * eta * omega
                cay = np.linalg.solve(np.eye(free) - half, np.eye(free) + half)
                w_try = w_free @ cay
                lam_try, _ = deflated(assemble_w(w_try))
                if lam_try[0] > val + 1e-16:
                    w_free, val = w_try, float(lam_try[0])
                    improved = True
                    break
                eta *= 0.5
            if not improved:
                jitter = 0.02 * (rng.standard_normal((free, free))
                                 + 1j * rng.standard_normal((free, free)))
                half = 0.25 * (dagger(jitter) - jitter)
                w_free = w_free @ np.linalg.solve(np.eye(free) - half,
                                                  np.eye(free) + half)
                lam_d, _ = deflated(assemble_w(w_free))
                val = float(lam_d[0])
        w = assemble_w(w_free)
        true_val = full_lam(w)
        if true_val > best_val:
            best_val, best_w = true_val, w
        if best_val >= target:
            return best_w, best_val
    return best_w, best_val


def choi_li_dilation(t, *, seed=None, restarts=16, max_steps=2000,
                     tol: float = 1e-6) -> DilationResult:
    """Unitary dilation V of a contraction with lambda_min(V + V^dag) >= 2r.

    r is lambda_min(T + T^dag)/2 of the input; a dilation achieving the same
    lower bound always exists.  For normal T the identity free block is
    exact; otherwise the block is found by ascent and a search failure is
    raised explicitly (it signals an optimizer deficiency, never a math gap).
    """
    t = _check_contraction(t)
    n = t.shape[0]
    eye = np.eye(n, dtype=complex)
    two_r = float(np.linalg.eigvalsh(t + dagger(t))[0])
    scale = max(1.0, operator_norm(t))
    if operator_norm(commutator(t, dagger(t))) <= 1e-12 * scale * scale:
        result = halmos_dilation(t, eye)
        # normal T: defects coincide, so V + V^dag is block diagonal at 2r exactly
        return result
    d1, d2 = _defects(t)
    w_best, achieved = _ascent_lambda_min(t, d1, d2, two_r, seed=seed,
                                          restarts=restarts, max_steps=max_steps, tol=tol)
    if achieved < two_r - tol:
        raise DilationSearchError(
            f"dilation search failed: best lambda_min {achieved:.3e} "
            f"below target {two_r:.3e}",
            best_lambda_min=achieved,
        )
    return halmos_dilation(t, w_best)


# ---------------------------------------------------------------------------
# intertwining unitary for isometry pairs
# ---------------------------------------------------------------------------

@dataclass
class IntertwinerResult:
    unitary: np.ndarray
    scalar_distance_bound: float
    phase: float
    min_modulus: float
    contains_zero: bool
    compressed: np.ndarray
    space_dim: int


def rescale_isometry_pair(x_iso, y_iso, r: float = 1.0 - 1e-4):
    """Embed a pair of isometries into the doubled codomain with ||X^dag Y|| < 1.

    X_r = X (+) 0 and Y_r = r Y (+) sqrt(1 - r^2) Y remain isometries for the
    same pair of maps and satisfy ||X_r^dag Y_r|| <= r.
    """
    x = as_matrix(x_iso, "X")
    y = as_matrix(y_iso, "Y")
    if x.shape != y.shape:
        raise DimensionMismatch("rescale_isometry_pair: shape mismatch")
    g, m = x.shape
    zeros = np.zeros((g, m), dtype=complex)
    xr = np.vstack([x, zeros])
    yr = np.vstack([r * y, np.sqrt(max(0.0, 1.0 - r * r)) * y])
    return xr, yr


def intertwining_unitary(x_iso, y_iso, *, angle_count: int = 512,
                         seed=None) -> IntertwinerResult:
    """Unitary U on the doubled space with UX = Y and small scalar distance.

    Writing T for the phase-aligned compression X^dag Y and r for the
    distance from 0 to the numerical range of T, the construction produces
    U with dist_to_scalars(U) <= sqrt(1 - r^2): rotate Y by the min-modulus
    phase, complete X with C = (Y - X T) Delta^{-1}, place a constrained
    dilation of T in the (X, C) coordinates and extend by the identity.
    """
    x = as_matrix(x_iso, "X")
    y = as_matrix(y_iso, "Y")
    if x.shape != y.shape:
        raise DimensionMismatch("intertwining_unitary: isometries of different shapes")
    g, m = x.shape
    if g < 2 * m:
        raise DimensionMismatch(
            "intertwining_unitary: codomain must have room for the complement "
            f"(need rows >= 2 cols, got {x.shape})"
        )
    eye_m = np.eye(m, dtype=complex)
    for name, z in (("X", x), ("Y", y)):
        if operator_norm(dagger(z) @ z - eye_m) > 1e-9:
            raise InvariantViolation(f"intertwining_unitary: {name} is not an isometry")

    big = 2 * g
    if operator_norm(x - y) <= 1e-10:
        return IntertwinerResult(unitary=np.eye(big, dtype=complex),
                                 scalar_distance_bound=0.0, phase=0.0,
                                 min_modulus=1.0, contains_zero=False,
                                 compressed=dagger(x) @ y, space_dim=g)

    t0 = dagger(x) @ y
    if operator_norm(t0) >= 1.0 - 1e-8:
        raise InvariantViolation(
            "intertwining_unitary: ||X^dag Y|| >= 1; rescale the pair first "
            "(rescale_isometry_pair)"
        )
    nr = numerical_range(t0, angle_count)
    if nr.contains_zero:
        theta, r = 0.0, 0.0
    else:
        theta = float(np.angle(nr.min_modulus_point))
        r = float(min(nr.min_modulus, 1.0))
    y_rot = np.exp(-1j * theta) * y
    t = dagger(x) @ y_rot

    delta_sq = np.eye(m, dtype=complex) - dagger(t) @ t
    delta = psd_sqrt(delta_sq)
    c = (y_rot - x @ t) @ np.linalg.inv(delta)
    if operator_norm(dagger(c) @ c - eye_m) > 1e-8:
        raise InvariantViolation("intertwining_unitary: complement is not an isometry")
    if operator_norm(dagger(x) @ c) > 1e-8:
        raise InvariantViolation("intertwining_unitary: complement not orthogonal to X")

    dil = choi_li_dilation(t, seed=seed)
    xc = np.hstack([x, c])  # g x 2m, orthonormal columns
    u_tilde = xc @ dil.v @ dagger(xc) + (np.eye(g, dtype=complex) - xc @ dagger(xc))
    u = np.zeros((big, big), dtype=complex)
    u[:g, :g] = u_tilde
    u[g:, g:] = np.eye(g, dtype=complex)
    u = np.exp(1j * theta) * u

    if operator_norm(dagger(u) @ u - np.eye(big)) > 1e-8:
        raise InvariantViolation("intertwining_unitary: result is not unitary")
    x_emb = np.vstack([x, np.zeros((g, m), dtype=complex)])
    y_emb = np.vstack([y, np.zeros((g, m), dtype=complex)])
    if operator_norm(u @ x_emb - y_emb) > 1e-8:
        raise InvariantViolation("intertwining_unitary: UX != Y")

    bound = float(np.sqrt(max(0.0, 1.0 - r * r)))
    return IntertwinerResult(unitary=u, scalar_distance_bound=bound, phase=theta,
                             min_modulus=r, contains_zero=nr.contains_zero,
                             compressed=t, space_dim=g)
