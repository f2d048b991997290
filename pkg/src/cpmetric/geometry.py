"""Commutants and operator-norm distance minimization.

Three computational problems live here:

* the commutant of a finitely generated *-subalgebra of M_n, obtained as
  the null space of the linear system [X, A_i] = [X, A_i^dag] = 0;
* the distance, in operator norm, from a matrix to the scalars or to a
  linear subspace of matrices, together with a certified duality gap
  (lower bounds come from trace-norm-one dual certificates that annihilate
  the subspace);
* the numerical range W(T) = { <v, Tv> : |v| = 1 } and its point of
  minimum modulus, computed through the support function of the convex
  set W(T).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvariantViolation
from .linalg import (
    as_square,
    commutator,
    dagger,
    hermitian_part,
    matrix_units,
    operator_norm,
    trace_norm,
)
from .sampling import rng_for
from .tolerances import active_profile


@dataclass
class StarAlgebraPresentation:
    """Generators of a *-subalgebra of M_n (adjoints appended internally)."""

    dimension: int
    generators: list

    def __post_init__(self):
        if not self.generators:
            raise InvariantViolation("StarAlgebraPresentation: need at least one generator")
        gens = []
        for g in self.generators:
            g = as_square(g, "generator")
            if g.shape[0] != self.dimension:
                raise DimensionMismatch(
                    f"generator of shape {g.shape} on ambient dimension {self.dimension}"
                )
            gens.append(g)
        self.generators = gens

    def closed_generators(self) -> list:
        """Generators together with their adjoints."""
        return self.generators + [dagger(g) for g in self.generators]


@dataclass
class SubspaceBasis:
    """Linearly independent (well-conditioned) basis of a subspace of M_n."""

    dimension: int
    basis: list

    def __post_init__(self):
        mats = [as_square(m, "basis element") for m in self.basis]
        if not mats:
            raise InvariantViolation("SubspaceBasis: empty basis")
        for m in mats:
            if m.shape[0] != self.dimension:
                raise DimensionMismatch("SubspaceBasis: mixed ambient dimensions")
        stack = np.stack([m.reshape(-1) for m in mats])
        gram = stack @ stack.conj().T
        sg = np.linalg.svd(gram, compute_uv=False)
        cond = sg[0] / sg[-1] if sg[-1] > 0 else np.inf
        if cond > 1e8:
            raise InvariantViolation(
                f"SubspaceBasis: Gram condition {cond:.3e} exceeds 1e8"
            )
        self.basis = mats

    @classmethod
    def span(cls, mats, dimension=None):
        """Build from an arbitrary spanning family by orthonormalizing it."""
        mats = [as_square(m, "basis element") for m in mats]
        if not mats:
            raise InvariantViolation("SubspaceBasis: empty spanning family")
        n = dimension if dimension is not None else mats[0].shape[0]
        for m in mats:
            if m.shape[0] != n:
                raise DimensionMismatch("SubspaceBasis: mixed ambient dimensions")
        stack = np.stack([m.reshape(-1) for m in mats])
        u, s, vh = np.linalg.svd(stack, full_matrices=False)
        rank = int(np.sum(s > max(1e-12 * s[0], 1e-300)))
        ortho = [vh[i].reshape(n, n) for i in range(rank)]
        return cls(dimension=n, basis=ortho)

    def __len__(self):
        return len(self.basis)

    def stacked(self) -> np.ndarray:
        return np.stack(self.basis)

    def orthonormal_stack(self) -> np.ndarray:
        """Basis re-orthonormalized in the Hilbert-Schmidt inner product."""
        stack = np.stack([b.reshape(-1) for b in self.basis])
        u, s, vh = np.linalg.svd(stack, full_matrices=False)
        rank = int(np.sum(s > max(1e-12 * s[0], 1e-300)))
        return vh[:rank].reshape(rank, self.dimension, self.dimension)


@dataclass
class DistanceResult:
    """Outcome of an operator-norm distance minimization."""

    distance: float
    witness: np.ndarray
    iterations: int
    certified_gap: float


@dataclass
class NumericalRangeSummary:
    boundary_points: np.ndarray
    boundary_vectors: np.ndarray
    min_modulus: float
    min_modulus_point: complex
    contains_zero: bool
    boundary_angles: np.ndarray = field(default=None)


# ---------------------------------------------------------------------------
# commutant
# ---------------------------------------------------------------------------

def commutant(alg: StarAlgebraPresentation) -> SubspaceBasis:
    """Orthonormal basis of {X : [X, A] = [X, A^dag] = 0 for all generators}.

    Null space of the stacked linear map X -> ([X, A_i])_i over the
    n^2-dimensional matrix space, via SVD.  Worst case the result is the
    scalars, which are always present.
    """
    n = alg.dimension
    eye = np.eye(n, dtype=complex)
    blocks = []
    for a in alg.closed_generators():
        # row-major vec: vec(XA - AX) = (I (x) A^T - A (x) I) vec(X)
        blocks.append(np.kron(eye, a.T) - np.kron(a, eye))
    system = np.vstack(blocks)
    u, s, vh = np.linalg.svd(system)
    scale = s[0] if s.size and s[0] > 0 else 1.0
    null_mask = np.concatenate([s, np.zeros(vh.shape[0] - s.size)]) <= 1e-10 * scale
    basis = [vh[i].conj().reshape(n, n) for i in range(vh.shape[0]) if null_mask[i]]
    if not basis:
        raise InvariantViolation("commutant: empty null space (scalars must commute)")
    res = SubspaceBasis(dimension=n, basis=basis)
    tol = active_profile()
    for x in res.basis:
        for a in alg.closed_generators():
            r = operator_norm(commutator(x, a))
            if r > 1e-10 * max(1.0, operator_norm(a)):
                raise InvariantViolation(f"commutant: residual {r:.3e} on a basis element")
    return res


# ---------------------------------------------------------------------------
# smallest enclosing circle of a finite point set in the plane
# ---------------------------------------------------------------------------

def _circumcircle(a: complex, b: complex, c: complex):
    ax, ay, bx, by, cx, cy = a.real, a.imag, b.real, b.imag, c.real, c.imag
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-14 * max(1.0, abs(a) + abs(b) + abs(c)) ** 2:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    center = complex(ux, uy)
    radius = max(abs(center - a), abs(center - b), abs(center - c))
    return center, radius


def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Andrew monotone chain on complex points."""
    pts = sorted(set(map(complex, points)), key=lambda z: (z.real, z.imag))
    if len(pts) <= 2:
        return np.asarray(pts)

    def cross(o, a, b):
        return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.asarray(lower[:-1] + upper[:-1])


def smallest_enclosing_circle(points):
    """Exact smallest circle enclosing points in the complex plane.

    Returns (center, radius, support points).  Brute force over pair and
    triple candidates on the convex hull; adequate for spectra at desk
    scale and fully deterministic.
    """
    pts = np.asarray(points, dtype=complex).reshape(-1)
    if pts.size == 0:
        raise InvariantViolation("smallest_enclosing_circle: no points")
    hull = _convex_hull(pts)
    if hull.size == 1:
        return complex(hull[0]), 0.0, [complex(hull[0])]
    scale = max(1.0, float(np.max(np.abs(hull))))
    cover_tol = 1e-12 * scale
    best = None
    m = hull.size
    for i in range(m):
        for j in range(i + 1, m):
            center = 0.5 * (hull[i] + hull[j])
            radius = abs(hull[i] - center)
            if best is not None and radius >= best[1]:
                continue
            if np.all(np.abs(pts - center) <= radius + cover_tol):
                best = (center, radius, [hull[i], hull[j]])
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                circ = _circumcircle(hull[i], hull[j], hull[k])
                if circ is None:
                    continue
                center, radius = circ
                if best is not None and radius >= best[1]:
                    continue
                if np.all(np.abs(pts - center) <= radius + cover_tol):
                    best = (center, radius, [hull[i], hull[j], hull[k]])
    if best is None:
        # fall back to the Chebyshev center of the bounding box (degenerate input)
        center = complex(np.mean(pts.real), np.mean(pts.imag))
        radius = float(np.max(np.abs(pts - center)))
        best = (center, radius, list(map(complex, hull)))
    center, radius, support = best
    support = [s for s in support if abs(abs(s - center) - radius) <= 1e-9 * max(1.0, radius)]
    return complex(center), float(radius), support


# ---------------------------------------------------------------------------
# dual certificates for spectral-norm minimization
# ---------------------------------------------------------------------------

def _project_tracenorm_ball(z: np.ndarray) -> np.ndarray:
    """Frobenius projection onto { Z : trace_norm(Z) <= 1 }."""
    u, s, vh = np.linalg.svd(z)
    total = s.sum()
    if total <= 1.0:
        return z
    # project singular values onto the l1 ball (simplex projection)
    mu = np.sort(s)[::-1]
    cssv = np.cumsum(mu) - 1.0
    idx = np.arange(1, len(mu) + 1)
    cond = mu - cssv / idx > 0
    rho = idx[cond][-1]
    theta = cssv[rho - 1] / rho
    s_new = np.clip(s - theta, 0.0, None)
    return (u * s_new) @ vh


def _max_linear_over_annihilator(g: np.ndarray, constraints: np.ndarray | None,
                                 iters: int = 400) -> tuple[float, np.ndarray]:
    """Maximize Re tr(Z^dag g) over { trace_norm(Z) <= 1 } annihilating constraints.

    Every evaluation point is made exactly feasible (constraint projection,
    then trace-norm scaling), so the returned value is always a valid lower
    bound for the paired primal problem.
    """
    d1, d2 = g.shape
    if constraints is not None and constraints.size:
        cmat = constraints.reshape(constraints.shape[0], -1)
        u, s, vh = np.linalg.svd(cmat, full_matrices=False)
        rank = int(np.sum(s > max(1e-12 * s[0], 1e-300))) if s.size else 0
        rows = vh[:rank]
    else:
        rows = np.zeros((0, d1 * d2), dtype=complex)

    def proj_constraints(z):
        if rows.shape[0] == 0:
            return z
        v = z.reshape(-1)
        # remove the component in span{vec(C_j)} (sesquilinear inner product)
        v = v - rows.T @ (rows.conj() @ v)
        return v.reshape(d1, d2)

    def feasible(z):
        z = proj_constraints(z)
        tn = trace_norm(z)
        if tn > 1.0:
            z = z / tn
        return z

    gp = proj_constraints(g)
    gscale = max(np.linalg.norm(gp), 1e-300)
    best_val, best_z = 0.0, np.zeros_like(g)
    z = feasible(gp / gscale)
    for t in range(iters):
        zf = feasible(z)
        val = float(np.real(np.vdot(zf, g)))
        if val > best_val:
            best_val, best_z = val, zf
        eta = 1.0 / (gscale * np.sqrt(t + 1.0))
        z = proj_constraints(z + eta * gp)
        z = _project_tracenorm_ball(z)
    return best_val, best_z


def _feasible_dual_value(t: np.ndarray, basis_stack: np.ndarray, m: np.ndarray) -> float:
    """Value of a candidate certificate after exact feasibility repair.

    Projects onto the annihilator of the subspace and rescales to unit trace
    norm, so the returned number is a valid lower bound no matter how the
    candidate was produced.
    """
    if m is None:
        return 0.0
    m = np.asarray(m, dtype=complex)
    if basis_stack.size:
        bvec = basis_stack.reshape(basis_stack.shape[0], -1)
        mv = m.reshape(-1)
        mv = mv - bvec.T @ (bvec.conj() @ mv)
        m = mv.reshape(m.shape)
    tn = trace_norm(m)
    if tn <= 1e-14:
        return 0.0
    return float(np.real(np.vdot(m, t))) / tn


def _dual_bound_sdp(t: np.ndarray, basis_stack: np.ndarray) -> float:
    """Near-exact dual bound from the small semidefinite program.

    maximize Re tr(M^dag t) over trace_norm(M) <= 1 with M annihilating the
    subspace; the solver output is re-projected and rescaled before its
    value is trusted.
    """
    try:
        import cvxpy as cp
    except ImportError:  # pragma: no cover - cvxpy is a hard dependency in practice
        return 0.0
    d1, d2 = t.shape
    m = cp.Variable((d1, d2), complex=True)
    constraints = [cp.normNuc(m) <= 1.0]
    for b in basis_stack:
        constraints.append(cp.trace(m.H @ b) == 0)
    problem = cp.Problem(cp.Maximize(cp.real(cp.trace(m.H @ t))), constraints)
    try:
        problem.solve(solver=cp.SCS, eps=1e-10, max_iters=20000, verbose=False)
    except (cp.SolverError, ValueError):
        try:
            problem.solve(verbose=False)
        except (cp.SolverError, ValueError):
            return 0.0
    if m.value is None:
        return 0.0
    return _feasible_dual_value(t, basis_stack, m.value)


def _primal_sdp(t: np.ndarray, basis_stack: np.ndarray):
    """Near-exact primal solve of min ||t - sum c_j B_j|| as a small SDP."""
    try:
        import cvxpy as cp
    except ImportError:  # pragma: no cover
        return None
    n = t.shape[0]
    kdim = basis_stack.shape[0]
    coeff = cp.Variable(kdim, complex=True)
    resid = cp.Constant(t)
    for j in range(kdim):
        resid = resid - coeff[j] * cp.Constant(basis_stack[j])
    objective = cp.Minimize(cp.sigma_max(resid))
    problem = cp.Problem(objective)
    try:
        problem.solve(solver=cp.SCS, eps=1e-10, max_iters=20000, verbose=False)
    except (cp.SolverError, ValueError):
        try:
            problem.solve(verbose=False)
        except (cp.SolverError, ValueError):
            return None
    if coeff.value is None:
        return None
    return np.asarray(coeff.value, dtype=complex)


def _dual_lower_bound(t: np.ndarray, basis_stack: np.ndarray, a: np.ndarray,
                      iters: int = 300) -> float:
    """Lower bound on min_{X in span} ||t - X|| from the residual a = t - X.

    Searches for a unit-trace-norm certificate supported on the top singular
    block of the residual, falling back to a full-space ascent.
    """
    u, s, vh = np.linalg.svd(a)
    if s.size == 0 or s[0] <= 0:
        return 0.0
    sigma1 = s[0]
    best = 0.0
    ks = sorted({int(np.sum(s >= sigma1 * (1.0 - 1e-6))),
                 int(np.sum(s >= sigma1 * (1.0 - 1e-3))),
                 min(int(np.sum(s >= sigma1 * (1.0 - 1e-3))) + 1, s.size)})
    for k in ks:
        if k <= 0:
            continue
        u1 = u[:, :k]
        v1 = vh[:k].conj().T
        ct = u1.conj().T @ t @ v1
        if basis_stack.size:
            cs = np.einsum("pi,kpq,qj->kij", u1.conj(), basis_stack, v1)
        else:
            cs = None
        val, _ = _max_linear_over_annihilator(ct, cs, iters=iters)
        best = max(best, val)
    # full-space ascent (slower, but not confined to the top block)
    val, _ = _max_linear_over_annihilator(t, basis_stack, iters=iters)
    best = max(best, val)
    return best


# ---------------------------------------------------------------------------
# distance to the scalars / to a subspace
# ---------------------------------------------------------------------------

def _scalar_certificate_normal(eigs: np.ndarray, center: complex, radius: float,
                               support: list) -> float:
    """Exact dual value for a normal target from enclosing-circle support points.

    A convex combination of the support phases that hits zero produces a
    unit-trace-norm, traceless certificate whose value is the radius.
    """
    if radius <= 0.0:
        return 0.0
    phases = np.array([(z - center) / radius for z in support], dtype=complex)
    k = len(phases)
    if k < 2:
        return 0.0
    # solve sum w_i phases_i = 0, sum w_i = 1, w >= 0 (least squares + clip)
    m = np.vstack([phases.real, phases.imag, np.ones(k)])
    rhs = np.array([0.0, 0.0, 1.0])
    w, *_ = np.linalg.lstsq(m, rhs, rcond=None)
    w = np.clip(w, 0.0, None)
    tot = w.sum()
    if tot <= 0:
        return 0.0
    w = w / tot
    resid = abs(np.sum(w * phases))
    # value of the certificate sum_i w_i conj(phase_i) mu_i, degraded by the residual
    val = float(np.real(np.sum(w * np.conj(phases) * np.array(support))))
    return max(0.0, val - resid * max(1.0, float(np.max(np.abs(support)))))


def dist_to_scalars(t) -> DistanceResult:
    """Distance, in operator norm, from t to the scalar multiples of I.

    For normal t this is the radius of the smallest circle enclosing the
    spectrum (solved exactly); otherwise the convex program is solved by
    the subspace engine with span{I}.
    """
    t = as_square(t, "dist_to_scalars input")
    n = t.shape[0]
    scale = max(1.0, operator_norm(t))
    if operator_norm(commutator(t, dagger(t))) <= 1e-12 * scale * scale:
        eigs = np.linalg.eigvals(t)
        center, radius, support = smallest_enclosing_circle(eigs)
        witness = center * np.eye(n, dtype=complex)
        lower = _scalar_certificate_normal(eigs, center, radius, support)
        dist = operator_norm(t - witness)
        return DistanceResult(distance=float(dist), witness=witness, iterations=0,
                              certified_gap=float(max(0.0, dist - lower)))
    basis = SubspaceBasis.span([np.eye(n, dtype=complex)])
    prof = active_profile()
    return dist_to_subspace(t, basis, target_gap=prof.scalar_gap)


def dist_to_subspace(t, subspace: SubspaceBasis, *, target_gap: float | None = None,
                     max_iters: int = 5000, restarts: int = 8, seed=None,
                     init_matrix=None, certificates=None) -> DistanceResult:
    """Minimize ||t - X|| over X in the span of the subspace basis.

    Projected subgradient on the coefficient space with Polyak steps fed by
    dual lower bounds; the certified gap is (best upper) - (best lower).
    The minimum is attained, so the witness is a genuine minimizer up to
    the reported gap.  Callers may pass candidate dual certificates; each is
    projected onto the annihilator of the subspace and normalized in trace
    norm before its value is folded into the lower bound.
    """
    t = as_square(t, "dist_to_subspace target")
    if subspace.dimension != t.shape[0]:
        raise DimensionMismatch(
            f"subspace ambient {subspace.dimension} vs target {t.shape[0]}"
        )
    prof = active_profile()
    if target_gap is None:
        target_gap = prof.subspace_gap
    bstack = subspace.orthonormal_stack()
    kdim = bstack.shape[0]
    bvec = bstack.reshape(kdim, -1)

    def assemble(c):
        return np.tensordot(c, bstack, axes=(0, 0))

    def value_and_step(c):
        a = t - assemble(c)
        u, s, vh = np.linalg.svd(a)
        u1 = u[:, 0]
        v1 = vh[0].conj()
        # moving c_j by eta * conj(u1^dag B_j v1) decreases the top singular value
        inner = np.einsum("i,kij,j->k", u1.conj(), bstack, v1)
        return float(s[0]), np.conj(inner), a

    # least-squares (Frobenius) projection of t is a natural starting point
    c_proj = bvec.conj() @ t.reshape(-1)
    starts = [c_proj]
    if init_matrix is not None:
        init_matrix = as_square(init_matrix, "init matrix")
        starts.insert(0, bvec.conj() @ init_matrix.reshape(-1))
    rng = rng_for(seed, 91)

    f0, _, a0 = value_and_step(starts[0])
    best_f, best_c = f0, starts[0]
    lower = _dual_lower_bound(t, bstack, a0)
    for cert in certificates or []:
        cert = as_square(cert, "dual certificate")
        cvecs = cert.reshape(-1) - bvec.T @ (bvec.conj() @ cert.reshape(-1))
        cproj = cvecs.reshape(cert.shape)
        tn = trace_norm(cproj)
        if tn > 1e-14:
            lower = max(lower, float(np.real(np.vdot(cproj, t))) / tn)
    total_iters = 0

    idle_restarts = 0
    for restart in range(restarts):
        if best_f - lower <= target_gap or idle_restarts >= 3:
            break
        f_before = best_f
        if restart < len(starts):
            c = starts[restart].copy()
        else:
            jitter = 0.3 * max(best_f, 1e-3) * (rng.standard_normal(kdim)
                                                + 1j * rng.standard_normal(kdim))
            c = best_c + jitter
        # level-controlled subgradient: aim delta below the incumbent, halve
        # the level gap and restart from the incumbent when progress stalls
        delta = max(0.5 * (best_f - lower), 10.0 * target_gap)
        stall = 0
        for it in range(max_iters):
            total_iters += 1
            f, step, a = value_and_step(c)
            if f < best_f - 0.1 * target_gap:
                best_f, best_c = f, c.copy()
                stall = 0
            else:
                stall += 1
            gap = best_f - lower
            if gap <= target_gap:
                break
            gnorm2 = float(np.sum(np.abs(step) ** 2))
            if gnorm2 <= 1e-30:
                break
            target_level = max(lower, best_f - delta)
            eta = (f - target_level) / gnorm2
            if eta <= 0:
                eta = 0.5 * delta / gnorm2
            c = c + eta * step
            if stall >= 60:
                delta *= 0.5
                c = best_c.copy()
                stall = 0
                if delta <= 0.25 * target_gap:
                    break
            if total_iters % 400 == 0:
                lower = max(lower, _dual_lower_bound(t, bstack, a))
        _, _, abest = value_and_step(best_c)
        lower = max(lower, _dual_lower_bound(t, bstack, abest, iters=600))
        idle_restarts = idle_restarts + 1 if best_f >= f_before - 1e-12 else 0

    if best_f - lower > target_gap:
        # the subgradient phase can stagnate on the non-smooth manifold away
        # from a warm start; polish derivative-free, then fall back to the
        # interior-point solves on both sides of the duality gap
        from scipy import optimize as _opt

        def as_real(c):
            return np.concatenate([c.real, c.imag])

        def from_real(x):
            return x[:kdim] + 1j * x[kdim:]

        nm = _opt.minimize(lambda x: value_and_step(from_real(x))[0],
                           as_real(best_c), method="Nelder-Mead",
                           options={"maxiter": 400 * kdim, "fatol": 1e-12,
                                    "xatol": 1e-10, "adaptive": True})
        if nm.fun < best_f:
            best_f, best_c = float(nm.fun), from_real(nm.x)
        if best_f - lower > target_gap:
            c_sdp = _primal_sdp(t, bstack)
            if c_sdp is not None:
                f_sdp, _, _ = value_and_step(c_sdp)
                if f_sdp < best_f:
                    best_f, best_c = float(f_sdp), c_sdp
            lower = max(lower, _dual_bound_sdp(t, bstack))
            _, _, abest = value_and_step(best_c)
            lower = max(lower, _dual_lower_bound(t, bstack, abest, iters=600))
    gap = max(0.0, best_f - lower)
    return DistanceResult(distance=float(best_f), witness=assemble(best_c),
                          iterations=total_iters, certified_gap=float(gap))


# ---------------------------------------------------------------------------
# numerical range
# ---------------------------------------------------------------------------

def _support_min(t: np.ndarray, phi: float) -> float:
    """lambda_min of the Hermitian part of e^{-i phi} t."""
    h = hermitian_part(np.exp(-1j * phi) * t)
    return float(np.linalg.eigvalsh(h)[0])


def numerical_range(t, angle_count: int = 512) -> NumericalRangeSummary:
    """Boundary samples of W(t) and its minimum-modulus point.

    Boundary points are extreme in each swept direction (top eigenvector of
    the rotated Hermitian part).  The distance from the origin to W(t) is
    the maximum over directions of the support minimum, refined by golden
    section to well below 1e-8.
    """
    t = as_square(t, "numerical_range input")
    if angle_count < 16:
        raise InvariantViolation("numerical_range: angle_count must be >= 16")
    n = t.shape[0]
    angles = np.linspace(0.0, 2.0 * np.pi, angle_count, endpoint=False)
    pts = np.empty(angle_count, dtype=complex)
    vecs = np.empty((angle_count, n), dtype=complex)
    support_mins = np.empty(angle_count)
    for idx, phi in enumerate(angles):
        h = hermitian_part(np.exp(-1j * phi) * t)
        w, q = np.linalg.eigh(h)
        v = q[:, -1]
        vecs[idx] = v
        pts[idx] = complex(np.vdot(v, t @ v))
        support_mins[idx] = w[0]

    best_idx = int(np.argmax(support_mins))
    lo = angles[best_idx] - 2.0 * np.pi / angle_count
    hi = angles[best_idx] + 2.0 * np.pi / angle_count
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c1 = b - invphi * (b - a)
    c2 = a + invphi * (b - a)
    f1, f2 = _support_min(t, c1), _support_min(t, c2)
    for _ in range(80):
        if f1 < f2:
            a, c1, f1 = c1, c2, f2
            c2 = a + invphi * (b - a)
            f2 = _support_min(t, c2)
        else:
            b, c2, f2 = c2, c1, f1
            c1 = b - invphi * (b - a)
            f1 = _support_min(t, c1)
    phi_star = 0.5 * (a + b)
    r_star = _support_min(t, phi_star)
    contains_zero = r_star <= 1e-12
    if contains_zero:
        r = 0.0
        point = 0.0 + 0.0j
    else:
        r = float(r_star)
        point = r * np.exp(1j * phi_star)
    return NumericalRangeSummary(
        boundary_points=pts,
        boundary_vectors=vecs,
        min_modulus=r,
        min_modulus_point=complex(point),
        contains_zero=bool(contains_zero),
        boundary_angles=angles,
    )


def full_matrix_algebra(n: int) -> StarAlgebraPresentation:
    """All matrix units of M_n as a presentation (irreducible algebra)."""
    units = [u for row in matrix_units(n) for u in row]
    return StarAlgebraPresentation(dimension=n, generators=units)
