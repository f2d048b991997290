"""Independent oracles used to pin expected values.

Each oracle deliberately avoids the code path it checks: eigenvalues come
from characteristic polynomials, Chebyshev radii from grid searches,
fidelities from purification searches on the unitary group, norms from
random duality sampling.
"""

import numpy as np


def dagger(a):
    return np.asarray(a).conj().T


def quadratic_eigs(h):
    """Roots of the characteristic polynomial of a 2x2 Hermitian matrix."""
    tr = float(np.trace(h).real)
    det = float(np.linalg.det(h).real)
    disc = max(tr * tr - 4.0 * det, 0.0)
    lo = (tr - np.sqrt(disc)) / 2.0
    hi = (tr + np.sqrt(disc)) / 2.0
    return np.array([lo, hi])


def chebyshev_radius_grid(points, refine: int = 3):
    """min over lambda of max_k |mu_k - lambda| by nested grid search."""
    points = np.asarray(points, dtype=complex)
    lo_re, hi_re = points.real.min() - 1.0, points.real.max() + 1.0
    lo_im, hi_im = points.imag.min() - 1.0, points.imag.max() + 1.0
    best = (np.inf, 0.0 + 0.0j)
    for _ in range(refine + 4):
        res = 61
        lams = (np.linspace(lo_re, hi_re, res)[:, None]
                + 1j * np.linspace(lo_im, hi_im, res)[None, :]).reshape(-1)
        vals = np.max(np.abs(points[None, :] - lams[:, None]), axis=1)
        idx = int(np.argmin(vals))
        if vals[idx] < best[0]:
            best = (float(vals[idx]), complex(lams[idx]))
        span_re = (hi_re - lo_re) / 8.0
        span_im = (hi_im - lo_im) / 8.0
        lo_re, hi_re = best[1].real - span_re, best[1].real + span_re
        lo_im, hi_im = best[1].imag - span_im, best[1].imag + span_im
    return best


def haar_unitary(n, rng):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def purification_overlap_search(rho, sigma, rng, restarts: int = 200,
                                steps: int = 120):
    """max over unitaries W of |tr(sqrt(rho) sqrt(sigma) W)| by manifold ascent.

    Riemannian gradient ascent on the unitary group from random starts; no
    polar-factor shortcut, so the search is independent of the closed form
    it certifies.
    """
    def msqrt(p):
        w, q = np.linalg.eigh(p)
        return (q * np.sqrt(np.clip(w, 0, None))) @ dagger(q)

    m = msqrt(rho) @ msqrt(sigma)
    n = m.shape[0]
    best = 0.0
    for _ in range(restarts):
        w = haar_unitary(n, rng)
        val = abs(np.trace(m @ w))
        for _ in range(steps):
            # maximize Re(conj(phase) tr(M W)) along W exp(eta Omega)
            phase = np.trace(m @ w)
            phase = phase / abs(phase) if abs(phase) > 1e-14 else 1.0
            gw = np.conj(phase) * (m @ w)
            omega = 0.5 * (dagger(gw) - gw)
            onorm = np.linalg.norm(omega)
            if onorm < 1e-13:
                break
            eta = min(1.0, 0.5 / onorm)
            improved = False
            for _ in range(20):
                half = 0.5 * eta * omega
                cay = np.linalg.solve(np.eye(n) - half, np.eye(n) + half)
                w_try = w @ cay
                val_try = abs(np.trace(m @ w_try))
                if val_try > val + 1e-16:
                    w, val = w_try, val_try
                    improved = True
                    break
                eta *= 0.5
            if not improved:
                break
        best = max(best, val)
    return best


def trace_norm_ascent(delta, steps: int = 300):
    """sup over Hermitian contractions a of |tr(delta a)| by projected ascent.

    Projected gradient with eigenvalue clipping; independent of the SVD
    trace-norm formula.
    """
    n = delta.shape[0]
    a = np.zeros((n, n), dtype=complex)
    best = 0.0
    for t in range(steps):
        a = a + (1.0 / np.sqrt(t + 1.0)) * delta
        w, q = np.linalg.eigh(0.5 * (a + dagger(a)))
        a = (q * np.clip(w, -1.0, 1.0)) @ dagger(q)
        best = max(best, abs(np.trace(delta @ a)))
    return best


def random_density(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    p = g @ dagger(g)
    return p / np.trace(p).real


def commutant_bruteforce(generators):
    """Null space of the commutation system assembled entry by entry."""
    n = generators[0].shape[0]
    gens = list(generators) + [dagger(g) for g in generators]
    rows = []
    for a in gens:
        for p in range(n):
            for q in range(n):
                row = np.zeros(n * n, dtype=complex)
                for r in range(n):
                    for s in range(n):
                        # coefficient of X[r, s] in (XA - AX)[p, q]
                        coef = 0.0 + 0.0j
                        if r == p:
                            coef += a[s, q]
                        if s == q:
                            coef -= a[p, r]
                        row[r * n + s] = coef
                rows.append(row)
    system = np.asarray(rows)
    _, s, vh = np.linalg.svd(system)
    scale = s[0] if s.size and s[0] > 0 else 1.0
    keep = [i for i in range(vh.shape[0])
            if (s[i] if i < s.size else 0.0) <= 1e-10 * scale]
    return [vh[i].conj().reshape(n, n) for i in keep]
