"""Dense and Lanczos eigensolvers for the sparse chain Hamiltonians."""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .basis import CapacityError, QuantumState

DENSE_LIMIT = 4096
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1000
GAP_TOL_REL = 1e-8


class ConvergenceError(Exception):
    """Lanczos failed to reach the residual tolerance."""

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


@dataclass(eq=False)
class EigenResult:
    """Ascending eigenvalues with matching states and residual info."""

    energies: np.ndarray
    states: List[QuantumState]
    residuals: np.ndarray
    converged: List[bool]
    gap: Optional[float] = None
    degenerate: bool = False

    @property
    def ground_energy(self):
        return float(self.energies[0])

    @property
    def ground_state(self):
        return self.states[0]


def dense_spectrum(h):
    """Full symmetric eigendecomposition; oracle for small dimensions."""
    if h.dim > DENSE_LIMIT:
        raise CapacityError(f"dense solve refused at dimension {h.dim} > {DENSE_LIMIT}")
    w, v = np.linalg.eigh(h.dense())
    states = [QuantumState(v[:, i].copy(), h.basis, float(w[i]))
              for i in range(len(w))]
    residuals = np.zeros(len(w))
    gap = float(w[1] - w[0]) if len(w) > 1 else None
    degenerate = gap is not None and gap < GAP_TOL_REL * max(abs(w[0]), 1.0)
    return EigenResult(w, states, residuals, [True] * len(w), gap, degenerate)


def _lanczos_run(matvec, dim, k, tol, max_iter, rng):
    """One Lanczos pass with full reorthogonalization.

    Returns (thetas, vectors, residual_estimates, n_iter) for the lowest k
    Ritz pairs of the Krylov subspace built so far.
    """
    m_cap = min(max_iter, dim)
    Q = np.empty((dim, min(m_cap, 64)))
    alphas = []
    betas = []
    q = rng.uniform(-1.0, 1.0, dim)
    q /= np.linalg.norm(q)
    Q[:, 0] = q
    j = 0
    scale = 1.0
    while True:
        u = matvec(q)
        alpha = float(q @ u)
        alphas.append(alpha)
        scale = max(scale, abs(alpha))
        u -= alpha * q
        if j > 0:
            u -= betas[-1] * Q[:, j - 1]
        # full reorthogonalization against all stored vectors (twice for safety)
        for _ in range(2):
            u -= Q[:, :j + 1] @ (Q[:, :j + 1].T @ u)
        beta = float(np.linalg.norm(u))
        exhausted = beta < 1e-13 * scale

        theta = s = None
        if j + 1 >= k:
            theta, s = eigh_tridiagonal(
                np.asarray(alphas), np.asarray(betas),
                select="i", select_range=(0, k - 1))
            est = (0.0 if exhausted else beta) * np.abs(s[-1, :])
            done = np.all(est <= 0.1 * tol) or j + 1 >= m_cap
            if done or (exhausted and j + 1 >= dim):
                vectors = Q[:, :j + 1] @ s
                return theta, vectors, est, j + 1

        if exhausted:
            # invariant subspace before convergence: deflate with a fresh
            # random direction and a zero coupling in the tridiagonal
            u = rng.uniform(-1.0, 1.0, dim)
            u -= Q[:, :j + 1] @ (Q[:, :j + 1].T @ u)
            nrm = float(np.linalg.norm(u))
            if nrm < 1e-13 or j + 1 >= dim:
                vectors = Q[:, :j + 1] @ s if s is not None else Q[:, :j + 1]
                est = np.zeros(k)
                return theta, vectors, est, j + 1
            q = u / nrm
            betas.append(0.0)
        else:
            q = u / beta
            betas.append(beta)
        j += 1
        if j >= Q.shape[1]:
            Q = np.concatenate(
                [Q, np.empty((dim, min(m_cap - Q.shape[1], Q.shape[1])))], axis=1)
        Q[:, j] = q


def lanczos_ground(h, k=1, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, seed=0):
    """Lowest-k eigenpairs by Lanczos with full reorthogonalization.

    Deterministic for a given seed; restarts once from a reseeded vector on
    stagnation before raising ConvergenceError. Exactly degenerate levels
    are reported once (a single Krylov start vector cannot split them); use
    the dense path when the multiplicity itself matters.
    """
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if h.dim < k:
        raise ValueError(f"dimension {h.dim} smaller than requested k={k}")

    matvec = h.matvec
    best = None
    for attempt, s in enumerate((seed, seed + 1)):
        rng = np.random.default_rng(s)
        theta, vectors, _, _ = _lanczos_run(matvec, h.dim, k, tol, max_iter, rng)
        # true residuals on normalized Ritz vectors
        residuals = np.empty(k)
        for i in range(k):
            v = vectors[:, i]
            v /= np.linalg.norm(v)
            vectors[:, i] = v
            residuals[i] = np.linalg.norm(matvec(v) - theta[i] * v)
        if best is None or residuals.max() < best[2].max():
            best = (theta, vectors, residuals)
        if residuals.max() <= tol:
            break
    theta, vectors, residuals = best
    converged = [bool(r <= tol) for r in residuals]
    if not all(converged):
        raise ConvergenceError(
            f"Lanczos residual {residuals.max():.3e} above tol {tol:.1e} "
            f"after restart", best_residual=float(residuals.max()))
    states = [QuantumState(vectors[:, i].copy(), h.basis, float(theta[i]))
              for i in range(k)]
    gap = float(theta[1] - theta[0]) if k == 2 else None
    degenerate = gap is not None and gap < GAP_TOL_REL * max(abs(theta[0]), 1.0)
    return EigenResult(np.asarray(theta[:k]), states, residuals, converged,
                       gap, degenerate)


def ground_state(h, k=2, tol=DEFAULT_TOL, seed=0, dense_cutoff=1024):
    """Convenience ground-state solve: dense below the cutoff, else Lanczos."""
    k = min(k, h.dim)
    if h.dim <= dense_cutoff:
        res = dense_spectrum(h)
        return EigenResult(res.energies[:k], res.states[:k], res.residuals[:k],
                           res.converged[:k], res.gap, res.degenerate)
    return lanczos_ground(h, k=k, tol=tol, seed=seed)
