"""Reduced density matrices, negativity, separability distance, entropy.

Row/column index convention for reduced matrices: bit ``i`` of the index
corresponds to ``sites[i]`` (first retained site is the least significant
bit). Matrices carry the frame of the state they were traced from; all
reported quantities are invariant under that per-spin rotation.
"""

from dataclasses import dataclass

import numpy as np

from .basis import CapacityError

MAX_KEPT_SITES = 14
PSD_WINDOW = 1e-10
TRACE_TOL = 1e-8


class InvalidStateError(Exception):
    """A density matrix violates trace/positivity beyond roundoff."""


@dataclass(eq=False)
class DensityMatrix:
    """Hermitian unit-trace matrix over an ordered subset of sites."""

    sites: tuple
    matrix: np.ndarray
    frame: str = "z"

    @property
    def n_sites(self):
        return len(self.sites)

    def validate(self):
        tr = np.trace(self.matrix)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace {tr} deviates from 1")
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > 1e-12:
            raise InvalidStateError("matrix is not Hermitian")
        w = np.linalg.eigvalsh(self.matrix)
        if w[0] < -PSD_WINDOW:
            raise InvalidStateError(f"negative eigenvalue {w[0]} beyond roundoff")


@dataclass(frozen=True)
class EntanglementReport:
    negativity: float
    dsb: float
    entropy: float
    min_pt_eigenvalue: float


def _spread_bits(count, positions):
    """Index table mapping a compact integer onto scattered bit positions."""
    out = np.zeros(1 << count, dtype=np.int64)
    compact = np.arange(1 << count, dtype=np.int64)
    for i, pos in enumerate(positions):
        out |= ((compact >> i) & 1) << pos
    return out


def reduce_state(psi, keep):
    """Partial trace of |psi><psi| keeping the given sites (any subset)."""
    keep = list(keep)
    n = psi.basis.n_spins
    if not keep:
        raise ValueError("keep must be nonempty")
    if len(set(keep)) != len(keep):
        raise ValueError("repeated site in keep")
    if any(s < 0 or s >= n for s in keep):
        raise ValueError(f"keep sites must lie in [0, {n})")
    if len(keep) > MAX_KEPT_SITES:
        raise CapacityError(f"cannot keep more than {MAX_KEPT_SITES} sites densely")

    full = psi.expand_full().normalized()
    comp = [s for s in range(n) if s not in keep]
    rows = _spread_bits(len(keep), keep)
    cols = _spread_bits(len(comp), comp)
    mat = full.amplitudes[rows[:, None] | cols[None, :]]
    rho = mat @ mat.conj().T
    return DensityMatrix(tuple(keep), rho, psi.basis.frame)


def partial_transpose(rho, subsystem_a):
    """Transpose the indices of subsystem A; Hermitian involution."""
    a = set(subsystem_a)
    sites = rho.sites
    if not a or not a < set(sites):
        raise ValueError("subsystem_a must be a proper nonempty subset of sites")
    k = len(sites)
    # tensor axes: axis (k-1-i) is the row bit of sites[i], axis (2k-1-i) the
    # column bit (numpy reshape puts the last axis fastest)
    tens = rho.matrix.reshape((2,) * (2 * k))
    perm = list(range(2 * k))
    for i, s in enumerate(sites):
        if s in a:
            perm[k - 1 - i], perm[2 * k - 1 - i] = perm[2 * k - 1 - i], perm[k - 1 - i]
    return tens.transpose(perm).reshape(1 << k, 1 << k)


def min_pt_eigenvalue(rho, subsystem_a=None):
    if subsystem_a is None:
        subsystem_a = (rho.sites[0],)
    pt = partial_transpose(rho, subsystem_a)
    return float(np.linalg.eigvalsh(pt)[0])


def negativity(rho, subsystem_a=None):
    """Twice the magnitude of the most negative PT eigenvalue, floored at 0."""
    return max(0.0, dsb(rho, subsystem_a))


def dsb(rho, subsystem_a=None):
    """Distance from the separability boundary: -2 min PT eigenvalue."""
    return -2.0 * min_pt_eigenvalue(rho, subsystem_a)


def von_neumann(rho):
    """Base-2 entropy of a density matrix; 0 log 0 := 0."""
    tr = float(np.real(np.trace(rho.matrix)))
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace {tr} deviates from 1 beyond {TRACE_TOL}")
    w = np.linalg.eigvalsh(rho.matrix)
    if w[0] < -PSD_WINDOW:
        raise InvalidStateError(f"eigenvalue {w[0]} below the PSD roundoff window")
    w = np.clip(w, 0.0, 1.0)
    w = w[w > 0.0]
    return float(-(w * np.log2(w)).sum())


def entanglement_report(rho, subsystem_a=None):
    lam_min = min_pt_eigenvalue(rho, subsystem_a)
    return EntanglementReport(
        negativity=max(0.0, -2.0 * lam_min),
        dsb=-2.0 * lam_min,
        entropy=von_neumann(rho),
        min_pt_eigenvalue=lam_min,
    )


# --- analytic frontal-pair forms -----------------------------------------

def frontal_pair_analytic(m, g):
    """Diagonal x-frame density matrix of a same-site sigma-tau pair.

    Entries are u = 1/4 + m/2 + g/4, v = 1/4 - g/4 (twice), and
    w = 1/4 - m/2 + g/4, with m the x magnetization and g the on-site
    sigma-tau x correlator.
    """
    if not -1.0 <= m <= 1.0 or not -1.0 <= g <= 1.0:
        raise ValueError("m and g must lie in [-1, 1]")
    u = 0.25 + 0.5 * m + 0.25 * g
    v = 0.25 - 0.25 * g
    w = 0.25 - 0.5 * m + 0.25 * g
    for entry in (u, v, w):
        if entry < -PSD_WINDOW or entry > 1.0 + PSD_WINDOW:
            raise ValueError(f"inconsistent inputs: diagonal entry {entry}")
    return DensityMatrix((0, 1), np.diag([u, v, v, w]).astype(float), frame="x")


def lambda_analytic(m, g, delta):
    """Piecewise separability distance of the frontal pair.

    The minimizing PT eigenvalue switches branch exactly at delta = 1.
    """
    if delta <= 1.0:
        return -0.5 + m - 0.5 * g
    return -0.5 + 0.5 * g


def dimer_quartet_analytic():
    """Four-site density matrix of the strong-staggering limit.

    Two maximally mixed edge qubits around a pure triplet-0 inner pair;
    ordering matches reduce_state with keep = (s, s+1, s+2, s+3).
    """
    t0 = np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2.0)
    inner = np.outer(t0, t0)
    half = np.eye(2) / 2.0
    return np.kron(half, np.kron(inner, half))
