"""Spin-1/2 computational bases, symmetry sectors, and Pauli-string operations.

States are labelled by integers: spin (or qubit) ``i`` occupies bit ``i``,
and bit value 0 means eigenvalue +1 of the diagonal Pauli of the basis
frame ("z" frame: sigma^z = +1, i.e. spin up; "x" frame: sigma^x = +1).
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

MAX_SPINS = 28  # one dense state vector stays under 8 GB

_CHUNK = 1 << 22  # basis enumeration chunk size


class CapacityError(Exception):
    """Requested object exceeds the supported problem size."""


class SectorViolationError(Exception):
    """An operator mapped a state out of its restricted sector."""


# --- sector descriptors ---------------------------------------------------

@dataclass(frozen=True)
class Full:
    """No symmetry restriction."""


@dataclass(frozen=True)
class SzFixed:
    """Fixed number of down spins (set bits); U(1) magnetization sector."""
    n_up: int


@dataclass(frozen=True)
class XParity:
    """Popcount parities (+1 even, -1 odd) of sigma bits and tau bits.

    Meaningful in the x frame, where the two species parity operators are
    diagonal. Sigma spins sit on even bit positions, tau spins on odd ones.
    """
    p1: int
    p2: int


def popcount(x):
    """Number of set bits; works elementwise on integer arrays."""
    x = np.asarray(x)
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(x).astype(np.int64)
    # SWAR fallback for 64-bit integers
    x = x.astype(np.uint64).copy()
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + (
        (x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return ((x * np.uint64(0x0101010101010101)) >> np.uint64(56)).astype(np.int64)


@dataclass(eq=False)
class SpinBasis:
    """Ordered list of basis labels, optionally restricted to a sector."""

    n_spins: int
    states: np.ndarray  # strictly increasing int64 labels
    sector: object = field(default_factory=Full)
    frame: str = "z"  # "z" or "x": which single-spin Pauli is diagonal

    @property
    def dim(self):
        return len(self.states)

    def index_of(self, labels):
        """Dense indices of the given labels; raises KeyError on a miss."""
        labels = np.asarray(labels, dtype=np.int64)
        idx = np.searchsorted(self.states, labels)
        bad = (idx >= self.dim) | (self.states[np.minimum(idx, self.dim - 1)] != labels)
        if np.any(bad):
            raise KeyError("label not in basis sector")
        return idx

    def is_full(self):
        return isinstance(self.sector, Full)


def build_basis(n_spins, sector=Full(), frame="z"):
    """Enumerate the basis of an ``n_spins`` chain restricted to ``sector``."""
    if not 1 <= n_spins <= MAX_SPINS:
        raise CapacityError(f"n_spins={n_spins} outside supported range [1, {MAX_SPINS}]")
    if frame not in ("z", "x"):
        raise ValueError(f"unknown frame {frame!r}")
    total = 1 << n_spins

    if isinstance(sector, Full):
        states = np.arange(total, dtype=np.int64)
        return SpinBasis(n_spins, states, sector, frame)

    if isinstance(sector, SzFixed):
        if not 0 <= sector.n_up <= n_spins:
            raise ValueError(f"n_up={sector.n_up} inconsistent with n_spins={n_spins}")
        keep = lambda s: popcount(s) == sector.n_up
    elif isinstance(sector, XParity):
        if sector.p1 not in (-1, 1) or sector.p2 not in (-1, 1):
            raise ValueError("parity eigenvalues must be +1 or -1")
        if n_spins % 2:
            raise ValueError("XParity sectors need an even number of spins")
        sigma_mask = np.int64(sum(1 << i for i in range(0, n_spins, 2)))
        tau_mask = np.int64(sum(1 << i for i in range(1, n_spins, 2)))
        want1 = 0 if sector.p1 == 1 else 1
        want2 = 0 if sector.p2 == 1 else 1
        keep = lambda s: ((popcount(s & sigma_mask) & 1) == want1) & (
            (popcount(s & tau_mask) & 1) == want2)
    else:
        raise ValueError(f"unknown sector descriptor {sector!r}")

    chunks = []
    for lo in range(0, total, _CHUNK):
        cand = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
        chunks.append(cand[keep(cand)])
    states = np.concatenate(chunks)
    return SpinBasis(n_spins, states, sector, frame)


# --- states ---------------------------------------------------------------

@dataclass(eq=False)
class QuantumState:
    """Amplitude vector over a SpinBasis."""

    amplitudes: np.ndarray
    basis: SpinBasis
    energy: Optional[float] = None

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self):
        return QuantumState(self.amplitudes / self.norm, self.basis, self.energy)

    def expand_full(self):
        """Embed a sector-restricted state into the full 2^n space."""
        if self.basis.is_full():
            return self
        full = build_basis(self.basis.n_spins, Full(), frame=self.basis.frame)
        amps = np.zeros(full.dim, dtype=self.amplitudes.dtype)
        amps[self.basis.states] = self.amplitudes
        return QuantumState(amps, full, self.energy)


# --- Pauli strings --------------------------------------------------------

_AXES = ("x", "y", "z")


@dataclass(frozen=True)
class PauliString:
    """Product of single-site Pauli operators on distinct sites."""

    terms: tuple  # ((site, axis), ...)
    coefficient: complex = 1.0

    def __post_init__(self):
        sites = [s for s, _ in self.terms]
        if len(set(sites)) != len(sites):
            raise ValueError("repeated site in Pauli string")
        for s, ax in self.terms:
            if s < 0:
                raise ValueError(f"negative site index {s}")
            if ax not in _AXES:
                raise ValueError(f"unknown axis {ax!r}")

    def x_frame(self):
        """Hadamard-conjugated string: x <-> z, y -> -y."""
        terms = []
        sign = 1.0
        for s, ax in self.terms:
            if ax == "x":
                terms.append((s, "z"))
            elif ax == "z":
                terms.append((s, "x"))
            else:
                terms.append((s, "y"))
                sign = -sign
        return PauliString(tuple(terms), self.coefficient * sign)


def pauli(*site_axis_pairs, coefficient=1.0):
    """Convenience constructor: pauli((0, 'x'), (3, 'z'))."""
    return PauliString(tuple(site_axis_pairs), coefficient)


def apply_pauli_string(string, psi):
    """Apply a Pauli string to a state (unnormalized result).

    The string is interpreted in the physical (z) frame; if the state lives
    in the x frame it is conjugated accordingly before acting. For a
    sector-restricted state the result must stay in the sector, otherwise a
    SectorViolationError is raised.
    """
    n = psi.basis.n_spins
    for s, _ in string.terms:
        if s >= n:
            raise ValueError(f"site {s} out of range for {n} spins")
    if psi.basis.frame == "x":
        string = string.x_frame()

    restricted = not psi.basis.is_full()
    work = psi.expand_full() if restricted else psi
    amps = work.amplitudes
    dim = len(amps)
    idx = np.arange(dim, dtype=np.int64)

    flip = 0
    has_y = any(ax == "y" for _, ax in string.terms)
    coeff = string.coefficient
    complex_out = has_y or np.iscomplexobj(amps) or (np.imag(coeff) != 0)
    factor = np.ones(dim, dtype=np.complex128 if complex_out else np.float64)
    for s, ax in string.terms:
        if ax in ("x", "y"):
            flip |= 1 << s
        if ax in ("y", "z"):
            b = (idx >> s) & 1
            sgn = 1 - 2 * b
            factor *= (1j * sgn) if ax == "y" else sgn
    out = np.zeros(dim, dtype=factor.dtype)
    out[idx ^ flip] = coeff * factor * amps

    if restricted:
        kept = out[psi.basis.states]
        total = np.linalg.norm(out) ** 2
        lost = total - np.linalg.norm(kept) ** 2
        if lost > 1e-12 * max(total, 1e-300):
            raise SectorViolationError("Pauli string maps out of the restricted sector")
        return QuantumState(kept, psi.basis)
    return QuantumState(out, psi.basis)


def expectation(psi, string, imag_tol=1e-10):
    """<psi| string |psi> for a normalized state; must be real."""
    spsi = apply_pauli_string(string, psi)
    val = np.vdot(psi.amplitudes, spsi.amplitudes)
    if abs(np.imag(val)) > imag_tol:
        raise ValueError(f"non-real expectation value {val} (non-Hermitian string?)")
    return float(np.real(val))
