"""Executable checks of the chain equivalences and operator identities.

Each check returns a VerificationReport; failures are reported, not raised,
so a suite can run to completion and aggregate.
"""

from dataclasses import dataclass

import numpy as np

from .basis import Full, apply_pauli_string, expectation, pauli
from .models import (ASHKIN_TELLER, STAGGERED_XXZ, ModelParams,
                     build_hamiltonian, ground_sector, link_variable)
from .eigensolve import dense_spectrum, ground_state
from .entanglement import reduce_state, von_neumann

_PAULI_2x2 = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


@dataclass
class VerificationReport:
    name: str
    chain_spins: int
    params: dict
    max_deviation: float
    tolerance: float
    notes: str = ""

    @property
    def passed(self):
        return self.max_deviation <= self.tolerance

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        par = ", ".join(f"{k}={v}" for k, v in self.params.items())
        line = (f"[{status}] {self.name} (spins={self.chain_spins}, {par}): "
                f"max deviation {self.max_deviation:.3e} vs tol {self.tolerance:.1e}")
        if self.notes:
            line += f" [{self.notes}]"
        return line


def pauli_dense(string, n_spins):
    """Dense matrix of a physical-frame Pauli string (site 0 = LSB)."""
    ops = {s: _PAULI_2x2[ax] for s, ax in string.terms}
    out = np.array([[1.0 + 0.0j]])
    for s in range(n_spins - 1, -1, -1):
        out = np.kron(out, ops.get(s, np.eye(2, dtype=complex)))
    return string.coefficient * out


def _anticommuting_pair(j, k, two_m):
    """Whether eta/gamma indices j, k (1-based) are algebra neighbors."""
    return abs(j - k) == 1 or {j, k} == {1, two_m}


def check_link_algebra(model, m_sites, variables=None):
    """Squares-to-identity plus all (anti)commutation cases, dense."""
    if m_sites > 4:
        raise ValueError("exhaustive dense algebra limited to m_sites <= 4")
    p = ModelParams(model, m_sites)
    n = p.n_spins
    two_m = 2 * m_sites
    if variables is None:
        variables = {(kind, i): link_variable(kind, i, p).realization
                     for kind in ("eta", "gamma") for i in range(1, two_m + 1)}
    dense = {key: pauli_dense(s, n) for key, s in variables.items()}
    eye = np.eye(1 << n)

    dev = 0.0
    for key, mat in dense.items():
        dev = max(dev, np.abs(mat @ mat - eye).max())
    for j in range(1, two_m + 1):
        for k in range(1, two_m + 1):
            # eta and gamma always commute
            c = dense[("eta", j)] @ dense[("gamma", k)] - \
                dense[("gamma", k)] @ dense[("eta", j)]
            dev = max(dev, np.abs(c).max())
    for kind in ("eta", "gamma"):
        for j in range(1, two_m + 1):
            for k in range(j + 1, two_m + 1):
                a, b = dense[(kind, j)], dense[(kind, k)]
                if _anticommuting_pair(j, k, two_m):
                    dev = max(dev, np.abs(a @ b + b @ a).max())
                else:
                    dev = max(dev, np.abs(a @ b - b @ a).max())
    return VerificationReport("link-algebra", n, {"model": model}, dev, 1e-12)


def _solved_ground(p, seed=0, tol=1e-10):
    h = build_hamiltonian(p, ground_sector(p))
    return ground_state(h, k=min(2, h.dim), tol=tol, seed=seed)


def check_constraints_on_ground_state(p, state=None, seed=0):
    """Product-operator constraints applied to the ground state."""
    if p.m_sites > 6:
        raise ValueError("constraint check limited to m_sites <= 6")
    notes = ""
    if state is None:
        res = _solved_ground(p, seed=seed)
        if res.degenerate:
            notes = "inconclusive: degenerate ground state"
        state = res.ground_state
    two_m = 2 * p.m_sites

    if p.model == ASHKIN_TELLER:
        products = {
            "prod eta_even": [link_variable("eta", 2 * j, p).realization
                              for j in range(1, p.m_sites + 1)],
            "prod gamma_even": [link_variable("gamma", 2 * j, p).realization
                                for j in range(1, p.m_sites + 1)],
            "prod sigma^x": [pauli((2 * (j - 1), "x"))
                             for j in range(1, p.m_sites + 1)],
            "prod tau^x": [pauli((2 * (j - 1) + 1, "x"))
                           for j in range(1, p.m_sites + 1)],
        }
    else:
        products = {
            "prod eta_odd gamma_even": [
                link_variable("eta", 2 * j - 1, p).realization
                for j in range(1, p.m_sites + 1)] + [
                link_variable("gamma", 2 * j, p).realization
                for j in range(1, p.m_sites + 1)],
            "prod gamma_odd eta_even": [
                link_variable("gamma", 2 * j - 1, p).realization
                for j in range(1, p.m_sites + 1)] + [
                link_variable("eta", 2 * j, p).realization
                for j in range(1, p.m_sites + 1)],
            "Q_x": [pauli((b, "x")) for b in range(two_m)],
            "Q_y": [pauli((b, "y")) for b in range(two_m)],
        }

    # individual factors may hop between sectors even though the full
    # product does not, so the products are applied in the full space
    reference = state.expand_full()
    dev = 0.0
    details = []
    for name, factors in products.items():
        phi = reference
        for f in factors:
            phi = apply_pauli_string(f, phi)
        d = float(np.linalg.norm(phi.amplitudes - reference.amplitudes))
        details.append(f"{name}: {d:.2e}")
        dev = max(dev, d)
    report = VerificationReport(
        "ground-state-constraints", two_m,
        {"model": p.model, "delta": p.delta, "beta": p.beta},
        dev, 1e-9, notes or "; ".join(details))
    if notes:
        report.max_deviation = float("nan")
    return report


def check_energy_equivalence(delta, beta, m_sites, tol=1e-8, seed=0):
    """|E0(AT, M) - E0(XXZ, 2M)| inside the respective ground sectors."""
    if m_sites > 7:
        raise ValueError("energy equivalence check limited to m_sites <= 7")
    e_at = _solved_ground(ModelParams(ASHKIN_TELLER, m_sites, delta=delta,
                                      beta=beta), seed=seed).ground_energy
    e_xxz = _solved_ground(ModelParams(STAGGERED_XXZ, m_sites, delta=delta,
                                       beta=beta), seed=seed).ground_energy
    return VerificationReport(
        "energy-equivalence", 2 * m_sites,
        {"delta": delta, "beta": beta}, abs(e_at - e_xxz), tol,
        f"E0={e_at:.10f}")


def check_density_equality(delta, beta, m_sites, tol=1e-9, seed=0):
    """Frontal-pair vs intra-dimer-pair reduced matrices, eigenvalue match."""
    if m_sites > 6:
        raise ValueError("density equality check limited to m_sites <= 6")
    p_at = ModelParams(ASHKIN_TELLER, m_sites, delta=delta, beta=beta)
    p_xxz = ModelParams(STAGGERED_XXZ, m_sites, delta=delta, beta=beta)
    res_at = _solved_ground(p_at, seed=seed)
    res_xxz = _solved_ground(p_xxz, seed=seed)
    if res_at.degenerate or res_xxz.degenerate:
        rep = VerificationReport(
            "density-equality", 2 * m_sites,
            {"delta": delta, "beta": beta}, float("nan"), tol,
            "inconclusive: degenerate ground state")
        return rep

    rho_at = reduce_state(res_at.ground_state, (0, 1))
    rho_xxz = reduce_state(res_xxz.ground_state, (0, 1))
    ev_at = np.sort(np.linalg.eigvalsh(rho_at.matrix))
    ev_xxz = np.sort(np.linalg.eigvalsh(rho_xxz.matrix))
    dev = float(np.abs(ev_at - ev_xxz).max())

    # correspondence of the matrix coefficients: u = p and v = -q
    psi_xxz = res_xxz.ground_state
    u = expectation(res_at.ground_state, pauli((0, "x")))
    v = expectation(res_at.ground_state, pauli((0, "x"), (1, "x")))
    p_corr = expectation(psi_xxz.expand_full(), pauli((0, "x"), (1, "x")))
    q_corr = expectation(psi_xxz, pauli((0, "z"), (1, "z")))
    s_at = von_neumann(rho_at)
    s_xxz = von_neumann(rho_xxz)
    notes = (f"|u-p|={abs(u - p_corr):.2e}, |v+q|={abs(v + q_corr):.2e}, "
             f"|S_at-S_xxz|={abs(s_at - s_xxz):.2e}")
    dev = max(dev, abs(u - p_corr), abs(v + q_corr))
    return VerificationReport(
        "density-equality", 2 * m_sites,
        {"delta": delta, "beta": beta}, dev, tol, notes)


def check_spectral_inclusion(delta, beta, m_sites, tol=1e-8):
    """Every AT Q=0 level appears in the full XXZ spectrum (dense, M <= 3)."""
    if m_sites > 3:
        raise ValueError("spectral inclusion limited to m_sites <= 3")
    p_at = ModelParams(ASHKIN_TELLER, m_sites, delta=delta, beta=beta)
    p_xxz = ModelParams(STAGGERED_XXZ, m_sites, delta=delta, beta=beta)
    at_levels = dense_spectrum(build_hamiltonian(p_at, ground_sector(p_at))).energies
    xxz_levels = dense_spectrum(build_hamiltonian(p_xxz, Full())).energies

    # greedy multiset inclusion on sorted lists
    dev = 0.0
    i = 0
    for e in at_levels:
        while i < len(xxz_levels) and xxz_levels[i] < e - tol:
            i += 1
        if i < len(xxz_levels) and abs(xxz_levels[i] - e) <= tol:
            i += 1
        else:
            gap = np.abs(xxz_levels - e).min() if len(xxz_levels) else np.inf
            dev = max(dev, float(gap))
    return VerificationReport(
        "spectral-inclusion", 2 * m_sites,
        {"delta": delta, "beta": beta}, dev, tol)
