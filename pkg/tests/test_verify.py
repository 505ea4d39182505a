import numpy as np
import pytest

from atxxz import ModelParams
from atxxz.basis import pauli
from atxxz.models import ASHKIN_TELLER, STAGGERED_XXZ, link_variable
from atxxz import verify


class TestPauliDense:
    def test_single_site(self):
        m = verify.pauli_dense(pauli((0, "z")), 2)
        assert np.allclose(m, np.diag([1, -1, 1, -1]))

    def test_coefficient_and_y(self):
        m = verify.pauli_dense(pauli((0, "y"), coefficient=2.0), 1)
        assert np.allclose(m, 2.0 * np.array([[0, -1j], [1j, 0]]))


class TestLinkAlgebra:
    @pytest.mark.parametrize("model", [ASHKIN_TELLER, STAGGERED_XXZ])
    @pytest.mark.parametrize("m_sites", [2, 3])
    def test_passes(self, model, m_sites):
        rep = verify.check_link_algebra(model, m_sites)
        assert rep.passed
        assert rep.max_deviation == 0.0

    def test_negative_control(self):
        # replace one operator with something commuting with everything
        p = ModelParams(ASHKIN_TELLER, 2)
        variables = {(kind, i): link_variable(kind, i, p).realization
                     for kind in ("eta", "gamma") for i in range(1, 5)}
        variables[("eta", 2)] = pauli((0, "x"))  # wrong realization
        rep = verify.check_link_algebra(ASHKIN_TELLER, 2, variables=variables)
        assert not rep.passed

    def test_size_limit(self):
        with pytest.raises(ValueError):
            verify.check_link_algebra(ASHKIN_TELLER, 5)


class TestGroundStateConstraints:
    @pytest.mark.parametrize("model", [ASHKIN_TELLER, STAGGERED_XXZ])
    def test_passes(self, model):
        p = ModelParams(model, 3, delta=0.8, beta=1.2)
        rep = verify.check_constraints_on_ground_state(p)
        assert rep.passed
        assert rep.max_deviation <= 1e-9

    def test_negative_control_wrong_sector(self):
        # within the ground sector the constraints hold identically, so the
        # control state comes from an odd-parity sector where they flip sign
        from atxxz import build_basis
        from atxxz.basis import QuantumState, XParity
        p = ModelParams(ASHKIN_TELLER, 3, delta=0.8, beta=1.2)
        b = build_basis(p.n_spins, XParity(-1, 1), frame="x")
        rng = np.random.default_rng(0)
        amps = rng.normal(size=b.dim)
        psi = QuantumState(amps / np.linalg.norm(amps), b)
        rep = verify.check_constraints_on_ground_state(p, state=psi)
        assert not rep.passed
        assert rep.max_deviation == pytest.approx(2.0, abs=1e-12)


class TestEnergyEquivalence:
    @pytest.mark.parametrize("delta,beta", [(1.0, 1.0), (0.5, 1.5), (-0.2, 0.7)])
    def test_passes(self, delta, beta):
        rep = verify.check_energy_equivalence(delta, beta, 3)
        assert rep.passed

    def test_size_limit(self):
        with pytest.raises(ValueError):
            verify.check_energy_equivalence(1.0, 1.0, 8)


class TestDensityEquality:
    @pytest.mark.parametrize("delta,beta", [(1.0, 1.0), (0.6, 1.4)])
    def test_passes(self, delta, beta):
        rep = verify.check_density_equality(delta, beta, 3)
        assert rep.passed


class TestSpectralInclusion:
    @pytest.mark.parametrize("m_sites", [1, 2, 3])
    def test_passes(self, m_sites):
        rep = verify.check_spectral_inclusion(0.8, 1.3, m_sites)
        assert rep.passed

    def test_negative_control(self):
        # mismatched couplings must break the inclusion the check relies on
        from atxxz import build_hamiltonian, dense_spectrum, ground_sector
        from atxxz.basis import Full
        p_at = ModelParams(ASHKIN_TELLER, 2, delta=0.8, beta=1.3)
        p_xxz = ModelParams(STAGGERED_XXZ, 2, delta=0.8, beta=2.6)
        at = dense_spectrum(build_hamiltonian(p_at, ground_sector(p_at))).energies
        xxz = dense_spectrum(build_hamiltonian(p_xxz, Full())).energies
        dev = max(min(abs(xxz - e)) for e in at)
        assert dev > 1e-3


class TestReportFormat:
    def test_summary_lines(self):
        rep = verify.VerificationReport("demo", 6, {"delta": 1.0}, 1e-12, 1e-9)
        assert rep.summary().startswith("[PASS]")
        rep.max_deviation = 1.0
        assert rep.summary().startswith("[FAIL]")
