import numpy as np
import pytest

from atxxz import ModelParams, build_basis, build_hamiltonian, ground_sector
from atxxz.basis import QuantumState, expectation, pauli
from atxxz.eigensolve import dense_spectrum
from atxxz.models import ASHKIN_TELLER, STAGGERED_XXZ
from atxxz.observables import (Series, SymmetryViolationError, correlator_x,
                               finite_difference, locate_extremes,
                               magnetization_x)


@pytest.fixture(scope="module")
def at_ground():
    p = ModelParams(ASHKIN_TELLER, 3, delta=0.8, beta=1.2)
    res = dense_spectrum(build_hamiltonian(p, ground_sector(p)))
    return p, res.ground_state


class TestMagnetization:
    def test_matches_pauli_expectation(self, at_ground):
        p, psi = at_ground
        m = magnetization_x(psi, p)
        direct = np.mean([expectation(psi, pauli((b, "x")))
                          for b in range(p.n_spins)])
        assert m == pytest.approx(direct, abs=1e-12)

    def test_correlator_matches_pauli_expectation(self, at_ground):
        p, psi = at_ground
        g = correlator_x(psi, p)
        direct = np.mean([expectation(psi, pauli((2 * j, "x"), (2 * j + 1, "x")))
                          for j in range(p.m_sites)])
        assert g == pytest.approx(direct, abs=1e-12)

    def test_rejects_wrong_model(self, at_ground):
        _, psi = at_ground
        p_xxz = ModelParams(STAGGERED_XXZ, 3)
        with pytest.raises(ValueError):
            magnetization_x(psi, p_xxz)
        with pytest.raises(ValueError):
            correlator_x(psi, p_xxz)

    def test_detects_broken_symmetry(self):
        # a basis state concentrated on one label is not translation invariant
        p = ModelParams(ASHKIN_TELLER, 2)
        b = build_basis(p.n_spins, ground_sector(p), frame="x")
        amps = np.zeros(b.dim)
        amps[b.index_of([0b0101])[0]] = 1.0
        psi = QuantumState(amps, b)
        with pytest.raises(SymmetryViolationError):
            magnetization_x(psi, p)


class TestSeries:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            Series("delta", [0.0, 1.0], [1.0])

    def test_non_increasing_grid(self):
        with pytest.raises(ValueError):
            Series("delta", [0.0, 1.0, 1.0], [1.0, 2.0, 3.0])


class TestFiniteDifference:
    def grid(self):
        return np.linspace(0.0, 2.0, 81)

    def test_first_derivative_of_cubic(self):
        x = self.grid()
        s = Series("delta", x, x**3, label="f")
        d = finite_difference(s, order=1)
        # central differences are exact to O(h^2); endpoints one-sided O(h)
        assert np.abs(d.values[1:-1] - 3 * x[1:-1] ** 2).max() < 1e-3
        assert d.label == "d1(f)"

    def test_second_derivative_of_cubic(self):
        x = self.grid()
        d = finite_difference(Series("beta", x, x**3), order=2)
        assert np.abs(d.values[1:-1] - 6 * x[1:-1]).max() < 1e-9

    def test_argument_validation(self):
        s = Series("delta", [0.0, 1.0, 2.0], [0.0, 1.0, 4.0])
        with pytest.raises(ValueError):
            finite_difference(s, order=3)
        with pytest.raises(ValueError):
            finite_difference(Series("delta", [0.0, 1.0], [0.0, 1.0]))
        irregular = Series("delta", [0.0, 1.0, 3.0], [0.0, 1.0, 9.0])
        with pytest.raises(ValueError):
            finite_difference(irregular)


class TestLocateExtremes:
    def test_single_maximum(self):
        x = np.linspace(-1.0, 1.0, 21)
        found = locate_extremes(Series("delta", x, -(x - 0.1) ** 2))
        assert len(found) == 1
        pos, kind, _ = found[0]
        assert kind == "max"
        assert pos == pytest.approx(0.1, abs=0.051)

    def test_min_and_max(self):
        x = np.linspace(0.0, 2.0 * np.pi, 100)
        found = locate_extremes(Series("beta", x, np.sin(x)))
        kinds = [k for _, k, _ in found]
        assert kinds == ["max", "min"]

    def test_plateau_resolves_left(self):
        v = [0.0, 1.0, 1.0, 0.0]
        found = locate_extremes(Series("delta", [0.0, 1.0, 2.0, 3.0], v))
        assert found == [(1.0, "max", 1.0)]

    def test_monotone_has_none(self):
        x = np.linspace(0.0, 1.0, 11)
        assert locate_extremes(Series("delta", x, x)) == []
