import numpy as np
import pytest

from diamondqc import (
    ClassicalQuantumAnsatz,
    GridSpec,
    MeasurementBasis,
    SearchBudget,
    bell_diagonal_coeffs,
    gmqd,
    gmqd_variational,
    gqd_1norm_bell,
    gqd_1norm_variational,
    measured_state,
    minimize_conditional_entropy,
    thermal_state_exact,
    trace_norm,
    validate_density,
)
from conftest import point


class TestGridSpec:
    def test_rejects_coarse_grids(self):
        with pytest.raises(ValueError):
            GridSpec(theta_steps=4)
        with pytest.raises(ValueError):
            GridSpec(refine_shrink=1.5)

    def test_doubling(self):
        g = GridSpec(16, 32)
        assert g.doubled().theta_steps == 32
        assert g.doubled().phi_steps == 64


class TestMeasurementBasis:
    def test_unit_axis_required(self):
        with pytest.raises(ValueError):
            MeasurementBasis(np.array([1.0, 1.0, 0.0]))

    def test_projectors_complete_and_idempotent(self):
        basis = MeasurementBasis(np.array([0.6, 0.0, 0.8]))
        p, m = basis.projectors()
        assert np.allclose(p + m, np.eye(2))
        assert np.allclose(p @ p, p)
        assert np.allclose(m @ m, m)
        assert np.allclose(p @ m, 0.0)


class TestConditionalEntropySearch:
    def test_maximally_mixed_gives_one_bit(self, maximally_mixed):
        value, _ = minimize_conditional_entropy(maximally_mixed)
        assert value == pytest.approx(1.0, abs=1e-12)

    def test_bell_state_gives_zero(self, bell_state):
        value, _ = minimize_conditional_entropy(bell_state)
        assert value == pytest.approx(0.0, abs=1e-10)

    def test_grid_doubling_stability(self):
        rho = thermal_state_exact(point(j=1.0, j2=1.0, t=0.5))
        base, _ = minimize_conditional_entropy(rho, GridSpec())
        fine, _ = minimize_conditional_entropy(rho, GridSpec().doubled())
        assert abs(base - fine) < 1e-8

    def test_monotone_refinement(self, lattice):
        for p in lattice[:6]:
            rho = thermal_state_exact(p)
            base, _ = minimize_conditional_entropy(rho, GridSpec(16, 32, 20))
            fine, _ = minimize_conditional_entropy(rho, GridSpec(32, 64, 20))
            assert fine <= base + 1e-12

    def test_deterministic(self):
        rho = thermal_state_exact(point(j=0.8, j2=1.1, h=0.6, t=0.4))
        a, basis_a = minimize_conditional_entropy(rho)
        b, basis_b = minimize_conditional_entropy(rho)
        assert a == b
        assert np.array_equal(basis_a.axis, basis_b.axis)


class TestDephasing:
    def test_measured_state_is_idempotent_fixed_point(self):
        rho = thermal_state_exact(point(j=1.0, j2=1.0, h=0.3, t=0.6))
        axis = np.array([0.0, 0.0, 1.0])
        chi = measured_state(rho, axis)
        validate_density(chi, "dephased state")
        assert np.max(np.abs(measured_state(chi, axis) - chi)) < 1e-14


class TestGmqdVariational:
    def test_maximally_mixed(self, maximally_mixed):
        assert gmqd_variational(maximally_mixed) == pytest.approx(0.0, abs=1e-12)

    def test_bell_state(self, bell_state):
        assert gmqd_variational(bell_state) == pytest.approx(0.5, abs=1e-4)

    def test_matches_closed_form_on_cluster_states(self, lattice):
        for p in lattice[:10]:
            rho = thermal_state_exact(p)
            assert abs(gmqd_variational(rho) - gmqd(rho)) < 1e-4

    def test_variational_is_upper_bound(self, lattice):
        for p in lattice[:10]:
            rho = thermal_state_exact(p)
            assert gmqd_variational(rho) >= gmqd(rho) - 1e-6

    def test_deterministic(self):
        rho = thermal_state_exact(point(j=1.4, j2=0.6, h=0.2, t=0.8))
        assert gmqd_variational(rho) == gmqd_variational(rho)


class TestOneNormVariational:
    def test_classical_state(self, classical_correlated):
        est = gqd_1norm_variational(classical_correlated)
        assert est.value == pytest.approx(0.0, abs=1e-9)
        assert est.flag == "UPPER_BOUND"

    def test_bell_state(self, bell_state):
        assert gqd_1norm_variational(bell_state).value == pytest.approx(1.0, abs=1e-3)

    def test_matches_median_above_transition(self):
        rho = thermal_state_exact(point(j=1.5, j2=1.0, t=1e-3))
        med = gqd_1norm_bell(bell_diagonal_coeffs(rho))
        assert abs(gqd_1norm_variational(rho).value - med) < 1e-3

    def test_matches_median_on_field_free_lattice(self, lattice):
        for p in lattice[:6]:
            rho = thermal_state_exact(p.replace(h=0.0))
            med = gqd_1norm_bell(bell_diagonal_coeffs(rho))
            assert abs(gqd_1norm_variational(rho).value - med) < 1e-3

    def test_deterministic(self):
        rho = thermal_state_exact(point(j=0.9, j2=1.2, t=0.7))
        assert gqd_1norm_variational(rho).value == gqd_1norm_variational(rho).value

    def test_budget_validation(self):
        with pytest.raises(ValueError):
            SearchBudget(theta_steps=2)


class TestAnsatz:
    def test_state_is_valid_density(self):
        ansatz = ClassicalQuantumAnsatz(
            axis=np.array([0.0, 0.0, 1.0]), p=0.3,
            bloch1=np.array([0.2, 0.1, -0.4]), bloch2=np.array([0.0, 0.0, 0.9]))
        chi = ansatz.state()
        validate_density(chi, "classical-quantum ansatz")
        # zero trace-norm distance to itself
        assert trace_norm(chi - chi) == 0.0
