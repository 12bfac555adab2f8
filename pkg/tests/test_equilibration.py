import numpy as np
import pytest

import fullerwalk.equilibration as eq
from fullerwalk import (
    QuadratureError,
    adjacency,
    bound_rhs,
    default_tau_grid,
    effective_dimension,
    eigendecompose,
    eigenspace_projectors,
    empirical_lhs,
    equilibration_report,
    graph_from_edges,
    operator_norm_sq,
    symmetry_adapted_c60_basis,
    time_averaged_state,
)
from oracles import SMALL_GRAPHS, closed_form_lhs, expm_evolution, jacobi_eigh


def _node_rho(n, x):
    rho = np.zeros((n, n))
    rho[x - 1, x - 1] = 1.0
    return rho


def _node_proj(n, x):
    return _node_rho(n, x)


def test_effective_dimension_of_an_eigenstate_is_one(c60_spectrum):
    psi = c60_spectrum.eigenvectors[:, 0]
    rho = np.outer(psi, psi)
    projs = eigenspace_projectors(c60_spectrum)
    assert abs(effective_dimension(projs, rho) - 1.0) < 1e-9


def test_effective_dimension_c60_node_is_3600_over_284(c60_spectrum):
    # the honest value from the level weights of |1><1|; the commonly
    # quoted 12.5 is the reciprocal-rounding of 1/d_eff ~ 0.0789
    projs = eigenspace_projectors(c60_spectrum)
    d = effective_dimension(projs, _node_rho(60, 1))
    assert abs(d - 3600.0 / 284.0) < 1e-9


def test_effective_dimension_is_basis_invariant(c60_spectrum, c60_sym_spectrum):
    rho = _node_rho(60, 1)
    d_plain = effective_dimension(eigenspace_projectors(c60_spectrum), rho)
    d_sym = effective_dimension(eigenspace_projectors(c60_sym_spectrum), rho)
    assert abs(d_plain - d_sym) < 1e-10


def test_effective_dimension_survives_a_foreign_eigensolver(f30):
    # projectors rebuilt from the Jacobi oracle basis give the same answer
    a = adjacency(f30)
    s = eigendecompose(a)
    rho = _node_rho(30, 1)
    w, v = jacobi_eigh(np.array(a))
    projs = []
    for c in s.clusters:
        cols = v[:, list(c)]
        projs.append(cols @ cols.T)
    d_oracle = effective_dimension(projs, rho)
    d_lib = effective_dimension(eigenspace_projectors(s), rho)
    assert abs(d_lib - d_oracle) < 1e-8


def test_effective_dimension_rejects_unnormalized_rho(c60_spectrum):
    projs = eigenspace_projectors(c60_spectrum)
    with pytest.raises(ValueError, match="unit trace"):
        effective_dimension(projs, np.eye(60))


def test_omega_is_a_fixed_point_of_the_evolution(c60, c60_spectrum):
    rho = _node_rho(60, 1)
    omega = time_averaged_state(eigenspace_projectors(c60_spectrum), rho)
    assert abs(np.trace(omega) - 1.0) < 1e-12
    u = expm_evolution(adjacency(c60), 1.3)
    rotated = u @ omega @ u.conj().T
    assert np.abs(rotated - omega).max() < 1e-10


def test_omega_commutes_with_the_hamiltonian(f30, f30_spectrum):
    rho = _node_rho(30, 5)
    omega = time_averaged_state(eigenspace_projectors(f30_spectrum), rho)
    a = adjacency(f30)
    assert np.abs(a @ omega - omega @ a).max() < 1e-10


def test_bound_rhs_quoted_instantiation_algebra():
    # d_eff = 12.5, N_lambda = 15, N(eps) = 1, ||O||^2 = 1, eps = 1:
    # rhs(tau) = 0.08 (1 + 8 log2(15) / tau)
    for tau in (0.5, 2.0, 31.0, 1e4):
        expected = 0.08 * (1.0 + 8.0 * np.log2(15.0) / tau)
        assert abs(bound_rhs(12.5, 15, 1, 1.0, 1.0, tau) - expected) < 1e-15
    assert abs(bound_rhs(12.5, 15, 1, 1.0, 1.0, 1e15) - 0.08) < 1e-12


def test_bound_rhs_validation():
    with pytest.raises(ValueError, match="tau"):
        bound_rhs(12.5, 15, 1, 1.0, 1.0, 0.0)
    with pytest.raises(ValueError, match="positive"):
        bound_rhs(-1.0, 15, 1, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError, match="positive"):
        bound_rhs(12.5, 15, 0, 1.0, 1.0, 1.0)


def test_operator_norm_sq():
    assert operator_norm_sq(_node_proj(60, 1)) == pytest.approx(1.0)
    assert operator_norm_sq(np.diag(np.arange(1.0, 61.0))) == pytest.approx(3600.0)
    assert operator_norm_sq(-2.0 * np.eye(3)) == pytest.approx(4.0)


def test_empirical_lhs_vanishes_for_an_eigenstate_start(c60_spectrum):
    psi = c60_spectrum.eigenvectors[:, 7]
    rho = np.outer(psi, psi)
    o = _node_proj(60, 1)
    assert empirical_lhs(c60_spectrum, rho, o, tau=10.0, dt=0.01) == 0.0


@pytest.mark.parametrize("tau", [1.0, 10.0, 100.0])
def test_empirical_lhs_matches_closed_form_oracle(c60, c60_spectrum, tau):
    rho = _node_rho(60, 1)
    o = _node_proj(60, 1)
    got = empirical_lhs(c60_spectrum, rho, o, tau, dt=min(tau / 100.0, 0.02))
    want = closed_form_lhs(adjacency(c60), rho, o, tau)
    assert abs(got - want) < 2e-4 * max(1.0, abs(want) / max(abs(want), 1e-30))
    assert abs(got - want) / abs(want) < 2e-3


def test_empirical_lhs_small_graph_against_oracle():
    n, edges = SMALL_GRAPHS["c5"]
    a = adjacency(graph_from_edges(n, edges))
    s = eigendecompose(a)
    rho = _node_rho(5, 1)
    o = np.diag([1.0, 0.0, -1.0, 0.5, 0.0])
    for tau in (2.0, 20.0):
        got = empirical_lhs(s, rho, o, tau, dt=tau / 1000.0)
        want = closed_form_lhs(a, rho, o, tau)
        assert abs(got - want) < 1e-3 * max(abs(want), 1e-3)


def test_empirical_lhs_validation(c60_spectrum):
    rho = _node_rho(60, 1)
    o = _node_proj(60, 1)
    with pytest.raises(ValueError, match="tau"):
        empirical_lhs(c60_spectrum, rho, o, tau=-1.0, dt=0.01)
    with pytest.raises(ValueError, match="dt"):
        empirical_lhs(c60_spectrum, rho, o, tau=1.0, dt=0.5)
    with pytest.raises(ValueError, match="dt"):
        empirical_lhs(c60_spectrum, rho, o, tau=1.0, dt=0.0)


def test_quadrature_error_carries_estimates(monkeypatch, c60_spectrum):
    # force non-convergence by making the acceptance threshold impossible
    monkeypatch.setattr(eq, "LHS_REL_TOL", -1.0)
    rho = _node_rho(60, 1)
    o = _node_proj(60, 1)
    with pytest.raises(QuadratureError) as info:
        empirical_lhs(c60_spectrum, rho, o, tau=5.0, dt=0.05)
    est = info.value.estimates
    assert len(est) == 2
    # the halvings were in fact converging; only the patched gate failed
    assert abs(est[0] - est[1]) < 1e-3


def test_default_tau_grid_shape():
    grid = default_tau_grid()
    assert len(grid) == 60
    assert grid[0] == pytest.approx(0.1)
    assert grid[-1] == pytest.approx(1000.0)
    assert np.all(np.diff(grid) > 0)


def test_report_on_f30_bound_holds(f30):
    o = _node_proj(30, 1)
    taus = np.array([0.5, 2.0, 10.0, 50.0, 300.0])
    rep = equilibration_report(f30, 1, o, tau_grid=taus)
    assert np.all(rep.lhs <= rep.rhs)
    assert rep.n_eps_override is None
    assert rep.start == 1
    assert rep.rhs_asymptote == pytest.approx(
        rep.operator_norm_sq * rep.n_eps / rep.d_eff
    )
    # rhs decreases monotonically onto its asymptote
    assert np.all(np.diff(rep.rhs) < 0)
    assert np.all(rep.rhs > rep.rhs_asymptote)


def test_report_c60_override_matches_quoted_constants(c60):
    o = _node_proj(60, 1)
    taus = np.array([1.0, 10.0, 100.0])
    rep = equilibration_report(c60, 1, o, tau_grid=taus, n_eps_override=1)
    assert rep.n_lambda == 15
    assert rep.n_eps == 33  # computed pairwise count is reported unchanged
    assert rep.n_eps_override == 1
    assert abs(rep.d_eff - 3600.0 / 284.0) < 1e-9
    assert rep.rhs_asymptote == pytest.approx(284.0 / 3600.0)
    assert np.all(rep.lhs <= rep.rhs)


def test_report_start_validation(f30):
    with pytest.raises(ValueError, match="start"):
        equilibration_report(f30, 31, _node_proj(30, 1))
