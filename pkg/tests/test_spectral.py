import numpy as np
import pytest

from fullerwalk import (
    DEGENERACY_TOL,
    adjacency,
    cluster_eigenvalues,
    eigendecompose,
    eigenspace_projectors,
    gap_count,
    graph_from_edges,
    symmetry_adapted_c60_basis,
)
from oracles import SMALL_GRAPHS, jacobi_eigh

C60_DEGENERACIES = [3, 4, 4, 5, 3, 5, 3, 3, 5, 9, 4, 3, 5, 3, 1]


def test_eigendecompose_rejects_nonsquare_and_asymmetric():
    with pytest.raises(ValueError, match="square"):
        eigendecompose(np.zeros((2, 3)))
    bad = np.array([[0.0, 1.0], [0.5, 0.0]])
    with pytest.raises(ValueError, match="asymmetry"):
        eigendecompose(bad)


def test_eigendecompose_reconstruction_and_ordering(c60):
    a = adjacency(c60)
    s = eigendecompose(a)
    v, w = s.eigenvectors, s.eigenvalues
    assert np.all(np.diff(w) >= 0)
    assert np.abs(v @ np.diag(w) @ v.T - a).max() < 1e-8
    assert np.abs(v.T @ v - np.eye(60)).max() < 1e-12
    assert abs(w.sum()) < 1e-10  # traceless adjacency
    assert abs(w[-1] - 3.0) < 1e-10  # Perron value of a cubic graph


def test_cluster_eigenvalues_greedy_merge():
    vals = [0.0, 0.5e-6, 2.0, 2.0 + 1e-7, 5.0]
    assert cluster_eigenvalues(vals, 1e-6) == ((0, 1), (2, 3), (4,))
    assert cluster_eigenvalues([], 1e-6) == ()
    with pytest.raises(ValueError):
        cluster_eigenvalues(vals, 0.0)
    with pytest.raises(ValueError):
        cluster_eigenvalues(vals, -1e-6)


def test_c60_degeneracy_pattern(c60_spectrum):
    s = c60_spectrum
    assert s.n_distinct == 15
    assert [len(c) for c in s.clusters] == C60_DEGENERACIES
    # the 9 is an accidental near-coincidence of two levels at lambda = 1
    big = max(s.clusters, key=len)
    assert np.allclose(s.eigenvalues[list(big)], 1.0, atol=1e-9)


def test_projector_algebra(c60_spectrum):
    projs = eigenspace_projectors(c60_spectrum)
    total = np.zeros((60, 60))
    for i, p in enumerate(projs):
        assert np.abs(p @ p - p).max() < 1e-9
        assert np.abs(p - p.T).max() < 1e-12
        rank = np.trace(p)
        assert abs(rank - len(c60_spectrum.clusters[i])) < 1e-9
        total += p
        for q in projs[i + 1 :]:
            assert np.abs(p @ q).max() < 1e-9
    assert np.abs(total - np.eye(60)).max() < 1e-9


def test_projectors_commute_with_hamiltonian(c60, c60_spectrum):
    a = adjacency(c60)
    for p in eigenspace_projectors(c60_spectrum):
        assert np.abs(a @ p - p @ a).max() < 1e-8


@pytest.mark.parametrize("name", sorted(SMALL_GRAPHS))
def test_eigendecompose_matches_jacobi_oracle(name):
    n, edges = SMALL_GRAPHS[name]
    a = adjacency(graph_from_edges(n, edges))
    s = eigendecompose(a)
    w_o, v_o = jacobi_eigh(a)
    assert np.abs(s.eigenvalues - w_o).max() < 1e-10
    # bases may differ inside degenerate clusters; compare projectors
    for c, p in zip(s.clusters, eigenspace_projectors(s)):
        cols = v_o[:, list(c)]
        assert np.abs(cols @ cols.T - p).max() < 1e-8


def test_jacobi_oracle_offdiagonal_below_tolerance(f30):
    a = np.array(adjacency(f30))
    w, v = jacobi_eigh(a, tol=1e-12)
    assert np.abs(v @ np.diag(w) @ v.T - a).max() < 1e-10


def test_symmetry_adapted_basis_matches_plain_spectrum(c60_spectrum, c60_sym_spectrum):
    assert c60_sym_spectrum.basis_tag == "symmetry-adapted"
    assert np.abs(
        c60_sym_spectrum.eigenvalues - c60_spectrum.eigenvalues
    ).max() < 1e-9
    v = c60_sym_spectrum.eigenvectors
    assert np.abs(v.T @ v - np.eye(60)).max() < 1e-12
    assert [len(c) for c in c60_sym_spectrum.clusters] == C60_DEGENERACIES


def test_symmetry_adapted_basis_mirror_exact(c60_sym_spectrum):
    v = c60_sym_spectrum.eigenvectors
    mirrored = np.abs(v[::-1, :])
    assert np.abs(np.abs(v) - mirrored).max() == 0.0


def test_gap_count_small_hand_case():
    # levels 0, 1, 3 -> gaps {1, 2, 3}
    a = np.diag([0.0, 1.0, 3.0])
    s = eigendecompose(a)
    assert gap_count(s, 0.5) == 1
    assert gap_count(s, 1.1) == 2
    assert gap_count(s, 2.5) == 3
    with pytest.raises(ValueError):
        gap_count(s, 0.0)


def test_gap_count_single_level_is_zero():
    s = eigendecompose(np.zeros((3, 3)))
    assert s.n_distinct == 1
    assert gap_count(s, 1.0) == 0


def test_c60_gap_count_at_unit_window(c60_spectrum):
    # 15 distinct levels give 105 positive pairwise gaps; the densest
    # unit window holds 33 of them
    assert gap_count(c60_spectrum, 1.0) == 33


def test_spectrum_arrays_are_frozen(c60_spectrum):
    with pytest.raises(ValueError):
        c60_spectrum.eigenvalues[0] = 99.0
    with pytest.raises(ValueError):
        c60_spectrum.eigenvectors[0, 0] = 99.0


def test_degeneracy_tol_is_carried(c60):
    s = eigendecompose(adjacency(c60), degeneracy_tol=1e-3)
    assert s.degeneracy_tol == 1e-3
    assert s.n_distinct <= 15
    assert s.degeneracy_tol == pytest.approx(1e-3)
    assert eigendecompose(adjacency(c60)).degeneracy_tol == DEGENERACY_TOL
