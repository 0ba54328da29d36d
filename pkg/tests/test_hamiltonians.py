import numpy as np
import pytest

from satwalk import (
    CapacityError,
    FullChainParams,
    ValidationError,
    build_clock_hamiltonian,
    build_full_hamiltonian,
    build_hamming_graph,
    build_walk_hamiltonian,
    clock_space,
    constant_drive,
    driven_walk_hamiltonian,
    enumerate_solutions,
    project_to_subspace,
    pxp_constraints,
    winding_drive,
)
from satwalk.hamiltonians import write_matrix_csv

ID2 = np.eye(2)
P0 = np.diag([1.0, 0.0])
P1 = np.diag([0.0, 1.0])
X = np.array([[0.0, 1.0], [1.0, 0.0]])
Y = np.array([[0.0, 1j], [-1j, 0.0]])  # -i|1><0| + i|0><1|
Z = np.diag([-1.0, 1.0])  # 2n - 1 with n = |1><1|


def site_operator(n_sites, ops_by_site):
    """Kronecker product with identity everywhere except the listed 1-based sites."""
    out = np.array([[1.0 + 0j]])
    for j in range(1, n_sites + 1):
        out = np.kron(out, ops_by_site.get(j, ID2))
    return out


def driven_chain_oracle(n_sites, t, drive):
    """The projector-dressed chain built literally from site operators."""
    j_t, a_t, phi_t = drive.controls(t)
    flip = np.cos(phi_t) * X + np.sin(phi_t) * Y
    h = np.zeros((1 << n_sites, 1 << n_sites), dtype=complex)
    for j in range(2, n_sites):
        h += j_t * site_operator(n_sites, {j - 1: P0, j: flip, j + 1: P1})
    h += j_t * site_operator(n_sites, {1: flip, 2: P1})
    h += j_t * site_operator(n_sites, {n_sites - 1: P0, n_sites: flip})
    for j in range(1, n_sites + 1):
        h += a_t * site_operator(n_sites, {j: Z})
    return h


def test_walk_pure_hopping_is_path_adjacency():
    walk = build_walk_hamiltonian(clock_space(3), rabi=2.0, detuning=0.0)
    adj = build_hamming_graph(clock_space(3)).adjacency_matrix()
    assert np.array_equal(walk.matrix, adj.astype(float))


def test_walk_diagonal_counts_excitations():
    walk = build_walk_hamiltonian(clock_space(3), rabi=0.0, detuning=1.0)
    assert np.allclose(walk.matrix, np.diag([0.0, 1.0, 2.0, 3.0]))


def test_walk_pxp2_is_star_on_00():
    space = enumerate_solutions(pxp_constraints(2))
    assert space.states == ("00", "01", "10")
    walk = build_walk_hamiltonian(space, rabi=2.0, detuning=0.0)
    expected = np.array([[0, 1, 1], [1, 0, 0], [1, 0, 0]], dtype=float)
    assert np.array_equal(walk.matrix, expected)


def test_walk_offdiagonals_match_graph_edges(rng):
    space = enumerate_solutions(pxp_constraints(5))
    walk = build_walk_hamiltonian(space, rabi=1.3, detuning=0.4)
    edges = set(build_hamming_graph(space).edges)
    n = space.dimension
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in edges:
                assert walk.matrix[i, j] != 0
            else:
                assert walk.matrix[i, j] == 0


def test_clock_reference_drive_at_t0():
    h = build_clock_hamiltonian(4, 0.0, winding_drive())
    assert np.allclose(h.diag, [-4, -2, 0, 2, 4])
    dense = h.to_dense()
    assert np.allclose(np.diag(dense, -1), np.sqrt(2.0))
    assert np.allclose(np.diag(dense, 1), np.sqrt(2.0))


def test_clock_quarter_phase_gives_imaginary_hopping():
    h = build_clock_hamiltonian(2, 0.0, constant_drive(J=1.0, A=0.0, phi=np.pi / 2))
    dense = h.to_dense()
    sub = np.diag(dense, -1)
    assert np.allclose(sub, -1j)  # J e^{-i pi/2}
    assert np.allclose(np.abs(sub), 1.0)
    assert np.allclose(np.real(sub), 0.0, atol=1e-15)


def test_clock_matches_full_space_projection_oracle(rng):
    # the tridiagonal form must equal the projector-dressed chain restricted
    # to the packed-excitation states, at random times under the full drive
    n = 6
    drive = winding_drive()
    space = clock_space(n)
    for _ in range(3):
        t = float(rng.uniform(0.0, drive.period))
        oracle = driven_chain_oracle(n, t, drive)
        projected = project_to_subspace(oracle, space).matrix
        dense = build_clock_hamiltonian(n, t, drive).to_dense()
        assert np.abs(projected - dense).max() < 1e-12


def test_full_single_site_matrix():
    params = FullChainParams(n_sites=1, interaction=9.0, rabi=0.8, detuning=0.3, phase=0.7)
    h = build_full_hamiltonian(params)
    expected = np.array(
        [[0.0, 0.4 * np.exp(1j * 0.7)], [0.4 * np.exp(-1j * 0.7), -0.3]]
    )
    assert np.abs(h - expected).max() < 1e-15


def test_full_interaction_penalizes_10_only():
    h = build_full_hamiltonian(FullChainParams(n_sites=2, interaction=5.0))
    assert np.allclose(np.diag(h), [0.0, 0.0, 5.0, 0.0])
    assert np.abs(h - np.diag(np.diag(h))).max() == 0.0


def test_clock_states_have_zero_interaction_energy():
    h = build_full_hamiltonian(FullChainParams(n_sites=6, interaction=11.0))
    for state in clock_space(6).states:
        idx = int(state, 2)
        assert h[idx, idx] == 0.0


def test_full_chain_cap():
    with pytest.raises(CapacityError):
        build_full_hamiltonian(FullChainParams(n_sites=15, interaction=1.0))


def test_projection_of_full_chain_onto_clock_space():
    h = build_full_hamiltonian(FullChainParams(n_sites=4, interaction=37.0, rabi=1.0))
    proj = project_to_subspace(h, clock_space(4)).matrix
    expected = np.diag(np.full(4, 0.5), 1) + np.diag(np.full(4, 0.5), -1)
    assert np.abs(proj - expected).max() < 1e-15


def test_projection_of_diagonal_and_identity():
    space = enumerate_solutions(pxp_constraints(3))
    idx = [int(s, 2) for s in space.states]
    diag = np.diag(np.arange(8, dtype=float))
    proj = project_to_subspace(diag, space).matrix
    assert np.allclose(proj, np.diag(np.array(idx, dtype=float)))
    proj_eye = project_to_subspace(np.eye(8), space).matrix
    assert np.array_equal(proj_eye, np.eye(space.dimension))


def test_projection_dimension_mismatch():
    with pytest.raises(ValidationError):
        project_to_subspace(np.eye(7), clock_space(3))


def test_every_builder_is_hermitian(rng):
    drive = winding_drive()
    t = float(rng.uniform(0, 5))
    mats = [
        build_walk_hamiltonian(enumerate_solutions(pxp_constraints(5)), 1.7, -0.9).matrix,
        build_clock_hamiltonian(7, t, drive).to_dense(),
        build_full_hamiltonian(FullChainParams(6, 50.0, 1.0, 0.3, 0.4)),
        driven_walk_hamiltonian(enumerate_solutions(pxp_constraints(4)), t, drive).matrix,
    ]
    for h in mats:
        assert np.abs(h - h.conj().T).max() <= 1e-12


def test_effective_model_matches_projected_full_chain():
    # the projected chain equals the walk generator with the opposite
    # detuning sign exactly; eigenvalues agree after mean-centering within
    # the second-order perturbation scale
    for n, interaction in ((6, 50.0), (8, 80.0)):
        rabi, detuning = 1.0, 0.3
        h_full = build_full_hamiltonian(FullChainParams(n, interaction, rabi, detuning))
        proj = project_to_subspace(h_full, clock_space(n)).matrix
        walk = build_walk_hamiltonian(clock_space(n), rabi, -detuning).matrix
        assert np.abs(proj - walk).max() < 1e-12

        full_vals = np.linalg.eigvalsh(h_full)[: n + 1]
        walk_vals = np.linalg.eigvalsh(walk)
        tol = 10.0 * rabi**2 / interaction
        assert np.abs((full_vals - full_vals.mean()) - (walk_vals - walk_vals.mean())).max() < tol


def test_phase_gauge_leaves_spectrum_invariant():
    base = build_clock_hamiltonian(9, 0.0, constant_drive(J=1.1, A=0.6, phi=0.0))
    gauged = build_clock_hamiltonian(9, 0.0, constant_drive(J=1.1, A=0.6, phi=1.234))
    w0 = np.linalg.eigvalsh(base.to_dense())
    w1 = np.linalg.eigvalsh(gauged.to_dense())
    assert np.abs(w0 - w1).max() < 1e-12


def test_driven_walk_reduces_to_clock_chain(rng):
    drive = winding_drive()
    t = float(rng.uniform(0, drive.period))
    walk = driven_walk_hamiltonian(clock_space(5), t, drive).matrix
    dense = build_clock_hamiltonian(5, t, drive).to_dense()
    assert np.abs(walk - dense).max() < 1e-12


def test_matrix_csv_dump(tmp_path):
    h = build_clock_hamiltonian(2, 0.0, constant_drive(J=1.0, A=1.0, phi=0.5)).to_dense()
    path = tmp_path / "m.csv"
    write_matrix_csv(h, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "row,col,re,im"
    rebuilt = np.zeros((3, 3), dtype=complex)
    for line in lines[1:]:
        r, c, re, im = line.split(",")
        rebuilt[int(r), int(c)] = float(re) + 1j * float(im)
    assert np.abs(rebuilt - h).max() < 1e-15
