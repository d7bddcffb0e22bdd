"""Linear-algebra core: Jacobi eigensolver, propagation, reduced operators."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinhop.linalg import (
    Eigensystem,
    hermitian_eigensystem,
    kron,
    partial_trace,
    partial_transpose,
    propagate,
    trace_norm_hermitian,
)

from helpers import (
    BELL_PLUS,
    expm_series,
    partial_trace_oracle_keep_last_two,
    random_density_matrix,
    random_hermitian,
    random_state,
)

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
RAISING = np.array([[0, 1], [0, 0]], dtype=complex)


class TestKron:
    def test_identity_times_identity(self):
        assert np.array_equal(kron(I2, I2), np.eye(4))

    def test_pauli_z_with_identity(self):
        assert np.array_equal(kron(PAULI_Z, I2), np.diag([1, 1, -1, -1]).astype(complex))

    def test_matches_bit_index_oracle(self):
        # raising operator on the middle of three spins, all eight basis states
        op = kron(kron(I2, RAISING), I2)
        oracle = np.zeros((8, 8), dtype=complex)
        for col in range(8):
            bits = [(col >> 2) & 1, (col >> 1) & 1, col & 1]
            if bits[1] == 1:  # middle spin down -> raised to up
                row = bits[0] * 4 + 0 * 2 + bits[2]
                oracle[row, col] = 1.0
        assert np.array_equal(op, oracle)

    def test_rejects_vectors(self):
        with pytest.raises(ValueError):
            kron(np.ones(2), I2)


class TestHermitianEigensystem:
    def test_sigma_x_spectrum(self):
        eig = hermitian_eigensystem(SIGMA_X)
        assert np.allclose(eig.eigenvalues, [-1.0, 1.0])

    def test_two_site_hopping_modes(self):
        hop = np.array([[0, 1], [1, 0]], dtype=complex)
        eig = hermitian_eigensystem(hop)
        assert np.allclose(eig.eigenvalues, [-1.0, 1.0])
        # eigenvectors are (|1> -+ |2>)/sqrt(2) up to phase
        minus = np.array([1, -1]) / np.sqrt(2)
        plus = np.array([1, 1]) / np.sqrt(2)
        assert abs(abs(minus @ eig.eigenvectors[:, 0]) - 1) < 1e-10
        assert abs(abs(plus @ eig.eigenvectors[:, 1]) - 1) < 1e-10

    def test_three_site_hopping_spectrum(self):
        a = 1.0 / np.sqrt(2)
        chain = np.array([[0, a, 0], [a, 0, a], [0, a, 0]], dtype=complex)
        eig = hermitian_eigensystem(chain)
        assert np.allclose(eig.eigenvalues, [-1.0, 0.0, 1.0], atol=1e-12)

    def test_rejects_non_hermitian_with_diagnostic(self):
        m = np.array([[0, 1], [0, 0]], dtype=complex)
        with pytest.raises(ValueError, match=r"max\|M - M\^H\|"):
            hermitian_eigensystem(m)

    def test_zero_matrix(self):
        eig = hermitian_eigensystem(np.zeros((5, 5)))
        assert np.all(eig.eigenvalues == 0.0)
        assert np.allclose(eig.eigenvectors, np.eye(5))

    def test_eigenvalues_match_lapack(self):
        rng = np.random.default_rng(3)
        for n in (2, 5, 16, 24):
            m = random_hermitian(rng, n)
            eig = hermitian_eigensystem(m)
            assert np.allclose(eig.eigenvalues, np.linalg.eigvalsh(m), atol=1e-11)

    def test_degenerate_spectrum_reconstructs(self):
        hop = np.kron(SIGMA_X, np.eye(8))  # two eigenvalues, 8-fold degenerate
        eig = hermitian_eigensystem(hop)
        recon = eig.eigenvectors @ np.diag(eig.eigenvalues) @ eig.eigenvectors.conj().T
        assert np.abs(recon - hop).max() < 1e-12

    @settings(max_examples=30, deadline=None)
    @given(n=st.integers(min_value=1, max_value=24), seed=st.integers(0, 2**31))
    def test_reconstruction_unitarity_and_residual(self, n, seed):
        m = random_hermitian(np.random.default_rng(seed), n)
        eig = hermitian_eigensystem(m)
        scale = np.abs(m).max()
        recon = eig.eigenvectors @ np.diag(eig.eigenvalues) @ eig.eigenvectors.conj().T
        assert np.abs(recon - m).max() <= 1e-9 * scale
        gram = eig.eigenvectors.conj().T @ eig.eigenvectors
        assert np.abs(gram - np.eye(n)).max() <= 1e-10
        h_norm = float(np.sqrt((np.abs(m) ** 2).sum()))
        residual = m @ eig.eigenvectors - eig.eigenvectors * eig.eigenvalues
        assert np.abs(residual).max() <= 1e-10 * h_norm
        assert np.all(np.diff(eig.eigenvalues) >= 0.0)


class TestPropagate:
    def test_time_zero_is_identity(self):
        rng = np.random.default_rng(11)
        m = random_hermitian(rng, 6)
        psi = random_state(rng, 6)
        eig = hermitian_eigensystem(m)
        assert np.allclose(propagate(psi, eig, 0.0), psi, atol=1e-12)

    def test_eigenstate_picks_up_phase(self):
        rng = np.random.default_rng(12)
        eig = hermitian_eigensystem(random_hermitian(rng, 5))
        k, t = 2, 0.77
        out = propagate(eig.eigenvectors[:, k], eig, t)
        expected = np.exp(-1j * eig.eigenvalues[k] * t) * eig.eigenvectors[:, k]
        assert np.allclose(out, expected, atol=1e-12)

    def test_two_site_rabi_oscillation(self):
        # free hopping from |x=1>: return probability cos^2(eta t)
        eta = 1.0
        hop = eta * np.array([[0, 1], [1, 0]], dtype=complex)
        eig = hermitian_eigensystem(hop)
        start = np.array([1, 0], dtype=complex)
        for t in (0.3, 1.0, 2.5):
            psi = propagate(start, eig, t)
            assert abs(abs(psi[0]) ** 2 - np.cos(eta * t) ** 2) < 1e-12
            # cross-check the propagator against the power series of exp(-iHt)
            assert np.allclose(psi, expm_series(hop, t) @ start, atol=1e-12)

    def test_series_oracle_on_random_hamiltonian(self):
        rng = np.random.default_rng(13)
        m = random_hermitian(rng, 8)
        psi = random_state(rng, 8)
        eig = hermitian_eigensystem(m)
        t = 0.9
        assert np.allclose(propagate(psi, eig, t), expm_series(m, t) @ psi, atol=1e-10)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2**31), t1=st.floats(-5, 5), t2=st.floats(-5, 5))
    def test_norm_preserved_and_composition(self, seed, t1, t2):
        rng = np.random.default_rng(seed)
        eig = hermitian_eigensystem(random_hermitian(rng, 7))
        psi = random_state(rng, 7)
        once = propagate(psi, eig, t1)
        assert abs(np.linalg.norm(once) - 1.0) <= 1e-10
        twice = propagate(once, eig, t2)
        assert np.abs(twice - propagate(psi, eig, t1 + t2)).max() <= 1e-9

    def test_dimension_mismatch(self):
        eig = hermitian_eigensystem(np.eye(4))
        with pytest.raises(ValueError, match="dimension"):
            propagate(np.ones(3), eig, 1.0)


class TestPartialTrace:
    def test_product_state_reduces_to_factor(self):
        rng = np.random.default_rng(21)
        rho_a = random_density_matrix(rng, 3)
        rho_b = random_density_matrix(rng, 4)
        reduced = partial_trace(np.kron(rho_a, rho_b), [3, 4], keep=[0])
        assert np.allclose(reduced, rho_a, atol=1e-12)

    def test_bell_marginal_is_maximally_mixed(self):
        rho = np.outer(BELL_PLUS, BELL_PLUS.conj())
        reduced = partial_trace(rho, [2, 2], keep=[0])
        assert np.allclose(reduced, np.eye(2) / 2, atol=1e-12)

    def test_matches_quadruple_loop_oracle(self):
        rng = np.random.default_rng(22)
        psi = random_state(rng, 16)
        rho = np.outer(psi, psi.conj())
        reduced = partial_trace(rho, [2, 2, 2, 2], keep=(2, 3))
        oracle = partial_trace_oracle_keep_last_two(rho, (2, 2, 2, 2))
        assert np.abs(reduced - oracle).max() < 1e-13

    def test_trace_preserved_and_hermitian(self):
        rng = np.random.default_rng(23)
        rho = random_density_matrix(rng, 24)
        reduced = partial_trace(rho, [3, 2, 2, 2], keep=(2, 3))
        assert abs(np.trace(reduced).real - 1.0) <= 1e-10
        assert np.abs(reduced - reduced.conj().T).max() < 1e-12

    def test_inconsistent_dims_rejected(self):
        with pytest.raises(ValueError, match="inconsistent"):
            partial_trace(np.eye(6), [2, 2], keep=[0])

    def test_empty_keep_rejected(self):
        with pytest.raises(ValueError, match="at least one"):
            partial_trace(np.eye(4), [2, 2], keep=[])


class TestPartialTranspose:
    def test_diagonal_unchanged(self):
        rho = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
        assert np.array_equal(partial_transpose(rho, (2, 2), "A"), rho)

    def test_bell_state_eigenvalues(self):
        rho = np.outer(BELL_PLUS, BELL_PLUS.conj())
        pt = partial_transpose(rho, (2, 2), "A")
        evals = np.sort(np.linalg.eigvalsh(pt))  # independent eigensolve oracle
        assert np.allclose(evals, [-0.5, 0.5, 0.5, 0.5], atol=1e-12)

    def test_involution(self):
        rng = np.random.default_rng(31)
        rho = random_density_matrix(rng, 6)
        for part in ("A", "B"):
            twice = partial_transpose(partial_transpose(rho, (2, 3), part), (2, 3), part)
            assert np.array_equal(twice, rho)

    def test_trace_and_hermiticity_preserved(self):
        rng = np.random.default_rng(32)
        rho = random_density_matrix(rng, 4)
        pt = partial_transpose(rho, (2, 2), "B")
        assert abs(np.trace(pt) - np.trace(rho)) < 1e-14
        assert np.abs(pt - pt.conj().T).max() < 1e-14

    def test_bad_inputs(self):
        with pytest.raises(ValueError, match="inconsistent"):
            partial_transpose(np.eye(5), (2, 2), "A")
        with pytest.raises(ValueError, match="part"):
            partial_transpose(np.eye(4), (2, 2), "C")


class TestTraceNormHermitian:
    def test_identity(self):
        assert trace_norm_hermitian(np.eye(4)) == pytest.approx(4.0, abs=1e-12)

    def test_density_matrices_have_unit_trace_norm(self):
        rng = np.random.default_rng(41)
        for n in (2, 4, 8):
            rho = random_density_matrix(rng, n)
            assert trace_norm_hermitian(rho) == pytest.approx(1.0, abs=1e-10)

    def test_partial_transpose_of_bell_state(self):
        rho = np.outer(BELL_PLUS, BELL_PLUS.conj())
        pt = partial_transpose(rho, (2, 2), "A")
        assert trace_norm_hermitian(pt) == pytest.approx(2.0, abs=1e-10)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            trace_norm_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))


def test_eigensystem_dataclass_dim():
    eig = hermitian_eigensystem(np.eye(3))
    assert isinstance(eig, Eigensystem)
    assert eig.dim == 3
