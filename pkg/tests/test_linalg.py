import itertools

import numpy as np
import pytest

from ptcoh import errors, linalg
from oracles import naive_partial_trace, random_density_matrix

SX, SY, SZ, I2 = linalg.PAULI_X, linalg.PAULI_Y, linalg.PAULI_Z, linalg.ID2


def bell_rho():
    vec = np.zeros(4, dtype=complex)
    vec[0] = vec[3] = 1.0 / np.sqrt(2.0)
    return np.outer(vec, vec.conj())


def ghz_rho():
    vec = np.zeros(8, dtype=complex)
    vec[0] = vec[7] = 1.0 / np.sqrt(2.0)
    return np.outer(vec, vec.conj())


class TestMatmul:
    def test_pauli_involution(self):
        assert np.allclose(linalg.matmul(SX, SX), I2, atol=1e-15)

    def test_pauli_algebra(self):
        assert np.allclose(linalg.matmul(SX, SZ), -1j * SY, atol=1e-15)

    def test_identity(self):
        rng = np.random.default_rng(7)
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert np.allclose(linalg.matmul(I2, m), m, atol=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(errors.DimensionError):
            linalg.matmul(np.eye(2), np.eye(3))

    def test_adjoint_rule(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            lhs = linalg.dagger(linalg.matmul(a, b))
            rhs = linalg.matmul(linalg.dagger(b), linalg.dagger(a))
            assert np.linalg.norm(lhs - rhs) <= 1e-12


class TestKron:
    def test_identity(self):
        assert np.allclose(linalg.kron(I2, I2), np.eye(4), atol=1e-15)

    def test_diagonal(self):
        out = linalg.kron(np.diag([1.0, 2.0]), I2)
        assert np.allclose(out, np.diag([1.0, 1.0, 2.0, 2.0]), atol=1e-15)

    def test_parity_eigenvector(self):
        vec = np.zeros(4, dtype=complex)
        vec[0] = vec[3] = 1.0 / np.sqrt(2.0)
        assert np.allclose(linalg.kron(SZ, SZ) @ vec, vec, atol=1e-15)

    def test_associative_and_trace(self):
        rng = np.random.default_rng(3)
        a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
        left = linalg.kron(linalg.kron(a, b), c)
        right = linalg.kron(a, linalg.kron(b, c))
        assert np.linalg.norm(left - right) <= 1e-12
        assert abs(np.trace(linalg.kron(a, b)) - np.trace(a) * np.trace(b)) <= 1e-12


class TestDagger:
    def test_hermitian_fixed_point(self):
        assert np.allclose(linalg.dagger(SY), SY, atol=1e-15)

    def test_scalar(self):
        assert np.allclose(linalg.dagger(1j * I2), -1j * I2, atol=1e-15)

    def test_involution(self):
        rng = np.random.default_rng(5)
        m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert np.allclose(linalg.dagger(linalg.dagger(m)), m, atol=1e-15)


class TestPartialTrace:
    def test_bell_marginal(self):
        out = linalg.partial_trace(bell_rho(), 2, [1])
        assert np.allclose(out, I2 / 2.0, atol=1e-14)

    def test_product_state(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = 1.0
        out = linalg.partial_trace(rho, 2, [2])
        assert np.allclose(out, np.diag([1.0, 0.0]), atol=1e-15)

    def test_ghz_pair(self):
        out = linalg.partial_trace(ghz_rho(), 3, [2, 3])
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = expected[3, 3] = 0.5
        assert np.allclose(out, expected, atol=1e-14)

    def test_trace_preserved_and_full_keep(self):
        rng = np.random.default_rng(13)
        rho = random_density_matrix(3, rng)
        for keep in ([1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3]):
            red = linalg.partial_trace(rho, 3, keep)
            assert abs(np.trace(red) - 1.0) <= 1e-12
        assert np.allclose(linalg.partial_trace(rho, 3, [1, 2, 3]), rho, atol=1e-14)

    def test_against_loop_oracle(self):
        rng = np.random.default_rng(17)
        rho = random_density_matrix(3, rng)
        for size in (1, 2):
            for keep in itertools.combinations((1, 2, 3), size):
                mine = linalg.partial_trace(rho, 3, list(keep))
                ref = naive_partial_trace(rho, 3, list(keep))
                assert np.linalg.norm(mine - ref) <= 1e-13

    def test_bad_indices(self):
        with pytest.raises(errors.DimensionError):
            linalg.partial_trace(bell_rho(), 2, [3])
        with pytest.raises(errors.DimensionError):
            linalg.partial_trace(bell_rho(), 2, [])


class TestHermEig:
    def test_sigma_z(self):
        w, _ = linalg.herm_eig(SZ)
        assert np.allclose(w, [-1.0, 1.0], atol=1e-14)

    def test_sigma_x_eigenvectors(self):
        w, q = linalg.herm_eig(SX)
        assert np.allclose(w, [-1.0, 1.0], atol=1e-14)
        minus = np.array([1.0, -1.0]) / np.sqrt(2.0)
        plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
        assert abs(abs(np.vdot(q[:, 0], minus)) - 1.0) <= 1e-12
        assert abs(abs(np.vdot(q[:, 1], plus)) - 1.0) <= 1e-12

    def test_bell_spectrum(self):
        w, _ = linalg.herm_eig(bell_rho())
        assert np.allclose(sorted(w), [0.0, 0.0, 0.0, 1.0], atol=1e-12)

    def test_reconstruction_and_orthonormality(self):
        rng = np.random.default_rng(23)
        for n in (2, 3, 4):
            rho = random_density_matrix(n, rng)
            w, q = linalg.herm_eig(rho)
            norm = max(1.0, np.linalg.norm(rho))
            assert np.linalg.norm(rho - (q * w) @ q.conj().T) <= 1e-10 * norm
            assert np.linalg.norm(q.conj().T @ q - np.eye(2**n)) <= 1e-10
            assert abs(w.sum() - np.trace(rho).real) <= 1e-10
            assert np.all(np.diff(w) >= -1e-15)

    def test_rejects_non_hermitian(self):
        with pytest.raises(errors.NumericsError):
            linalg.herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


class TestPsdSqrt:
    def test_identity(self):
        assert np.allclose(linalg.psd_sqrt(np.eye(4, dtype=complex)), np.eye(4), atol=1e-12)

    def test_diagonal(self):
        out = linalg.psd_sqrt(np.diag([4.0, 9.0]).astype(complex))
        assert np.allclose(out, np.diag([2.0, 3.0]), atol=1e-12)

    def test_square_recovers_input(self):
        rng = np.random.default_rng(29)
        for n in (1, 2, 3):
            rho = random_density_matrix(n, rng)
            root = linalg.psd_sqrt(rho)
            assert np.linalg.norm(root @ root - rho) <= 1e-9
            assert np.linalg.norm(root - root.conj().T) <= 1e-12

    def test_clips_round_off(self):
        out = linalg.psd_sqrt(np.diag([1.0, -5e-11]).astype(complex))
        assert np.allclose(out, np.diag([1.0, 0.0]), atol=1e-5)

    def test_rejects_indefinite(self):
        with pytest.raises(errors.NumericsError):
            linalg.psd_sqrt(SZ)


class TestTraceDistance:
    def test_equal_states(self):
        assert linalg.trace_distance(bell_rho(), bell_rho()) <= 1e-15

    def test_orthogonal_pure(self):
        a = np.diag([1.0, 0.0]).astype(complex)
        b = np.diag([0.0, 1.0]).astype(complex)
        assert abs(linalg.trace_distance(a, b) - 1.0) <= 1e-14

    def test_shape_mismatch(self):
        with pytest.raises(errors.DimensionError):
            linalg.trace_distance(np.eye(2), np.eye(4))
