import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majur.errors import DimensionMismatch, NotConverged, NotHermitian, ZeroVector
from majur.numerics import (HermitianOperator, eigenvalues, hermitian_eigenvalues,
                            jacobi_eigenvalues, max_eigenvalue, min_eigenvalue,
                            projector_from_vector, real_embedding, weighted_sum)
from majur.quantum import builtin_vectors
from oracles import power_oracle, random_hermitian


hermitians = st.builds(
    lambda seed, dim: random_hermitian(np.random.default_rng(seed), dim),
    st.integers(0, 2**32 - 1), st.integers(1, 8))


class TestHermitianOperator:
    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            HermitianOperator(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_rejects_imaginary_diagonal(self):
        with pytest.raises(NotHermitian):
            HermitianOperator(np.array([[1j, 0], [0, 0]]))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            HermitianOperator(np.zeros((2, 3)))

    def test_tolerance_accepts_tiny_asymmetry(self):
        m = np.array([[1, 0.5 + 1e-11], [0.5, 1]], dtype=complex)
        assert HermitianOperator(m).dim == 2

    def test_matrix_is_read_only(self):
        op = HermitianOperator.identity(3)
        with pytest.raises(ValueError):
            op.matrix[0, 0] = 2.0

    def test_trace(self):
        assert HermitianOperator(np.diag([1.0, 2.0, 3.5])).trace == pytest.approx(6.5)


class TestProjector:
    def test_basis_vector(self):
        p = projector_from_vector([1, 0, 0, 0])
        assert np.allclose(p.matrix, np.diag([1, 0, 0, 0]))

    def test_symmetric_qubit(self):
        p = projector_from_vector(np.array([1, 1]) / np.sqrt(2))
        assert np.allclose(p.matrix, 0.5)

    def test_complex_entries(self):
        p = projector_from_vector(np.array([1, -1j, -1j, 1]) / 2)
        assert np.allclose(np.abs(p.matrix), 0.25)
        assert p.matrix[0, 1] == pytest.approx(0.25j)

    def test_normalizes_input(self):
        p = projector_from_vector([3, 4j])
        assert p.trace == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("v", [[0, 0, 0], [1e-13, 0]])
    def test_zero_vector(self, v):
        with pytest.raises(ZeroVector):
            projector_from_vector(v)

    @given(st.integers(0, 2**32 - 1), st.integers(1, 6))
    def test_idempotent_trace_one(self, seed, dim):
        rng = np.random.default_rng(seed)
        p = projector_from_vector(rng.normal(size=dim) + 1j * rng.normal(size=dim)).matrix
        assert np.allclose(p @ p, p, atol=1e-10)
        assert abs(np.trace(p) - 1) < 1e-10


class TestWeightedSum:
    def test_zero_weight_drops_term(self):
        p = projector_from_vector([1, 0])
        q = projector_from_vector([0, 1])
        assert weighted_sum([(1, p), (0, q)]).allclose(p)

    def test_identity_halves(self):
        i4 = HermitianOperator.identity(4)
        assert weighted_sum([(0.5, i4), (0.5, i4)]).allclose(i4)

    def test_two_projectors_overlap_half(self):
        a = projector_from_vector(builtin_vectors("A")[0])
        b = projector_from_vector(builtin_vectors("B")[0])
        assert abs(np.vdot(builtin_vectors("A")[0], builtin_vectors("B")[0])) == pytest.approx(0.5)
        s = weighted_sum([(1, a), (1, b)])
        assert max_eigenvalue(s) == pytest.approx(1.5, abs=1e-10)
        assert power_oracle(s.matrix) == pytest.approx(1.5, abs=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            weighted_sum([(1, HermitianOperator.identity(2)), (1, HermitianOperator.identity(3))])

    def test_empty(self):
        with pytest.raises(DimensionMismatch):
            weighted_sum([])


class TestEigenvalues:
    def test_identity_and_zero(self):
        assert max_eigenvalue(HermitianOperator.identity(4)) == 1.0
        assert max_eigenvalue(HermitianOperator.zeros(4)) == 0.0

    def test_real_embedding_doubles_spectrum(self, rng):
        h = random_hermitian(rng, 3)
        doubled = np.sort(np.linalg.eigvalsh(real_embedding(h)))
        single = np.sort(np.linalg.eigvalsh(h))
        assert np.allclose(doubled, np.repeat(single, 2), atol=1e-12)

    def test_against_oracles_on_1000_matrices(self):
        rng = np.random.default_rng(1000)
        worst_power, worst_lapack = 0.0, 0.0
        for i in range(1000):
            dim = (2, 3, 4, 6)[i % 4]
            h = random_hermitian(rng, dim)
            ours = hermitian_eigenvalues(h)
            worst_power = max(worst_power, abs(ours.max() - power_oracle(h)))
            worst_lapack = max(worst_lapack, np.max(np.abs(np.sort(ours) - np.linalg.eigvalsh(h))))
        assert worst_power <= 1e-8
        assert worst_lapack <= 1e-8

    @given(hermitians, st.floats(-2, 2))
    def test_shift(self, h, t):
        op = HermitianOperator(h)
        shifted = HermitianOperator(h + t * np.eye(len(h)))
        assert max_eigenvalue(shifted) == pytest.approx(max_eigenvalue(op) + t, abs=1e-9)

    @given(hermitians, st.floats(0, 4, exclude_min=True))
    def test_scale(self, h, c):
        op = HermitianOperator(h)
        assert max_eigenvalue(op.scaled(c)) == pytest.approx(c * max_eigenvalue(op), abs=1e-9)

    @given(hermitians)
    def test_trace_and_bounds(self, h):
        op = HermitianOperator(h)
        vals = eigenvalues(op)
        assert len(vals) == op.dim
        assert vals.sum() == pytest.approx(op.trace, abs=1e-8)
        top = max_eigenvalue(op)
        assert top >= op.trace / op.dim - 1e-10
        assert top >= np.max(np.real(np.diag(h))) - 1e-10
        assert min_eigenvalue(op) <= np.min(np.real(np.diag(h))) + 1e-10

    @settings(max_examples=20)
    @given(st.integers(0, 2**32 - 1))
    def test_dim_16_accuracy(self, seed):
        h = random_hermitian(np.random.default_rng(seed), 16)
        assert abs(max_eigenvalue(HermitianOperator(h)) - np.linalg.eigvalsh(h)[-1]) <= 1e-10

    def test_degenerate_spectrum(self):
        u, _ = np.linalg.qr(np.random.default_rng(3).normal(size=(5, 5)))
        h = u @ np.diag([2.0, 2.0, 2.0, -1.0, 0.0]) @ u.T
        assert np.allclose(np.sort(hermitian_eigenvalues(h)), [-1, 0, 2, 2, 2], atol=1e-10)

    def test_not_converged(self):
        a = np.array([[1.0, 0.5], [0.5, 2.0]])
        with pytest.raises(NotConverged):
            jacobi_eigenvalues(a, max_sweeps=0)

    def test_diagonal_needs_no_sweeps(self):
        assert np.allclose(sorted(jacobi_eigenvalues(np.diag([3.0, 1.0]), max_sweeps=0)), [1, 3])
