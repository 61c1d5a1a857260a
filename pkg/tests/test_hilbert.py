import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import SQ2, ghz, make_state, plus_zero, random_state, singlet
from qcascade import (
    Factorization,
    StateVector,
    biorthogonal_decompose,
    bipartition_matrix,
    partial_trace,
    tensor_product,
)
from qcascade.errors import NormViolation, UnknownLabel


def qubit(a, b, labels=("A",)):
    amps = np.array([a, b], dtype=complex)
    return StateVector(amps / np.linalg.norm(amps), Factorization((2,), labels))


class TestTensorProduct:
    def test_basis_states(self):
        out = tensor_product(qubit(1, 0, ("A",)), qubit(0, 1, ("B",)))
        np.testing.assert_allclose(out.amplitudes, [0, 1, 0, 0])

    def test_uniform_superposition(self):
        out = tensor_product(qubit(1, 1, ("A",)), qubit(1, 1, ("B",)))
        np.testing.assert_allclose(out.amplitudes, [0.25 ** 0.5] * 4)

    def test_complex_amplitudes(self):
        out = tensor_product(qubit(1, 1j, ("A",)), qubit(1, 0, ("B",)))
        np.testing.assert_allclose(out.amplitudes, [SQ2, 0, 1j * SQ2, 0], atol=1e-15)

    def test_clashing_labels_rejected(self):
        with pytest.raises(UnknownLabel):
            tensor_product(qubit(1, 0, ("A",)), qubit(1, 0, ("A",)))


class TestBipartitionMatrix:
    def test_singlet_focus_first(self):
        m = bipartition_matrix(singlet(), "A")
        np.testing.assert_allclose(m, [[0, SQ2], [-SQ2, 0]])

    def test_product_state(self):
        psi = make_state([0, 1, 0, 0], (2, 2))  # |0>|1>
        np.testing.assert_allclose(bipartition_matrix(psi, "A"), [[0, 1], [0, 0]])

    def test_ghz_focus_second(self):
        m = bipartition_matrix(ghz(), "B")
        expected = np.zeros((2, 4))
        expected[0, 0] = expected[1, 3] = SQ2
        np.testing.assert_allclose(m, expected)

    def test_reconstruction_roundtrip(self):
        rng = np.random.default_rng(7)
        psi = random_state(rng, (2, 3, 2))
        m = bipartition_matrix(psi, "B")
        # undo: rows back to axis 1
        back = np.moveaxis(m.reshape(3, 2, 2), 0, 1).ravel()
        np.testing.assert_allclose(back, psi.amplitudes)

    def test_unknown_label(self):
        with pytest.raises(UnknownLabel):
            bipartition_matrix(singlet(), "Z")


class TestBiorthogonalDecompose:
    def test_product_state_rank_one(self):
        dec = biorthogonal_decompose(plus_zero(), "A")
        assert dec.rank == 1
        np.testing.assert_allclose(abs(dec.coefficients[0]), 1.0)
        np.testing.assert_allclose(dec.left_vectors[0], [SQ2, SQ2], atol=1e-12)
        np.testing.assert_allclose(dec.right_vectors[0], [1, 0], atol=1e-12)

    def test_singlet_degenerate_spectrum(self):
        dec = biorthogonal_decompose(singlet(), "A")
        assert dec.rank == 2
        np.testing.assert_allclose(np.abs(dec.coefficients), [SQ2, SQ2])

    def test_recovers_schmidt_form(self):
        psi = make_state([np.sqrt(0.8), 0, 0, np.sqrt(0.2)], (2, 2))
        dec = biorthogonal_decompose(psi, "A")
        np.testing.assert_allclose(np.abs(dec.coefficients) ** 2, [0.8, 0.2], atol=1e-12)
        np.testing.assert_allclose(np.abs(dec.left_vectors), [[1, 0], [0, 1]], atol=1e-12)

    def test_deterministic(self):
        rng = np.random.default_rng(3)
        psi = random_state(rng, (3, 2, 2))
        d1 = biorthogonal_decompose(psi, "A")
        d2 = biorthogonal_decompose(psi, "A")
        np.testing.assert_array_equal(d1.left_vectors, d2.left_vectors)
        np.testing.assert_array_equal(d1.right_vectors, d2.right_vectors)

    def test_phase_convention(self):
        rng = np.random.default_rng(11)
        psi = random_state(rng, (2, 3))
        dec = biorthogonal_decompose(psi, "A")
        for v in dec.left_vectors:
            top = v[np.argmax(np.abs(v))]
            assert abs(top.imag) < 1e-12 and top.real > 0

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10**6), focus=st.sampled_from(["A", "B", "C"]))
    def test_reconstruction_and_orthonormality(self, seed, focus):
        rng = np.random.default_rng(seed)
        psi = random_state(rng, (2, 3, 2))
        dec = biorthogonal_decompose(psi, focus)
        assert np.linalg.norm(dec.reconstruct() - psi.amplitudes) < 1e-10
        for fam in (dec.left_vectors, dec.right_vectors):
            gram = fam @ fam.conj().T
            assert np.max(np.abs(gram - np.eye(len(fam)))) < 1e-10
        assert abs(np.sum(np.abs(dec.coefficients) ** 2) - 1) < 1e-10

    def test_rank_bound_unequal_dims(self):
        rng = np.random.default_rng(5)
        psi = random_state(rng, (2, 3, 3))
        dec = biorthogonal_decompose(psi, "A")
        assert dec.rank <= 2  # min(2, 9)
        dec = biorthogonal_decompose(psi, "B")
        assert dec.rank <= 3

    def test_schmidt_partial_trace_consistency(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            psi = random_state(rng, (2, 2, 3))
            for lbl in psi.labels:
                dec = biorthogonal_decompose(psi, lbl)
                rho = np.zeros((psi.factorization.dim_of(lbl),) * 2, dtype=complex)
                for a, v in zip(dec.coefficients, dec.left_vectors):
                    rho += abs(a) ** 2 * np.outer(v, v.conj())
                np.testing.assert_allclose(
                    rho, partial_trace(psi, lbl).entries, atol=1e-9
                )

    def test_non_normalized_rejected(self):
        with pytest.raises(NormViolation):
            StateVector(np.array([1.0, 1.0]), Factorization((2,), ("A",)))


class TestPartialTrace:
    def test_product_state(self):
        psi = make_state([0, 1, 0, 0], (2, 2))
        np.testing.assert_allclose(partial_trace(psi, "A").entries, [[1, 0], [0, 0]])

    def test_singlet_maximally_mixed(self):
        for lbl in ("A", "B"):
            np.testing.assert_allclose(
                partial_trace(singlet(), lbl).entries, np.eye(2) / 2, atol=1e-12
            )

    def test_ghz(self):
        np.testing.assert_allclose(
            partial_trace(ghz(), "A").entries, np.diag([0.5, 0.5]), atol=1e-12
        )
