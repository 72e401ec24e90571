"""Hilbert-space primitives: construction invariants, products, spectra."""

import json
import math

import numpy as np
import pytest

from tsvf.hilbert import (
    DimensionMismatchError,
    LinearOperator,
    Observable,
    StateVector,
    ValidationError,
    basis_state,
    identity_operator,
    inner_product,
    load_observable,
    load_state,
    operator_from_dict,
    operator_to_dict,
    pauli,
    projector_onto,
    rank_one_vector,
    spectral_decompose,
    spin_observable,
    spin_state,
    state_from_dict,
    state_to_dict,
    tensor_product,
)

UP = basis_state(2, 0)
DOWN = basis_state(2, 1)


def random_state(rng, dim):
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector.normalized(vec)


def random_hermitian(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return LinearOperator((m + m.conj().T) / 2.0)


class TestStateVector:
    def test_dim_matches_length(self):
        s = StateVector.normalized([1.0, 2.0, 2.0])
        assert s.dim == 3
        assert len(s.amplitudes) == 3

    def test_rejects_unnormalized(self):
        with pytest.raises(ValidationError):
            StateVector(np.array([1.0, 1.0]))

    def test_rejects_bad_shape(self):
        with pytest.raises(ValidationError):
            StateVector(np.eye(2))
        with pytest.raises(ValidationError):
            StateVector(np.array([]))

    def test_rejects_zero_vector(self):
        with pytest.raises(ValidationError):
            StateVector.normalized([0.0, 0.0])

    def test_amplitudes_immutable(self):
        s = basis_state(2, 0)
        with pytest.raises(ValueError):
            s.amplitudes[0] = 0.5


class TestInnerProduct:
    def test_normalized_with_itself(self):
        assert inner_product(UP, UP) == pytest.approx(1.0 + 0.0j, abs=1e-15)

    def test_orthogonal_basis_states(self):
        assert inner_product(UP, DOWN) == pytest.approx(0.0, abs=1e-15)

    def test_overlap_at_60_degrees(self):
        # |<xi_up|z_up>|^2 = cos^2(theta/2) = 0.75 at theta = 60 deg
        overlap = inner_product(spin_state(math.radians(60.0)), UP)
        assert abs(overlap) ** 2 == pytest.approx(0.75, abs=1e-12)

    def test_conjugate_symmetry(self):
        rng = np.random.default_rng(7)
        for dim in (2, 3, 4):
            a, b = random_state(rng, dim), random_state(rng, dim)
            assert inner_product(a, b) == pytest.approx(
                np.conj(inner_product(b, a)), abs=1e-14
            )

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            inner_product(UP, basis_state(3, 0))


class TestTensorProduct:
    def test_basis_product_row_major(self):
        np.testing.assert_allclose(
            tensor_product(UP, DOWN).amplitudes, [0, 1, 0, 0], atol=1e-15
        )

    def test_index_map(self):
        # composite index of (i, j) is i * dim_b + j
        for i in range(2):
            for j in range(3):
                prod = tensor_product(basis_state(2, i), basis_state(3, j))
                assert abs(prod.amplitudes[i * 3 + j]) == pytest.approx(1.0)

    def test_norm_multiplicativity(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            prod = tensor_product(random_state(rng, 2), random_state(rng, 3))
            assert np.sum(np.abs(prod.amplitudes) ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_singlet_amplitudes(self):
        ud = tensor_product(UP, DOWN).amplitudes
        du = tensor_product(DOWN, UP).amplitudes
        singlet = StateVector.normalized(ud - du)
        np.testing.assert_allclose(
            singlet.amplitudes,
            [0.0, 1.0 / math.sqrt(2.0), -1.0 / math.sqrt(2.0), 0.0],
            atol=1e-15,
        )

    def test_three_factor_associativity(self):
        rng = np.random.default_rng(13)
        a, b, c = (random_state(rng, d) for d in (2, 3, 2))
        left = tensor_product(tensor_product(a, b), c)
        right = tensor_product(a, tensor_product(b, c))
        np.testing.assert_allclose(left.amplitudes, right.amplitudes, atol=1e-12)


class TestSpinState:
    def test_poles(self):
        np.testing.assert_allclose(spin_state(0.0).amplitudes, [1, 0], atol=1e-15)
        np.testing.assert_allclose(spin_state(math.pi).amplitudes, [0, 1], atol=1e-15)

    def test_overlap_law(self):
        for theta_deg in (0.0, 30.0, 60.0, 90.0, 120.0, 180.0):
            theta = math.radians(theta_deg)
            overlap = abs(inner_product(spin_state(theta), UP)) ** 2
            assert overlap == pytest.approx(math.cos(theta / 2.0) ** 2, abs=1e-12)

    def test_phase_convention_up_amplitude_real_nonnegative(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            theta = rng.uniform(0.0, 4.0 * math.pi)
            phi = rng.uniform(0.0, 2.0 * math.pi)
            amp = spin_state(theta, phi).amplitudes[0]
            assert amp.imag == pytest.approx(0.0, abs=1e-15)
            assert amp.real >= 0.0


class TestSpinObservable:
    def test_matches_paulis(self):
        np.testing.assert_allclose(
            spin_observable(0.0).matrix, pauli("z").matrix, atol=1e-12
        )
        np.testing.assert_allclose(
            spin_observable(math.pi / 2).matrix, pauli("x").matrix, atol=1e-12
        )
        np.testing.assert_allclose(
            spin_observable(math.pi / 2, math.pi / 2).matrix,
            pauli("y").matrix,
            atol=1e-12,
        )

    def test_plus_projector_is_axis_state(self):
        theta, phi = math.radians(37.0), math.radians(101.0)
        ket = spin_state(theta, phi).amplitudes
        plus = spin_observable(theta, phi).projector_for(1.0)
        np.testing.assert_allclose(plus, np.outer(ket, ket.conj()), atol=1e-12)


class TestObservableInvariants:
    @pytest.mark.parametrize("theta_deg", [0.0, 45.0, 90.0, 133.0])
    def test_constructed_observables_are_valid(self, theta_deg):
        obs = spin_observable(math.radians(theta_deg))
        identity = np.eye(obs.dim)
        total = sum(obs.projectors)
        np.testing.assert_allclose(total, identity, atol=1e-10)
        for p in obs.projectors:
            np.testing.assert_allclose(p, p.conj().T, atol=1e-10)
            np.testing.assert_allclose(p @ p, p, atol=1e-10)

    def test_rejects_incomplete_projectors(self):
        p = np.diag([1.0, 0.0]).astype(complex)
        with pytest.raises(ValidationError):
            Observable((1.0,), (p,))

    def test_rejects_non_idempotent(self):
        with pytest.raises(ValidationError):
            Observable((0.0, 1.0), (np.eye(2) * 0.5, np.eye(2) * 0.5))

    def test_rejects_duplicate_eigenvalues(self):
        p0 = np.diag([1.0, 0.0]).astype(complex)
        p1 = np.diag([0.0, 1.0]).astype(complex)
        with pytest.raises(ValidationError):
            Observable((1.0, 1.0 + 1e-12), (p0, p1))

    def test_eigenvalues_sorted_ascending(self):
        obs = spin_observable(0.3)
        assert obs.eigenvalues == (-1.0, 1.0)


class TestSpectralDecompose:
    def test_sigma_z(self):
        obs = spectral_decompose(pauli("z"))
        assert obs.eigenvalues == pytest.approx((-1.0, 1.0))
        np.testing.assert_allclose(
            obs.projector_for(1.0), np.diag([1.0, 0.0]), atol=1e-12
        )
        np.testing.assert_allclose(
            obs.projector_for(-1.0), np.diag([0.0, 1.0]), atol=1e-12
        )

    def test_identity(self):
        obs = spectral_decompose(identity_operator(3))
        assert obs.eigenvalues == pytest.approx((1.0,))
        np.testing.assert_allclose(obs.projectors[0], np.eye(3), atol=1e-12)

    def test_two_spin_x_sum(self):
        # Oracle: hand-built product eigenbasis of sigma_1x + sigma_2x.
        sum_op = pauli("x").tensor(identity_operator(2)) + identity_operator(2).tensor(
            pauli("x")
        )
        obs = spectral_decompose(sum_op)
        assert obs.eigenvalues == pytest.approx((-2.0, 0.0, 2.0), abs=1e-12)
        assert obs.ranks() == (1, 2, 1)

        plus_x = np.array([1.0, 1.0]) / math.sqrt(2.0)
        minus_x = np.array([1.0, -1.0]) / math.sqrt(2.0)
        pp = np.kron(plus_x, plus_x)
        mm = np.kron(minus_x, minus_x)
        np.testing.assert_allclose(
            obs.projector_for(2.0), np.outer(pp, pp), atol=1e-10
        )
        np.testing.assert_allclose(
            obs.projector_for(-2.0), np.outer(mm, mm), atol=1e-10
        )

    def test_reconstruction(self):
        rng = np.random.default_rng(23)
        for dim in (2, 3, 4, 8):
            op = random_hermitian(rng, dim)
            obs = spectral_decompose(op)
            np.testing.assert_allclose(obs.matrix, op.matrix, atol=1e-8)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            spectral_decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_degenerate_cluster_merged(self):
        obs = spectral_decompose(np.diag([1.0, 1.0 + 1e-10, 3.0]))
        assert len(obs.eigenvalues) == 2
        assert obs.ranks() == (2, 1)


class TestRankOneVector:
    def test_extracts_spanning_vector(self):
        rng = np.random.default_rng(5)
        state = random_state(rng, 3)
        recovered = rank_one_vector(projector_onto(state).matrix)
        # equality up to global phase
        assert abs(inner_product(recovered, state)) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_higher_rank(self):
        with pytest.raises(ValidationError):
            rank_one_vector(np.eye(2))


class TestFileFormat:
    def test_state_round_trip(self, tmp_path):
        state = spin_state(1.1, 2.2)
        doc = state_to_dict(state)
        assert doc["dim"] == 2
        assert len(doc["amplitudes"]) == 2
        path = tmp_path / "state.json"
        path.write_text(json.dumps(doc))
        loaded = load_state(path)
        np.testing.assert_allclose(loaded.amplitudes, state.amplitudes, atol=1e-15)

    def test_operator_round_trip(self, tmp_path):
        op = pauli("y")
        doc = operator_to_dict(op)
        assert doc["dim"] == 2 and len(doc["matrix"]) == 4
        restored = operator_from_dict(doc)
        np.testing.assert_allclose(restored.matrix, op.matrix, atol=1e-15)

    def test_observable_derived_on_load(self, tmp_path):
        path = tmp_path / "obs.json"
        path.write_text(json.dumps(operator_to_dict(pauli("x"))))
        obs = load_observable(path)
        assert obs.eigenvalues == pytest.approx((-1.0, 1.0))

    @pytest.mark.parametrize(
        "doc",
        [
            {"dim": 2},
            {"amplitudes": [[1, 0], [0, 0]]},
            {"dim": 2, "amplitudes": [[1, 0]]},
            {"dim": 2, "amplitudes": [[1, 0], [0, "x"]]},
        ],
    )
    def test_malformed_state_documents(self, doc):
        with pytest.raises(ValidationError):
            state_from_dict(doc)

    def test_malformed_operator_document(self):
        with pytest.raises(ValidationError):
            operator_from_dict({"dim": 2, "matrix": [[1, 0]]})

    def test_unreadable_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ValidationError):
            load_state(path)
