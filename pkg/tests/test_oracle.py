import numpy as np
import pytest

from qrepeater import (
    DegenerateMeasurementError,
    FourAtomState,
    ModelParams,
    build_effective,
    build_full,
    concurrence_pure,
    derive_params,
    embed_pair_operator,
    full_vs_effective_report,
    postselect,
    propagate,
    wootters_concurrence,
)

RT2 = 1.0 / np.sqrt(2.0)


class TestBuildEffective:
    def test_matrix_layout(self, lossy):
        d = derive_params(lossy)
        m = build_effective(d).matrix
        lam = d.lam
        expected = np.array(
            [
                [2 * lam, 0, 0, 0],
                [0, lam, lam, 0],
                [0, lam, lam, 0],
                [0, 0, 0, 0],
            ]
        )
        assert np.array_equal(m, expected)

    def test_basis(self, balanced):
        ham = build_effective(derive_params(balanced))
        assert ham.basis == ("ee", "eg", "ge", "gg")
        assert ham.kind == "effective"


class TestEmbedPairOperator:
    def test_identity_embeds_to_identity(self):
        out = embed_pair_operator(np.eye(4), 4, 1)
        assert np.array_equal(out, np.eye(16))

    def test_action_on_middle_atoms(self):
        # flip |ee> <- |gg| on the middle pair: maps egge -> eeee
        op = np.zeros((4, 4))
        op[0, 3] = 1.0
        big = embed_pair_operator(op, 4, 1)
        vec = np.zeros(16)
        vec[0b0110] = 1.0  # egge
        out = big @ vec
        assert out[0b0000] == 1.0
        assert np.count_nonzero(out) == 1

    def test_slot_bounds(self):
        with pytest.raises(ValueError):
            embed_pair_operator(np.eye(4), 4, 3)
        with pytest.raises(ValueError):
            embed_pair_operator(np.eye(4), 4, -1)


class TestBuildFull:
    def test_dimension_and_basis(self, balanced):
        ham = build_full(balanced, photon_cutoff=3)
        assert ham.matrix.shape == (16, 16)
        assert ham.basis[0] == "ee|0"
        assert ham.basis[-1] == "gg|3"
        assert ham.photon_cutoff == 3

    def test_cutoff_floor(self, balanced):
        with pytest.raises(ValueError):
            build_full(balanced, photon_cutoff=1)

    def test_exchange_element(self, balanced):
        # one-photon absorption: <eg,0|H|gg,1> = g
        ham = build_full(balanced, photon_cutoff=2)
        i = ham.basis.index("eg|0")
        j = ham.basis.index("gg|1")
        assert ham.matrix[i, j] == balanced.g

    def test_two_photon_matrix_element_scaling(self, balanced):
        # <gg,2|H|eg,1> = g*sqrt(2) from the bosonic ladder
        ham = build_full(balanced, photon_cutoff=2)
        i = ham.basis.index("gg|2")
        j = ham.basis.index("eg|1")
        assert ham.matrix[i, j] == pytest.approx(balanced.g * np.sqrt(2.0), abs=1e-15)

    def test_decay_diagonal(self):
        p = ModelParams(g=1.0, delta=10.0, kappa=20.0, gamma=10.0)
        ham = build_full(p, photon_cutoff=2, omega=0.0)
        # ee|1: two excited atoms and one photon
        k = ham.basis.index("ee|1")
        assert ham.h0_diag[k] == pytest.approx(p.delta - 1j * p.gamma - 0.5j * p.kappa)

    def test_omega_shifts_only_the_free_part(self, balanced):
        a = build_full(balanced, omega=0.0)
        b = build_full(balanced, omega=7.0)
        coupling_a = a.matrix - np.diag(np.diag(a.matrix))
        coupling_b = b.matrix - np.diag(np.diag(b.matrix))
        assert np.array_equal(coupling_a, coupling_b)


class TestPropagate:
    def test_zero_duration_is_identity(self, lossy, rng):
        ham = build_effective(derive_params(lossy))
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert np.allclose(propagate(ham, psi, 0.0), psi, atol=1e-15)

    def test_dimension_check(self, lossy):
        ham = build_effective(derive_params(lossy))
        with pytest.raises(ValueError):
            propagate(ham, np.zeros(5), 1.0)

    def test_norm_decays_under_net_loss(self, lossy):
        ham = build_effective(derive_params(lossy))
        psi = np.array([0, RT2, RT2, 0], dtype=complex)
        n1 = np.linalg.norm(propagate(ham, psi, 3.0))
        n2 = np.linalg.norm(propagate(ham, psi, 9.0))
        assert 1.0 > n1 > n2

    def test_gg_component_is_stationary(self, lossy):
        ham = build_effective(derive_params(lossy))
        psi = np.array([0, 0, 0, 1], dtype=complex)
        assert np.allclose(propagate(ham, psi, 5.0), psi, atol=1e-15)


class TestPostselect:
    def _product(self, pair_a, pair_b):
        return FourAtomState((1, 4, 5, 8), np.kron(pair_a, pair_b))

    def test_projects_middle_pair(self):
        bell = np.array([RT2, 0, 0, RT2])
        state = self._product(bell, bell)
        out, prob = postselect(state, (4, 5), "ee")
        # keeping (4,5)=ee forces atoms 1 and 8 into e as well
        assert prob == pytest.approx(0.25, abs=1e-14)
        assert out.labels == (1, 8)
        assert abs(out.amp("ee")) == pytest.approx(1.0, abs=1e-14)

    def test_bell_outcome_swaps_entanglement(self):
        singlet = np.array([0, RT2, -RT2, 0])
        state = self._product(singlet, singlet)
        out, prob = postselect(state, (4, 5), np.array([0, RT2, -RT2, 0]))
        assert prob == pytest.approx(0.25, abs=1e-14)
        assert concurrence_pure(out.amps) == pytest.approx(1.0, abs=1e-13)

    def test_outcome_probabilities_complete(self):
        rng = np.random.default_rng(7)
        v = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        state = FourAtomState((1, 4, 5, 8), v / np.linalg.norm(v))
        total = sum(postselect(state, (4, 5), o)[1] for o in ("ee", "eg", "ge", "gg"))
        assert total == pytest.approx(1.0, rel=1e-12)

    def test_degenerate_outcome(self):
        state = self._product(np.array([1, 0, 0, 0]), np.array([1, 0, 0, 0]))
        with pytest.raises(DegenerateMeasurementError):
            postselect(state, (4, 5), "gg")

    def test_unknown_atoms(self):
        state = self._product(np.array([1, 0, 0, 0]), np.array([0, 1, 0, 0]))
        with pytest.raises(ValueError):
            postselect(state, (2, 3), "ee")

    def test_outcome_must_be_normalized(self):
        state = self._product(np.array([1, 0, 0, 0]), np.array([0, 1, 0, 0]))
        with pytest.raises(ValueError):
            postselect(state, (4, 5), np.array([1.0, 1.0, 0, 0]))


class TestWoottersConcurrence:
    def test_bell_state_density_matrix(self):
        v = np.array([RT2, 0, 0, RT2])
        rho = np.outer(v, v.conj())
        assert wootters_concurrence(rho) == pytest.approx(1.0, abs=1e-12)

    def test_product_state(self):
        v = np.kron([0.6, 0.8], [RT2, RT2])
        rho = np.outer(v, np.conj(v))
        assert wootters_concurrence(rho) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert wootters_concurrence(np.eye(4) / 4.0) == 0.0

    def test_isotropic_mixture_threshold(self):
        # singlet weight p mixed with white noise: C = max(0, (3p-1)/2)
        singlet = np.array([0, RT2, -RT2, 0])
        pure = np.outer(singlet, singlet)
        for p in (0.1, 1.0 / 3.0, 0.5, 0.9):
            rho = p * pure + (1.0 - p) * np.eye(4) / 4.0
            expected = max(0.0, (3.0 * p - 1.0) / 2.0)
            assert wootters_concurrence(rho) == pytest.approx(expected, abs=1e-12)

    def test_matches_pure_formula(self, rng):
        for _ in range(50):
            v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            v /= np.linalg.norm(v)
            rho = np.outer(v, v.conj())
            assert wootters_concurrence(rho) == pytest.approx(
                concurrence_pure(v), abs=1e-12
            )

    def test_input_validation(self):
        with pytest.raises(ValueError):
            wootters_concurrence(np.eye(3) / 3.0)
        with pytest.raises(ValueError):
            wootters_concurrence(np.eye(4))  # trace 4
        skew = np.eye(4) / 4.0
        skew = skew.astype(complex)
        skew[0, 1] = 0.2j  # not Hermitian
        with pytest.raises(ValueError):
            wootters_concurrence(skew)


class TestFullVsEffective:
    def test_large_detuning_agreement(self):
        p = ModelParams(g=1.0, delta=30.0, kappa=10.0, gamma=10.0)
        rep = full_vs_effective_report(p, 10.0)
        assert rep.max_infidelity < 1e-4
        assert rep.photon_cutoff == 3
        assert len(rep.labels) == len(rep.infidelities)

    def test_small_detuning_disagreement(self):
        good = full_vs_effective_report(ModelParams(g=1.0, delta=30.0), 10.0)
        bad = full_vs_effective_report(ModelParams(g=1.0, delta=3.0), 10.0)
        assert bad.max_infidelity > 10.0 * good.max_infidelity

    def test_gauge_invariance_in_omega(self):
        p = ModelParams(g=1.0, delta=30.0, kappa=20.0, gamma=10.0)
        a = full_vs_effective_report(p, 8.0, omega=0.0)
        b = full_vs_effective_report(p, 8.0, omega=11.0)
        assert np.allclose(a.infidelities, b.infidelities, atol=1e-12)

    def test_cutoff_stability(self):
        p = ModelParams(g=1.0, delta=30.0, kappa=20.0, gamma=10.0)
        a = full_vs_effective_report(p, 10.0, photon_cutoff=3)
        b = full_vs_effective_report(p, 10.0, photon_cutoff=4)
        assert abs(a.max_infidelity - b.max_infidelity) < 1e-10

    def test_vacuum_weight_recorded(self):
        p = ModelParams(g=1.0, delta=30.0, kappa=10.0, gamma=10.0)
        rep = full_vs_effective_report(p, 5.0)
        assert all(0.0 < w <= 1.0 + 1e-12 for w in rep.vacuum_weights)
