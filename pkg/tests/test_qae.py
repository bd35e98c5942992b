import math

import numpy as np
import pytest

from qcontain import qsim
from qcontain.cascade import exact_influence
from qcontain.graph import Graph, ProblemInstance, generate_random_instance
from qcontain.qae import (
    _statevector_qpe_distribution,
    apply_a,
    build_a_operator,
    build_q_operator,
    evaluation_qubits_for,
    qae_estimate,
    qae_influence,
    qpe_outcome_distribution,
)


def ancilla_p1(spec):
    state = apply_a(qsim.init_state(spec.n_qubits), spec)
    return qsim.probability_of(state, spec.ancilla, 1)


class TestAOperator:
    def test_isolated_seed(self):
        inst = ProblemInstance(Graph(1, []), frozenset({0}), 1.0)
        spec = build_a_operator(inst)
        assert ancilla_p1(spec) == pytest.approx(1.0, abs=1e-12)

    def test_single_edge(self, single_edge):
        spec = build_a_operator(single_edge)
        assert ancilla_p1(spec) == pytest.approx(0.75, abs=1e-12)

    def test_chain(self, chain3):
        spec = build_a_operator(chain3)
        assert ancilla_p1(spec) == pytest.approx(1.75 / 3, abs=1e-12)

    def test_matches_exact_oracle_on_random_instances(self):
        for seed in range(10):
            inst = generate_random_instance(6, 0.25, n_seeds=2, rng_seed=seed)
            if len(inst.graph.edges) > 8:
                continue
            a_true = exact_influence(inst).sigma / inst.graph.node_count
            spec = build_a_operator(inst)
            assert abs(ancilla_p1(spec) - a_true) < 1e-9

    def test_respects_removal(self, single_edge):
        spec = build_a_operator(single_edge, removal=(0,))
        assert ancilla_p1(spec) == pytest.approx(0.5, abs=1e-12)

    def test_qubit_cap(self):
        inst = generate_random_instance(8, 1.0, n_seeds=1, rng_seed=0)
        with pytest.raises(ValueError, match="analytic"):
            build_a_operator(inst, max_qubits=10)


class TestQOperator:
    def test_rotates_by_two_theta(self, single_edge):
        spec = build_a_operator(single_edge)
        q = build_q_operator(spec)
        theta = math.asin(math.sqrt(0.75))
        state = apply_a(qsim.init_state(spec.n_qubits), spec)
        state = q(state)
        assert qsim.probability_of(state, spec.ancilla, 1) == pytest.approx(
            math.sin(3 * theta) ** 2, abs=1e-10
        )
        state = q(state)
        assert qsim.probability_of(state, spec.ancilla, 1) == pytest.approx(
            math.sin(5 * theta) ** 2, abs=1e-10
        )

    def test_unitarity_on_random_states(self, chain3):
        spec = build_a_operator(chain3)
        q = build_q_operator(spec)
        rng = np.random.default_rng(3)
        dim = 1 << spec.n_qubits
        for _ in range(5):
            state = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            state /= np.linalg.norm(state)
            out = q(state)
            assert np.sum(np.abs(out) ** 2) == pytest.approx(1.0, abs=1e-9)


class TestQpeReadout:
    def test_grid_aligned_half(self):
        # a = 0.5 means theta/pi = 1/4, exactly on the m=3 grid: y in {2, 6}
        dist = qpe_outcome_distribution(0.5, 3)
        assert dist[2] == pytest.approx(0.5, abs=1e-12)
        assert dist[6] == pytest.approx(0.5, abs=1e-12)

    def test_grid_aligned_pi_over_8(self):
        dist = qpe_outcome_distribution(math.sin(math.pi / 8) ** 2, 3)
        assert dist[1] == pytest.approx(0.5, abs=1e-12)
        assert dist[7] == pytest.approx(0.5, abs=1e-12)

    def test_zero_amplitude(self):
        dist = qpe_outcome_distribution(0.0, 4)
        assert dist[0] == pytest.approx(1.0, abs=1e-12)

    def test_modes_agree(self, single_edge):
        spec = build_a_operator(single_edge)
        for m in (2, 3, 4, 5):
            sv = _statevector_qpe_distribution(spec, m, qsim.MAX_QUBITS)
            an = qpe_outcome_distribution(0.75, m)
            assert np.abs(sv - an).sum() / 2 < 1e-8

    def test_modes_agree_on_chain(self, chain3):
        spec = build_a_operator(chain3)
        a = 1.75 / 3
        sv = _statevector_qpe_distribution(spec, 4, qsim.MAX_QUBITS)
        an = qpe_outcome_distribution(a, 4)
        assert np.abs(sv - an).sum() / 2 < 1e-8


class TestQaeEstimate:
    def test_counters(self, single_edge):
        est = qae_estimate(single_edge, m=3, rng_seed=0, mode="analytic")
        assert est.q_applications == 7
        assert est.a_applications == 15
        assert est.a_hat == pytest.approx(math.sin(est.theta_hat) ** 2)

    def test_statevector_mode_sampling(self, single_edge):
        est = qae_estimate(single_edge, m=4, rng_seed=1, mode="statevector")
        assert 0.0 <= est.a_hat <= 1.0
        assert est.mode == "statevector"

    def test_error_bound_holds_often(self, chain3):
        a = 1.75 / 3
        m = 5
        bound = math.pi / 2**m + math.pi**2 / 2 ** (2 * m)
        rng = np.random.default_rng(11)
        hits = sum(
            abs(qae_estimate(chain3, m=m, rng_seed=rng, mode="analytic").a_hat - a) <= bound
            for _ in range(200)
        )
        assert hits / 200 >= 0.8

    def test_bad_mode(self, single_edge):
        with pytest.raises(ValueError):
            qae_estimate(single_edge, m=3, mode="nope")

    def test_m_must_be_positive(self, single_edge):
        with pytest.raises(ValueError):
            qae_estimate(single_edge, m=0)


class TestQaeInfluence:
    def test_m_selection(self):
        assert evaluation_qubits_for(0.005) == 12

    def test_epsilon_validation(self, single_edge):
        with pytest.raises(ValueError):
            qae_influence(single_edge, epsilon=1.0)
        with pytest.raises(ValueError):
            qae_influence(single_edge, epsilon=0.0)

    def test_single_edge_estimate(self, single_edge):
        est = qae_influence(single_edge, epsilon=0.05, rng_seed=4, mode="analytic")
        assert abs(est.sigma - 1.5) <= 0.05 * 2
        assert est.method == "qae"
        m = evaluation_qubits_for(0.05)
        assert est.trials_or_calls == 3 * (2**m - 1)

    def test_sigma_clamped_to_bounds(self, single_edge):
        est = qae_influence(single_edge, epsilon=0.2, rng_seed=0, mode="analytic")
        assert 1.0 <= est.sigma <= 2.0
