"""Quantum Amplitude Estimation of expected influence.

The A operator prepares a superposition over live-edge configurations (one
qubit per remaining edge, rotated so P(1) = p_e) and rotates a success
ancilla so its P(1) equals the normalized influence a = sigma / |V|. The
Grover operator Q rotates by 2*theta (a = sin^2 theta) in the invariant
plane, and canonical phase estimation on Q reads theta off the m-qubit grid.

Two interchangeable modes:

* ``statevector`` -- full simulation on the edge+ancilla+evaluation register.
* ``analytic`` -- computes a exactly with the live-edge oracle and samples
  the phase-estimation outcome from its closed-form distribution; identical
  output contract, no statevector, so it scales past the qubit cap.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import asin, ceil, log2, pi, sqrt

import numpy as np

from . import qsim
from .cascade import exact_influence, live_edge_reachability
from .graph import ProblemInstance

QPE_REPETITIONS = 3


@dataclass(frozen=True)
class AOperatorSpec:
    instance: ProblemInstance
    removal: tuple[int, ...]
    n_edge_qubits: int
    ancilla: int
    edge_angles: tuple[float, ...]
    # fraction of infected nodes per edge-configuration basis index
    f_table: np.ndarray

    @property
    def n_qubits(self) -> int:
        return self.n_edge_qubits + 1


@dataclass(frozen=True)
class AmplitudeEstimate:
    a_hat: float
    theta_hat: float
    m: int
    grid: str
    q_applications: int
    a_applications: int
    mode: str


def build_a_operator(
    instance: ProblemInstance,
    removal: tuple[int, ...] = (),
    max_qubits: int = qsim.MAX_QUBITS,
) -> AOperatorSpec:
    sub = instance.without_edges(removal)
    g = sub.graph
    n_edges = len(g.edges)
    if n_edges + 1 > max_qubits:
        raise ValueError(
            f"A operator needs {n_edges + 1} qubits (> cap {max_qubits}); "
            "use analytic mode"
        )
    reach = live_edge_reachability(g, sub.seeds)
    f_table = reach.sum(axis=1) / g.node_count
    angles = tuple(2.0 * asin(sqrt(e.p)) for e in g.edges)
    return AOperatorSpec(
        instance=instance,
        removal=tuple(removal),
        n_edge_qubits=n_edges,
        ancilla=n_edges,
        edge_angles=angles,
        f_table=f_table,
    )


def _ancilla_angles(spec: AOperatorSpec):
    mask = (1 << spec.n_edge_qubits) - 1
    theta = 2.0 * np.arcsin(np.sqrt(spec.f_table))

    def angle_of_index(indices: np.ndarray) -> np.ndarray:
        return theta[indices & mask]

    return angle_of_index


def apply_a(state: np.ndarray, spec: AOperatorSpec, adjoint: bool = False) -> np.ndarray:
    """Apply A (or its adjoint) to the low edge+ancilla qubits of ``state``."""
    angle_fn = _ancilla_angles(spec)
    if not adjoint:
        for q, angle in enumerate(spec.edge_angles):
            state = qsim.apply_ry(state, q, angle)
        state = qsim.apply_ry_indexed(state, spec.ancilla, angle_fn)
    else:
        state = qsim.apply_ry_indexed(state, spec.ancilla, lambda ix: -angle_fn(ix))
        for q in reversed(range(spec.n_edge_qubits)):
            state = qsim.apply_ry(state, q, -spec.edge_angles[q])
    return state


def build_q_operator(spec: AOperatorSpec):
    """The amplitude-amplification operator Q as a function on states.

    Q = (2|psi><psi| - I) S_f with |psi> = A|0>, i.e. the sign convention
    under which Q has eigenvalues e^{+-2i theta} and phase estimation reads
    theta/pi directly. ``control`` restricts the action to basis states where
    that qubit is 1 (used for the phase-estimation ladder).
    """
    system_mask = (1 << spec.n_qubits) - 1
    ancilla_bit = 1 << spec.ancilla

    def cond(mask_fn, control):
        def pred(indices: np.ndarray) -> np.ndarray:
            m = mask_fn(indices)
            if control is not None:
                m = m & (((indices >> control) & 1) == 1)
            return m

        return pred

    def apply_q(state: np.ndarray, control: int | None = None) -> np.ndarray:
        # S_f: flip the sign of ancilla=1 states
        state = qsim.phase_flip_if(state, cond(lambda ix: (ix & ancilla_bit) != 0, control))
        state = apply_a(state, spec, adjoint=True)
        # 2|0><0| - I on the system register: flip everything except |0...0>
        state = qsim.phase_flip_if(state, cond(lambda ix: (ix & system_mask) != 0, control))
        return apply_a(state, spec)

    return apply_q


def qpe_outcome_distribution(a: float, m: int) -> np.ndarray:
    """Exact phase-estimation outcome distribution for amplitude a.

    A|0> splits evenly between the two Q eigenvectors with eigenphases
    +-theta/pi; the readout is the matching mixture of Fejer-type kernels.
    """
    theta = asin(sqrt(a))
    dim = 1 << m
    y = np.arange(dim)
    phis = [theta / pi % 1.0]
    weights = [1.0]
    if 0.0 < a < 1.0:
        phis = [theta / pi % 1.0, (-theta / pi) % 1.0]
        weights = [0.5, 0.5]
    dist = np.zeros(dim)
    for phi, w in zip(phis, weights):
        delta = phi - y / dim
        num = np.sin(pi * dim * delta)
        den = dim * np.sin(pi * delta)
        with np.errstate(divide="ignore", invalid="ignore"):
            kernel = np.where(np.abs(den) < 1e-12, 1.0, (num / np.where(den == 0, 1, den)) ** 2)
        dist += w * kernel
    return dist / dist.sum()


def _statevector_qpe_distribution(spec: AOperatorSpec, m: int, max_qubits: int) -> np.ndarray:
    s = spec.n_qubits
    n = s + m
    if n > max_qubits:
        raise ValueError(
            f"phase estimation needs {n} qubits (> cap {max_qubits}); use analytic mode"
        )
    apply_q = build_q_operator(spec)
    state = qsim.init_state(n)
    state = apply_a(state, spec)
    eval_register = list(range(s, s + m))
    for q in eval_register:
        state = qsim.apply_h(state, q)
    for j, q in enumerate(eval_register):
        for _ in range(1 << j):
            state = apply_q(state, control=q)
    state = qsim.inverse_qft(state, eval_register)
    return qsim.register_distribution(state, eval_register)


def qae_estimate(
    instance: ProblemInstance,
    removal: tuple[int, ...] = (),
    m: int = 4,
    rng_seed: int | np.random.Generator = 0,
    mode: str = "statevector",
    max_qubits: int = qsim.MAX_QUBITS,
) -> AmplitudeEstimate:
    if m < 1:
        raise ValueError("m must be >= 1")
    rng = (
        rng_seed
        if isinstance(rng_seed, np.random.Generator)
        else np.random.default_rng(rng_seed)
    )
    if mode == "statevector":
        spec = build_a_operator(instance, removal, max_qubits=max_qubits - m)
        dist = _statevector_qpe_distribution(spec, m, max_qubits)
    elif mode == "analytic":
        sub = instance.without_edges(removal)
        a = exact_influence(sub).sigma / sub.graph.node_count
        dist = qpe_outcome_distribution(a, m)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    y = int(rng.choice(1 << m, p=dist))
    theta_hat = pi * y / (1 << m)
    a_hat = float(np.sin(theta_hat) ** 2)
    q_apps = (1 << m) - 1
    return AmplitudeEstimate(
        a_hat=a_hat,
        theta_hat=theta_hat,
        m=m,
        grid=f"a_hat in {{sin^2(pi*y/2^{m})}}",
        q_applications=q_apps,
        a_applications=2 * q_apps + 1,
        mode=mode,
    )


def evaluation_qubits_for(epsilon: float) -> int:
    """Grid fine enough for additive error epsilon, with two guard qubits."""
    if not (0.0 < epsilon < 1.0):
        raise ValueError("epsilon must be in (0, 1)")
    return ceil(log2(pi / epsilon)) + 2


def qae_influence(
    instance: ProblemInstance,
    removal: tuple[int, ...] = (),
    epsilon: float = 0.05,
    rng_seed: int = 0,
    mode: str = "statevector",
) -> "InfluenceEstimate":
    from .cascade import InfluenceEstimate

    m = evaluation_qubits_for(epsilon)
    rng = np.random.default_rng(rng_seed)
    estimates = [
        qae_estimate(instance, removal, m=m, rng_seed=rng, mode=mode)
        for _ in range(QPE_REPETITIONS)
    ]
    a_hat = float(np.median([e.a_hat for e in estimates]))
    n = instance.graph.node_count
    n_seeds = len(instance.seeds)
    sigma = min(max(a_hat * n, float(n_seeds)), float(n))
    return InfluenceEstimate(
        sigma=sigma,
        sigma_normalized=sigma / n,
        std_error=epsilon * n,
        trials_or_calls=sum(e.q_applications for e in estimates),
        method="qae",
    )
