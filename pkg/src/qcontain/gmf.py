"""Grover search and Durr-Hoyer minimum finding with oracle-call accounting.

Index spaces are padded to the next power of two; padded indices are never
marked, so a measurement landing there counts as an ordinary miss and both
backends share the same success probability sin^2((2k+1) * asin(sqrt(M/N))).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import asin, ceil, sin, sqrt
from typing import Callable, Sequence

import numpy as np

from . import qsim

GROWTH = 8 / 7
BUDGET_CONSTANT = 9.0
# Stop a run once this many oracle calls have been spent without improving the
# candidate (scaled by sqrt(N), floored for tiny lists). A cheap zero- or
# one-iteration round barely dents the budget, so the schedule keeps probing
# while its iteration cap grows; the post-minimum tail stays bounded.
FAILURE_CALL_CONSTANT = 2.0
FAILURE_CALL_FLOOR = 5
ITERATION_CAP_CONSTANT = 0.9
_MAX_ROUNDS = 500


@dataclass(frozen=True)
class GroverRun:
    found_index: int | None
    iterations_used: int
    oracle_calls: int
    backend: str


@dataclass(frozen=True)
class MinFindResult:
    min_index: int
    min_value: float
    total_oracle_calls: int
    rounds: tuple[tuple[float, GroverRun], ...]


def _padded_size(n_items: int) -> int:
    n = 2  # at least one qubit
    while n < n_items:
        n <<= 1
    return n


def grover_success_probability(
    n_items: int, n_marked: int, iterations: int, backend: str = "analytic"
) -> float:
    """Success probability after the given number of Grover iterations."""
    n_padded = _padded_size(n_items)
    if backend == "analytic":
        theta = asin(sqrt(n_marked / n_padded))
        return sin((2 * iterations + 1) * theta) ** 2
    raise ValueError(f"unknown backend {backend!r}")


def _statevector_distribution(
    n_padded: int, marked_mask: np.ndarray, iterations: int
) -> np.ndarray:
    n_qubits = n_padded.bit_length() - 1
    state = qsim.init_state(n_qubits)
    for q in range(n_qubits):
        state = qsim.apply_h(state, q)
    for _ in range(iterations):
        state = qsim.phase_flip_if(state, marked_mask)
        state = qsim.diffusion(state)
    return qsim.register_distribution(state)


def grover_search(
    n_items: int,
    marked: Callable[[int], bool],
    iterations: int,
    rng_seed: int | np.random.Generator = 0,
    backend: str = "analytic",
) -> GroverRun:
    """One Grover run; returns the sampled index only if it is marked."""
    if n_items < 1:
        raise ValueError("n_items must be >= 1")
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    rng = (
        rng_seed
        if isinstance(rng_seed, np.random.Generator)
        else np.random.default_rng(rng_seed)
    )
    marked_items = [i for i in range(n_items) if marked(i)]
    n_padded = _padded_size(n_items)

    if backend == "analytic":
        theta = asin(sqrt(len(marked_items) / n_padded))
        p_success = sin((2 * iterations + 1) * theta) ** 2
        found = None
        if marked_items and rng.random() < p_success:
            found = int(marked_items[rng.integers(len(marked_items))])
    elif backend == "statevector":
        mask = np.zeros(n_padded, dtype=bool)
        mask[marked_items] = True
        dist = _statevector_distribution(n_padded, mask, iterations)
        outcome = int(rng.choice(n_padded, p=dist / dist.sum()))
        found = outcome if outcome < n_items and mask[outcome] else None
    else:
        raise ValueError(f"unknown backend {backend!r}")

    return GroverRun(
        found_index=found,
        iterations_used=iterations,
        oracle_calls=iterations,
        backend=backend,
    )


def durr_hoyer_min(
    values: Sequence[float] | Callable[[int], float],
    n_items: int,
    rng_seed: int | np.random.Generator = 0,
    backend: str = "analytic",
    call_budget: int | None = None,
    growth: float = GROWTH,
    failure_call_budget: int | None = None,
) -> MinFindResult:
    """Quantum minimum finding via repeated Grover searches below a threshold.

    The iteration count per round is drawn uniformly from [0, cap] where the
    cap follows the exponential schedule ceil(growth^r) over failed rounds r
    (for the unknown marked count), clipped at ~0.9*sqrt(N). Accounting
    charges one oracle call per Grover iteration plus one classical
    evaluation per candidate verification. A run ends when the overall call
    budget is spent or ``failure_call_budget`` calls pass without an
    improvement.
    """
    if n_items < 1:
        raise ValueError("n_items must be >= 1")
    g = values if callable(values) else values.__getitem__
    rng = (
        rng_seed
        if isinstance(rng_seed, np.random.Generator)
        else np.random.default_rng(rng_seed)
    )
    budget = call_budget if call_budget is not None else ceil(BUDGET_CONSTANT * sqrt(n_items))
    if budget < 1:
        raise ValueError("call_budget must be >= 1")
    fail_budget = (
        failure_call_budget
        if failure_call_budget is not None
        else max(ceil(FAILURE_CALL_CONSTANT * sqrt(n_items)), FAILURE_CALL_FLOOR)
    )
    iteration_cap = ceil(ITERATION_CAP_CONSTANT * sqrt(n_items))

    best = int(rng.integers(n_items))
    best_val = float(g(best))
    if n_items == 1:
        return MinFindResult(best, best_val, 0, ())
    calls = 0
    rounds: list[tuple[float, GroverRun]] = []
    r = 0
    fail_calls = 0
    n_rounds = 0
    while calls < budget and fail_calls < fail_budget and n_rounds < _MAX_ROUNDS:
        n_rounds += 1
        cap = min(ceil(growth**r), iteration_cap)
        k = int(rng.integers(0, cap + 1))
        k = min(k, budget - calls)
        threshold = best_val
        run = grover_search(
            n_items, lambda i: float(g(i)) < threshold, k, rng_seed=rng, backend=backend
        )
        calls += run.oracle_calls
        if run.found_index is not None:
            calls += 1  # classical verification of the returned candidate
            rounds.append((threshold, run))
            best = run.found_index
            best_val = float(g(best))
            fail_calls = 0
        else:
            fail_calls += run.oracle_calls
        r += 1
    return MinFindResult(
        min_index=best,
        min_value=best_val,
        total_oracle_calls=calls,
        rounds=tuple(rounds),
    )


def make_gmf_finder(rng_seed: int, backend: str = "analytic"):
    """Minimum-finder callback for the greedy containment loop.

    Successive invocations use independent substreams of ``rng_seed`` and
    add their oracle calls to ``accounting.grover_oracle_calls``.
    """
    seq = np.random.SeedSequence(rng_seed)
    state = {"calls": 0}

    def finder(scores: Sequence[float], accounting) -> int:
        child = np.random.SeedSequence(
            entropy=seq.entropy, spawn_key=(state["calls"],)
        )
        state["calls"] += 1
        result = durr_hoyer_min(
            list(scores), len(scores), rng_seed=np.random.default_rng(child), backend=backend
        )
        accounting.grover_oracle_calls += result.total_oracle_calls
        return result.min_index

    return finder
