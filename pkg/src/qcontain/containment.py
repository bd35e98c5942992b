"""Objective evaluation and the greedy edge-removal loop.

The loop is parameterized over an influence estimator and a minimum finder:

* estimator(instance, removal, accounting) -> InfluenceEstimate for the
  graph with those edges removed;
* finder(scores, accounting) -> index of the minimizing candidate.

Removal indices always refer to the original instance graph; the current
subgraph is recomputed from the cumulative removal set each iteration.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .cascade import (
    EXACT_ORACLE_MAX_EDGES,
    InfluenceEstimate,
    exact_influence,
    mc_influence,
)
from .graph import Graph, ProblemInstance, closed_removal

EXACT_TOLERANCE = 1e-9

Estimator = Callable[[ProblemInstance, tuple[int, ...], "RunAccounting"], InfluenceEstimate]
Finder = Callable[[Sequence[float], "RunAccounting"], int]


@dataclass
class RunAccounting:
    mc_trials: int = 0
    a_applications: int = 0
    q_applications: int = 0
    grover_oracle_calls: int = 0
    linear_steps: int = 0
    diffusion_simulations: int = 0


@dataclass(frozen=True)
class ObjectiveValue:
    total: float
    influence_term: float
    impact_term: float
    sigma_used: float
    oi_used: float


@dataclass(frozen=True)
class ContainmentPlan:
    removed: tuple[int, ...]
    trace: tuple[tuple[int, int, ObjectiveValue], ...]
    accounting: RunAccounting


def operational_impact(edges: Iterable[int], graph: Graph) -> float:
    """Sum of importances, counting each undirected pair once."""
    chosen = closed_removal(graph, edges)
    total = 0.0
    for k in sorted(chosen):
        mate = graph.partner[k]
        if mate is not None and mate < k and mate in chosen:
            continue
        total += graph.edges[k].i
    return total


def objective(
    instance: ProblemInstance, removal: Iterable[int], sigma: float
) -> ObjectiveValue:
    oi = operational_impact(removal, instance.graph)
    influence_term = instance.lam * sigma
    impact_term = (1.0 - instance.lam) * oi
    return ObjectiveValue(
        total=influence_term + impact_term,
        influence_term=influence_term,
        impact_term=impact_term,
        sigma_used=sigma,
        oi_used=oi,
    )


def _reachable_nodes(graph: Graph, seeds: frozenset[int]) -> set[int]:
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        v = stack.pop()
        for k in graph.out_edges(v):
            d = graph.edges[k].dst
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return seen


def candidate_edges(
    instance: ProblemInstance,
    removed: tuple[int, ...] = (),
    strategy: str = "all",
    top_p_cap: int | None = None,
) -> tuple[int, ...]:
    """Edge indices (into the original graph) eligible for removal.

    For undirected graphs one arc per logical pair is returned; removing it
    drops both arcs.
    """
    g = instance.graph
    gone = closed_removal(g, removed)
    base = [
        k
        for k in range(len(g.edges))
        if k not in gone and (g.partner[k] is None or g.partner[k] > k or g.partner[k] in gone)
    ]
    if strategy == "all":
        return tuple(base)
    if strategy == "frontier":
        from .graph import remove_edges

        current = remove_edges(g, removed)
        reachable = _reachable_nodes(current, instance.seeds)
        return tuple(k for k in base if g.edges[k].src in reachable)
    if strategy == "top_p":
        cap = top_p_cap if top_p_cap is not None else 8
        ranked = sorted(base, key=lambda k: (-g.edges[k].p, k))
        return tuple(sorted(ranked[:cap]))
    raise ValueError(f"unknown candidate strategy {strategy!r}")


def linear_finder(scores: Sequence[float], accounting: RunAccounting) -> int:
    """Exhaustive scan; ties break to the lowest index."""
    accounting.linear_steps += len(scores)
    best = 0
    for k in range(1, len(scores)):
        if scores[k] < scores[best]:
            best = k
    return best


def greedy_contain(
    instance: ProblemInstance,
    estimator: Estimator,
    finder: Finder = linear_finder,
    strategy: str = "all",
    k_max: int = 0,
    top_p_cap: int | None = None,
    tolerance: float = EXACT_TOLERANCE,
) -> ContainmentPlan:
    """Greedy removal of up to k_max edges, stopping when no candidate
    strictly improves the combined objective."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    acc = RunAccounting()
    removed: list[int] = []
    trace: list[tuple[int, int, ObjectiveValue]] = []
    if k_max == 0:
        return ContainmentPlan((), (), acc)

    base_est = estimator(instance, (), acc)
    current = objective(instance, (), base_est.sigma)

    for k in range(1, k_max + 1):
        cands = candidate_edges(instance, tuple(removed), strategy, top_p_cap)
        if not cands:
            break
        scored: list[ObjectiveValue] = []
        errors: list[float | None] = []
        for e in cands:
            trial_removal = tuple(removed) + (e,)
            try:
                est = estimator(instance, trial_removal, acc)
            except Exception as exc:
                raise RuntimeError(
                    f"estimator failed on candidate edge {e} at iteration {k}"
                ) from exc
            scored.append(objective(instance, trial_removal, est.sigma))
            errors.append(est.std_error)
        idx = finder([v.total for v in scored], acc)
        chosen = scored[idx]
        tau = tolerance
        if errors[idx]:
            tau = max(tau, 2.0 * errors[idx])
        if chosen.total < current.total - tau:
            removed.append(cands[idx])
            trace.append((k, cands[idx], chosen))
            current = chosen
        else:
            break
    return ContainmentPlan(tuple(removed), tuple(trace), acc)


def make_exact_estimator(max_edges: int = EXACT_ORACLE_MAX_EDGES) -> Estimator:
    def estimator(instance, removal, accounting):
        sub = instance.without_edges(removal)
        result = exact_influence(sub, max_edges=max_edges)
        n = sub.graph.node_count
        return InfluenceEstimate(
            sigma=result.sigma,
            sigma_normalized=result.sigma / n,
            std_error=None,
            trials_or_calls=1 << len(sub.graph.edges),
            method="exact",
        )

    return estimator


def _spawned_seed(base_seed: int, call_index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=base_seed, spawn_key=(call_index,))


def make_mc_estimator(trials: int, rng_seed: int) -> Estimator:
    state = {"calls": 0}

    def estimator(instance, removal, accounting):
        seq = _spawned_seed(rng_seed, state["calls"])
        state["calls"] += 1
        sub = instance.without_edges(removal)
        est = mc_influence(sub, trials, seq)
        accounting.mc_trials += trials
        accounting.diffusion_simulations += trials
        return est

    return estimator


def make_qae_estimator(epsilon: float, rng_seed: int, mode: str = "statevector") -> Estimator:
    from .qae import qae_influence

    state = {"calls": 0}

    def estimator(instance, removal, accounting):
        seq = _spawned_seed(rng_seed, state["calls"])
        state["calls"] += 1
        est = qae_influence(
            instance, removal, epsilon=epsilon, rng_seed=seq, mode=mode
        )
        accounting.q_applications += est.trials_or_calls
        accounting.a_applications += 2 * est.trials_or_calls + 3
        return est

    return estimator
