"""Directed graphs with per-edge activation probability and operational importance.

Node ids are dense integers in [0, node_count). An "undirected" instance is
stored as two arcs per listed edge; the arcs share p and i, and removing one
arc of a pair removes both.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class ParseError(ValueError):
    """Raised for malformed instance files; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    p: float
    i: float

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0):
            raise ValueError(f"probability out of range: {self.p}")
        if not (0.0 <= self.i <= 1.0):
            raise ValueError(f"importance out of range: {self.i}")
        if self.src == self.dst:
            raise ValueError(f"self-loop at node {self.src}")
        if self.src < 0 or self.dst < 0:
            raise ValueError("negative node id")


class Graph:
    """Immutable directed graph over dense integer node ids.

    For undirected graphs each logical edge appears as two arcs; ``partner[k]``
    gives the index of the reverse arc (None for purely directed arcs).
    """

    def __init__(self, node_count: int, edges: Sequence[Edge], undirected: bool = False):
        if node_count < 1:
            raise ValueError("node_count must be positive")
        edges = tuple(edges)
        seen: dict[tuple[int, int], int] = {}
        for k, e in enumerate(edges):
            if e.src >= node_count or e.dst >= node_count:
                raise ValueError(f"edge {e.src}->{e.dst} references unknown node")
            if (e.src, e.dst) in seen:
                raise ValueError(f"duplicate edge {e.src}->{e.dst}")
            seen[(e.src, e.dst)] = k
        partner: list[int | None] = [None] * len(edges)
        if undirected:
            for k, e in enumerate(edges):
                partner[k] = seen.get((e.dst, e.src))
        self.node_count = node_count
        self.edges = edges
        self.undirected = undirected
        self.partner = tuple(partner)
        adj: dict[int, list[int]] = {}
        for k, e in enumerate(edges):
            adj.setdefault(e.src, []).append(k)
        self._adjacency = adj

    @property
    def adjacency(self) -> dict[int, list[int]]:
        return self._adjacency

    def out_edges(self, node: int) -> list[int]:
        return self._adjacency.get(node, [])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.edges == other.edges
            and self.undirected == other.undirected
        )

    def __hash__(self):
        return hash((self.node_count, self.edges, self.undirected))

    def __repr__(self):
        return (
            f"Graph(node_count={self.node_count}, edges={len(self.edges)}, "
            f"undirected={self.undirected})"
        )


@dataclass(frozen=True)
class ProblemInstance:
    graph: Graph
    seeds: frozenset[int]
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "seeds", frozenset(self.seeds))
        if not self.seeds:
            raise ValueError("empty seed set")
        for s in self.seeds:
            if not (0 <= s < self.graph.node_count):
                raise ValueError(f"seed {s} is not a node")
        if not (0.0 <= self.lam <= 1.0):
            raise ValueError(f"lambda out of range: {self.lam}")

    def without_edges(self, removal: Iterable[int]) -> "ProblemInstance":
        return ProblemInstance(remove_edges(self.graph, removal), self.seeds, self.lam)


def closed_removal(graph: Graph, removal: Iterable[int]) -> frozenset[int]:
    """Removal set closed under undirected partners, with indices validated."""
    out = set()
    for k in removal:
        if not (0 <= k < len(graph.edges)):
            raise ValueError(f"invalid edge index {k}")
        out.add(k)
        mate = graph.partner[k]
        if mate is not None:
            out.add(mate)
    return frozenset(out)


def remove_edges(graph: Graph, removal: Iterable[int]) -> Graph:
    """New graph without the given arcs (and their undirected partners)."""
    drop = closed_removal(graph, removal)
    kept = [e for k, e in enumerate(graph.edges) if k not in drop]
    return Graph(graph.node_count, kept, graph.undirected)


def parse_instance(text: str) -> ProblemInstance:
    node_count: int | None = None
    undirected = False
    edge_lines: list[tuple[int, str, str, float, float]] = []
    seeds_tokens: list[tuple[int, str]] = []
    lam: float | None = None
    names: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0]
        if key == "nodes":
            if len(tokens) != 2:
                raise ParseError(lineno, "expected 'nodes <N>'")
            try:
                node_count = int(tokens[1])
            except ValueError:
                raise ParseError(lineno, f"bad node count {tokens[1]!r}") from None
            if node_count < 1:
                raise ParseError(lineno, "node count must be positive")
        elif key == "undirected":
            undirected = True
        elif key == "seeds":
            if len(tokens) < 2:
                raise ParseError(lineno, "empty seed set")
            seeds_tokens.extend((lineno, t) for t in tokens[1:])
        elif key == "lambda":
            if len(tokens) != 2:
                raise ParseError(lineno, "expected 'lambda <x>'")
            try:
                lam = float(tokens[1])
            except ValueError:
                raise ParseError(lineno, f"bad lambda {tokens[1]!r}") from None
        else:
            if len(tokens) != 4:
                raise ParseError(lineno, f"malformed line {line!r}")
            try:
                p = float(tokens[2])
                i = float(tokens[3])
            except ValueError:
                raise ParseError(lineno, f"malformed line {line!r}") from None
            edge_lines.append((lineno, tokens[0], tokens[1], p, i))

    if node_count is None:
        raise ParseError(1, "missing 'nodes' header")
    if lam is None:
        raise ParseError(1, "missing 'lambda' line")
    if not seeds_tokens:
        raise ParseError(1, "empty seed set")

    def resolve(lineno: int, token: str) -> int:
        try:
            idx = int(token)
        except ValueError:
            if token not in names:
                used = set(names.values())
                idx = next(k for k in range(node_count) if k not in used)
                names[token] = idx
            return names[token]
        if not (0 <= idx < node_count):
            raise ParseError(lineno, f"unknown node {token}")
        return idx

    edges = []
    seen_arcs: set[tuple[int, int]] = set()
    for lineno, s_tok, d_tok, p, i in edge_lines:
        src = resolve(lineno, s_tok)
        dst = resolve(lineno, d_tok)
        if not (0.0 <= p <= 1.0):
            raise ParseError(lineno, "probability out of range")
        if not (0.0 <= i <= 1.0):
            raise ParseError(lineno, "importance out of range")
        if src == dst:
            raise ParseError(lineno, "self-loop")
        arcs = [(src, dst)] + ([(dst, src)] if undirected else [])
        for a, b in arcs:
            if (a, b) in seen_arcs:
                raise ParseError(lineno, f"duplicate edge {s_tok} {d_tok}")
            seen_arcs.add((a, b))
            edges.append(Edge(a, b, p, i))

    try:
        graph = Graph(node_count, edges, undirected=undirected)
    except ValueError as exc:
        raise ParseError(1, str(exc)) from None

    seeds = frozenset(resolve(ln, t) for ln, t in seeds_tokens)
    try:
        return ProblemInstance(graph, seeds, lam)
    except ValueError as exc:
        raise ParseError(1, str(exc)) from None


def serialize_instance(inst: ProblemInstance) -> str:
    g = inst.graph
    lines = [f"nodes {g.node_count}"]
    if g.undirected:
        lines.append("undirected")
    for k, e in enumerate(g.edges):
        mate = g.partner[k]
        if mate is not None and mate < k:
            continue  # emit each undirected pair once
        lines.append(f"{e.src} {e.dst} {e.p!r} {e.i!r}")
    lines.append("seeds " + " ".join(str(s) for s in sorted(inst.seeds)))
    lines.append(f"lambda {inst.lam!r}")
    return "\n".join(lines) + "\n"


def generate_random_instance(
    n_nodes: int,
    edge_prob: float,
    p_range: tuple[float, float] = (0.0, 1.0),
    i_range: tuple[float, float] = (0.0, 1.0),
    n_seeds: int = 1,
    lam: float = 1.0,
    rng_seed: int = 0,
) -> ProblemInstance:
    """Directed Erdos-Renyi instance with uniform p and i, deterministic per seed."""
    if n_nodes < 1:
        raise ValueError("n_nodes must be >= 1")
    if not (1 <= n_seeds <= n_nodes):
        raise ValueError("n_seeds > n_nodes" if n_seeds > n_nodes else "n_seeds must be >= 1")
    if not (0.0 <= edge_prob <= 1.0):
        raise ValueError("edge_prob out of range")
    rng = np.random.default_rng(rng_seed)
    edges = []
    for src in range(n_nodes):
        for dst in range(n_nodes):
            if src == dst:
                continue
            if rng.random() < edge_prob:
                p = float(rng.uniform(*p_range))
                i = float(rng.uniform(*i_range))
                edges.append(Edge(src, dst, p, i))
    seeds = frozenset(int(s) for s in rng.choice(n_nodes, size=n_seeds, replace=False))
    return ProblemInstance(Graph(n_nodes, edges), seeds, lam)
