"""Deterministic instance generation: fixtures, random graphs, point sets.

Every generator is a pure function of (parameters, seed): the same 64-bit
seed yields a bit-identical instance.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

import numpy as np

from .graph import Edge, WeightedGraph
from .metric import MetricSpace


@dataclass(frozen=True)
class PetersenStarLabels:
    root: int
    petersen_edges: frozenset[tuple[int, int]]
    star_edges: frozenset[tuple[int, int]]


def petersen_edge_pairs() -> list[tuple[int, int]]:
    """Petersen graph: outer cycle 0-4, inner pentagram 5-9, spokes i <-> i+5."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return [(min(u, v), max(u, v)) for u, v in outer + spokes + inner]


def petersen_star_fixture(epsilon: float) -> tuple[WeightedGraph, PetersenStarLabels]:
    """High-girth core plus a cheap star: 15 unit edges and 6 (1+eps) edges.

    The star is rooted at vertex 0; its three unit edges coincide with the
    root's incident core edges, and the six remaining leaves attach at
    weight 1+eps.  Requires eps in (0, 1/2) so the two-hop detour through
    the root stays within stretch 3.
    """
    if not (0.0 < epsilon < 0.5):
        raise ValueError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    root = 0
    core = petersen_edge_pairs()
    neighbors = {v for (u, v) in core if u == root} | {u for (u, v) in core if v == root}
    star = [(root, v) for v in range(10) if v != root and v not in neighbors]
    edges = [(u, v, 1.0) for u, v in core] + [(u, v, 1.0 + epsilon) for u, v in star]
    g = WeightedGraph.from_edges(10, edges)
    return g, PetersenStarLabels(
        root=root,
        petersen_edges=frozenset(core),
        star_edges=frozenset(star),
    )


def random_weighted_graph(
    n: int,
    p: float,
    weight_range: tuple[float, float] = (0.0, 1.0),
    seed: int = 0,
) -> WeightedGraph:
    """Erdos-Renyi edges at rate p with continuous uniform weights.

    A disconnected draw is repaired by adding the missing edges of a random
    spanning tree at the top of the weight range, so seed sweeps stay total.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not (0.0 < p <= 1.0):
        raise ValueError(f"edge rate must lie in (0, 1], got {p}")
    lo, hi = weight_range
    if not (0.0 <= lo < hi):
        raise ValueError(f"bad weight range {weight_range}")
    rng = random.Random(seed)
    edges: dict[tuple[int, int], float] = {}
    for u in range(n):
        for v in range(u + 1, n):
            if p >= 1.0 or rng.random() < p:
                w = rng.uniform(lo, hi)
                while w <= lo:  # open interval; uniform() may return lo exactly
                    w = rng.uniform(lo, hi)
                edges[(u, v)] = w
    uf_parent = list(range(n))

    def find(x: int) -> int:
        while uf_parent[x] != x:
            uf_parent[x] = uf_parent[uf_parent[x]]
            x = uf_parent[x]
        return x

    components = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            uf_parent[ru] = rv
            components -= 1
    if components > 1:
        for u, v in _random_spanning_tree(n, rng):
            if (u, v) not in edges:
                edges[(u, v)] = hi
    return WeightedGraph.from_edges(n, [(u, v, w) for (u, v), w in edges.items()])


def _random_spanning_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform random labeled tree via a Prufer sequence."""
    if n == 2:
        return [(0, 1)]
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in prufer:
        degree[x] += 1
    tree = []
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in prufer:
        leaf = heapq.heappop(leaves)
        tree.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    tree.append((min(u, v), max(u, v)))
    return tree


def random_euclidean(n: int, d: int, seed: int = 0) -> MetricSpace:
    """Uniform points in the unit d-cube."""
    if not (1 <= d <= 8):
        raise ValueError(f"dimension must lie in 1..8, got {d}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    rng = random.Random(seed)
    coords = np.array([[rng.random() for _ in range(d)] for _ in range(n)], dtype=np.float64)
    return MetricSpace.from_points(coords.reshape(n, d))


def grid_metric(side: int) -> MetricSpace:
    """side^2 points on the integer 2D grid under Euclidean distance."""
    if side < 1:
        raise ValueError(f"need side >= 1, got {side}")
    coords = np.array([(i // side, i % side) for i in range(side * side)], dtype=np.float64)
    return MetricSpace.from_points(coords)
