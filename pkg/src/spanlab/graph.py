"""Weighted undirected graphs: shortest paths, MST, connectivity, girth.

Vertices are dense 0-based integers.  Edges are canonically oriented
(u < v), parallel edges are collapsed keeping the lightest one, and the
edge list is always held in canonical order: sorted by (weight, u, v).
Every ordering-sensitive algorithm in the package (greedy scan, Kruskal)
walks edges in this one order, which is what makes MST containment a
literal set inclusion rather than an up-to-ties statement.

A constructed graph is immutable; read-only queries are safe to issue
from concurrent contexts.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

#: Sentinel returned by bounded searches when the target is farther than the
#: cutoff (or unreachable).  Compares naturally against real distances.
EXCEEDS_CUTOFF = math.inf

#: Sentinel girth of an acyclic graph.
INFINITE = math.inf


class GraphFormatError(ValueError):
    """Raised for malformed graph / point-set files; carries a line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(ValueError):
    """Raised when an operation requires a connected graph."""


class NotSubgraphError(ValueError):
    """Raised when a claimed spanner is not an edge subset of its host."""


class Edge(NamedTuple):
    u: int
    v: int
    weight: float


@dataclass(frozen=True)
class Path:
    """A walk through consecutive graph edges; weight is the edge-weight sum."""

    vertices: tuple[int, ...]
    weight: float


@dataclass(frozen=True)
class MstResult:
    tree_edges: frozenset[Edge]
    total_weight: float


class WeightedGraph:
    """Undirected positively weighted graph over vertices 0..n-1."""

    __slots__ = ("n", "_eu", "_ev", "_ew", "_adj", "_csr", "_edge_set")

    def __init__(self, n: int, eu: np.ndarray, ev: np.ndarray, ew: np.ndarray):
        # Trusted constructor: arrays must already be canonical.
        self.n = n
        self._eu = eu
        self._ev = ev
        self._ew = ew
        self._adj: list[list[tuple[int, float, int]]] | None = None
        self._csr: sp.csr_matrix | None = None
        self._edge_set: frozenset[tuple[int, int, float]] | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, float]]) -> "WeightedGraph":
        """Build a graph, canonicalizing orientation and ordering.

        Self-loops are rejected; parallel edges are collapsed keeping the
        lightest copy.
        """
        if n < 1:
            raise ValueError(f"vertex count must be >= 1, got {n}")
        us, vs, ws = [], [], []
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            w = float(w)
            if not (w > 0.0) or math.isinf(w):
                raise ValueError(f"edge ({u},{v}) has non-positive or non-finite weight {w}")
            if u > v:
                u, v = v, u
            us.append(u)
            vs.append(v)
            ws.append(w)
        eu = np.asarray(us, dtype=np.int64)
        ev = np.asarray(vs, dtype=np.int64)
        ew = np.asarray(ws, dtype=np.float64)
        if len(eu):
            # Collapse parallels: sort by (u, v, w), keep first per (u, v).
            order = np.lexsort((ew, ev, eu))
            eu, ev, ew = eu[order], ev[order], ew[order]
            keep = np.ones(len(eu), dtype=bool)
            keep[1:] = (eu[1:] != eu[:-1]) | (ev[1:] != ev[:-1])
            eu, ev, ew = eu[keep], ev[keep], ew[keep]
            # Canonical order: (weight, u, v).
            order = np.lexsort((ev, eu, ew))
            eu, ev, ew = eu[order], ev[order], ew[order]
        return cls(n, eu, ev, ew)

    # -- basic accessors ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._eu)

    @property
    def total_weight(self) -> float:
        return float(self._ew.sum())

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(u, v, weight) arrays in canonical order. Do not mutate."""
        return self._eu, self._ev, self._ew

    def edges(self) -> list[Edge]:
        return [Edge(int(u), int(v), float(w)) for u, v, w in zip(self._eu, self._ev, self._ew)]

    def iter_edges(self) -> Iterator[Edge]:
        for u, v, w in zip(self._eu, self._ev, self._ew):
            yield Edge(int(u), int(v), float(w))

    def edge_set(self) -> frozenset[tuple[int, int, float]]:
        if self._edge_set is None:
            self._edge_set = frozenset(
                (int(u), int(v), float(w)) for u, v, w in zip(self._eu, self._ev, self._ew)
            )
        return self._edge_set

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return any((a == u and b == v) for a, b, _ in self.edge_set())

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self._eu, 1)
        np.add.at(deg, self._ev, 1)
        return deg

    def max_degree(self) -> int:
        if self.m == 0:
            return 0
        return int(self.degrees().max())

    def subgraph_with_edges(self, edges: Iterable[Edge]) -> "WeightedGraph":
        """Same vertex set, restricted edge set."""
        return WeightedGraph.from_edges(self.n, [(e.u, e.v, e.weight) for e in edges])

    # -- cached derived structures ------------------------------------------

    def adjacency(self) -> list[list[tuple[int, float, int]]]:
        """Per-vertex incident list of (neighbor, weight, edge_index)."""
        if self._adj is None:
            adj: list[list[tuple[int, float, int]]] = [[] for _ in range(self.n)]
            for i, (u, v, w) in enumerate(zip(self._eu, self._ev, self._ew)):
                adj[int(u)].append((int(v), float(w), i))
                adj[int(v)].append((int(u), float(w), i))
            self._adj = adj
        return self._adj

    def to_csr(self) -> sp.csr_matrix:
        if self._csr is None:
            data = np.concatenate([self._ew, self._ew])
            rows = np.concatenate([self._eu, self._ev])
            cols = np.concatenate([self._ev, self._eu])
            self._csr = sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return self._csr

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


# -- operations --------------------------------------------------------------


def canonical_edge_order(g: WeightedGraph) -> list[Edge]:
    """Edges sorted by (weight, u, v); deterministic for a fixed graph."""
    return g.edges()


def bounded_dijkstra(
    g: WeightedGraph, source: int, target: int, cutoff: float
) -> float:
    """Exact distance from source to target if it is <= cutoff, else EXCEEDS_CUTOFF.

    Vertices whose tentative distance exceeds the cutoff are never settled,
    so the search stays inside the cutoff ball.  An unreachable target also
    yields EXCEEDS_CUTOFF.
    """
    if source == target:
        raise ValueError("source and target must differ")
    if not cutoff > 0:
        raise ValueError(f"cutoff must be positive, got {cutoff}")
    adj = g.adjacency()
    dist = {source: 0.0}
    heap = [(0.0, source)]
    settled = set()
    while heap:
        d, x = heapq.heappop(heap)
        if x in settled:
            continue
        if x == target:
            return d
        settled.add(x)
        for y, w, _ in adj[x]:
            nd = d + w
            if nd <= cutoff and (y not in settled):
                old = dist.get(y)
                if old is None or nd < old:
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
    return EXCEEDS_CUTOFF


def shortest_path_avoiding_edge(
    g: WeightedGraph, source: int, target: int, avoid_edge_index: int | None = None
) -> Path | None:
    """Shortest source-target path, optionally skipping one edge by index.

    Returns None when no path exists.
    """
    if source == target:
        return Path((source,), 0.0)
    adj = g.adjacency()
    dist = {source: 0.0}
    pred: dict[int, int] = {}
    heap = [(0.0, source)]
    settled = set()
    while heap:
        d, x = heapq.heappop(heap)
        if x in settled:
            continue
        if x == target:
            verts = [target]
            while verts[-1] != source:
                verts.append(pred[verts[-1]])
            verts.reverse()
            return Path(tuple(verts), d)
        settled.add(x)
        for y, w, eid in adj[x]:
            if eid == avoid_edge_index or y in settled:
                continue
            nd = d + w
            old = dist.get(y)
            if old is None or nd < old:
                dist[y] = nd
                pred[y] = x
                heapq.heappush(heap, (nd, y))
    return None


def all_pairs_distances(g: WeightedGraph) -> np.ndarray:
    """n x n symmetric matrix of exact shortest-path distances.

    Raises DisconnectedGraphError when any pair is unreachable.
    """
    d = _raw_all_pairs(g)
    if np.isinf(d).any():
        raise DisconnectedGraphError("graph is disconnected")
    return d


def _raw_all_pairs(g: WeightedGraph) -> np.ndarray:
    """All-pairs distances with inf marking unreachable pairs."""
    if g.n == 1:
        return np.zeros((1, 1))
    if g.m == 0:
        d = np.full((g.n, g.n), np.inf)
        np.fill_diagonal(d, 0.0)
        return d
    d = csgraph.shortest_path(g.to_csr(), method="D", directed=False)
    # Dijkstra runs per source; enforce exact symmetry and a zero diagonal.
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    return d


class _UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        return True


def mst(g: WeightedGraph) -> MstResult:
    """Kruskal over the canonical edge order; deterministic tree."""
    uf = _UnionFind(g.n)
    tree: list[Edge] = []
    total = 0.0
    eu, ev, ew = g.edge_arrays()
    for u, v, w in zip(eu.tolist(), ev.tolist(), ew.tolist()):
        if uf.union(u, v):
            tree.append(Edge(u, v, w))
            total += w
            if len(tree) == g.n - 1:
                break
    if len(tree) != g.n - 1:
        raise DisconnectedGraphError("graph is disconnected")
    return MstResult(frozenset(tree), total)


def is_connected(g: WeightedGraph) -> bool:
    if g.n == 1:
        return True
    uf = _UnionFind(g.n)
    count = g.n
    eu, ev, _ = g.edge_arrays()
    for u, v in zip(eu.tolist(), ev.tolist()):
        if uf.union(u, v):
            count -= 1
            if count == 1:
                return True
    return count == 1


def girth_unweighted(g: WeightedGraph) -> float:
    """Length of the shortest cycle, counting hops; INFINITE for forests.

    BFS from every root; a non-tree edge (x, y) seen with both endpoints
    reached witnesses a closed walk of dist(x) + dist(y) + 1 hops, which is
    never shorter than the girth, and equals it for some root on a shortest
    cycle.
    """
    n = g.n
    adj = g.adjacency()
    best = INFINITE
    dist = [-1] * n
    via = [-1] * n
    for root in range(n):
        for i in range(n):
            dist[i] = -1
            via[i] = -1
        dist[root] = 0
        queue = [root]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            if 2 * dist[x] + 1 >= best:
                continue
            for y, _, eid in adj[x]:
                if dist[y] == -1:
                    dist[y] = dist[x] + 1
                    via[y] = eid
                    queue.append(y)
                elif eid != via[x] and eid != via[y]:
                    cand = dist[x] + dist[y] + 1
                    if cand < best:
                        best = cand
    return best


# -- file format --------------------------------------------------------------


def write_graph(g: WeightedGraph, path: str) -> None:
    """Plain-text graph file: `n m` then `u v w` lines.

    Weights use shortest round-trip decimal formatting, so read(write(g))
    reproduces the graph bit-exactly.
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v, w in zip(*g.edge_arrays()):
            fh.write(f"{int(u)} {int(v)} {float(w)!r}\n")


def read_graph(path: str) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatError("expected header `n m`", lineno)
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise GraphFormatError("non-integer header", lineno) from None
            continue
        if len(parts) != 3:
            raise GraphFormatError("expected `u v w`", lineno)
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphFormatError("malformed edge line", lineno) from None
        edges.append((u, v, w))
    if header is None:
        raise GraphFormatError("empty graph file", len(lines))
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, file has {len(edges)}", len(lines))
    try:
        return WeightedGraph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc
