"""Exhaustive optimal t-spanners on tiny instances, by branch and bound.

The search branches include/exclude over edges in canonical order,
include-first, seeded with the greedy spanner as incumbent.  Three sound
prunings keep it tractable:

* value bound - included size/weight plus the cheapest way to finish
  connecting the included components can no longer beat the incumbent;
* feasibility - some already-excluded edge pair cannot meet its stretch
  budget even if every remaining edge is included;
* forced edges - an undecided edge lying on *every* surviving within-budget
  detour of an excluded pair must belong to any completion, so it is
  committed immediately.

A fast pre-phase searches spanning trees first: a tree fixes endpoint
distances the moment two vertices join a component, which prunes brutally.
A tree solution matches the global lower bound for the size objective and
seeds a strong incumbent for the weight objective.

Results are re-verified with the independent stretch checker before being
returned; ``exhausted=True`` certifies global optimality.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .analysis import verify_spanner
from .graph import DisconnectedGraphError, Edge, WeightedGraph, is_connected, mst
from .greedy import GreedyConfig, greedy_spanner

_TOL = 1e-9
_UND, _IN, _OUT = 0, 1, 2

DEFAULT_NODE_BUDGET = 10_000_000
_TREE_PHASE_CAP = 500_000


@dataclass(frozen=True)
class OracleResult:
    edges: frozenset[Edge]
    objective: str
    value: float
    nodes_explored: int
    exhausted: bool

    def to_json_record(self) -> dict:
        return {
            "objective": self.objective,
            "value": self.value,
            "edges": sorted((e.u, e.v, e.weight) for e in self.edges),
            "exhausted": self.exhausted,
            "nodes_explored": self.nodes_explored,
        }


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise _BudgetExceeded


class _BudgetExceeded(Exception):
    pass


class _Done(Exception):
    """Incumbent met the global lower bound; nothing better can exist."""


def min_size_spanner(
    g: WeightedGraph, t: float, budget: int = DEFAULT_NODE_BUDGET
) -> OracleResult:
    """Minimum-edge-count t-spanner, certified by exhausted search."""
    return _spanner_oracle(g, t, "size", budget)


def min_weight_spanner(
    g: WeightedGraph, t: float, budget: int = DEFAULT_NODE_BUDGET
) -> OracleResult:
    """Minimum-total-weight t-spanner, certified by exhausted search."""
    return _spanner_oracle(g, t, "weight", budget)


def _spanner_oracle(g: WeightedGraph, t: float, objective: str, budget: int) -> OracleResult:
    if not is_connected(g):
        raise DisconnectedGraphError("spanner oracle requires a connected graph")
    if t < 1.0:
        raise ValueError(f"stretch must be >= 1, got {t}")
    n, m = g.n, g.m
    edges = g.edges()

    if m == 0:
        value = 0 if objective == "size" else 0.0
        return OracleResult(frozenset(), objective, value, 0, True)

    # Incumbent: the greedy spanner is always feasible.
    seed = greedy_spanner(g, GreedyConfig(t)).spanner
    best_ids = frozenset(
        i for i, e in enumerate(edges) if (e.u, e.v, e.weight) in seed.edge_set()
    )
    best_val = _value_of(best_ids, edges, objective)

    mst_weight = mst(g).total_weight
    global_lb = float(n - 1) if objective == "size" else mst_weight

    nodes = 0
    exhausted = True
    searcher: _BranchAndBound | None = None
    try:
        if _matches_lb(best_val, global_lb, objective):
            raise _Done
        tree_budget = _Budget(min(budget, _TREE_PHASE_CAP))
        try:
            tree_ids, tree_val = _tree_spanner_search(g, t, objective, tree_budget)
        except _BudgetExceeded:
            tree_ids, tree_val = None, math.inf  # pre-phase is best-effort only
        nodes += tree_budget.used
        if tree_ids is not None and tree_val < best_val - _improve_eps(best_val, objective):
            best_ids, best_val = frozenset(tree_ids), tree_val
        if _matches_lb(best_val, global_lb, objective):
            raise _Done
        searcher = _BranchAndBound(g, t, objective, _Budget(budget - nodes), global_lb)
        searcher.best_val = best_val
        searcher.best_ids = best_ids
        searcher.run()
    except _Done:
        pass
    except _BudgetExceeded:
        exhausted = False
    if searcher is not None:
        best_val, best_ids = searcher.best_val, searcher.best_ids
        nodes += searcher.budget.used

    chosen = frozenset(edges[i] for i in best_ids)
    result_graph = g.subgraph_with_edges(chosen)
    check = verify_spanner(result_graph, g, t)
    if not check.ok:
        raise AssertionError(
            f"oracle produced an invalid {objective} spanner (worst ratio {check.worst_ratio})"
        )
    value = len(chosen) if objective == "size" else _value_of(best_ids, edges, "weight")
    return OracleResult(chosen, objective, value, nodes, exhausted)


def _value_of(ids, edges, objective):
    if objective == "size":
        return float(len(ids))
    # Sum in canonical order so equal edge sets produce identical floats.
    return sum(edges[i].weight for i in sorted(ids))


def _matches_lb(val: float, lb: float, objective: str) -> bool:
    if objective == "size":
        return val <= lb + 0.5
    return val <= lb * (1.0 + 1e-12)


def _improve_eps(best_val: float, objective: str) -> float:
    if objective == "size":
        return 0.5
    return 1e-12 * max(1.0, best_val)


# -- spanning-tree pre-phase ------------------------------------------------------


def _tree_spanner_search(g, t, objective, budget_box):
    """Search spanning trees that are t-spanners of g.

    Returns (edge_ids, value) for the best tree found (first tree for the
    size objective, min-weight tree for the weight objective), or
    (None, inf) when no spanning tree meets the stretch budget.
    """
    n = g.n
    edges = g.edges()
    m = len(edges)
    caps = [t * e.weight * (1.0 + _TOL) for e in edges]

    # Rollback-friendly union-find: no path compression, roots only rebound.
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    forest_adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    best_ids: list[int] | None = None
    best_val = math.inf
    acc: list[int] = []

    def dists_from(src):
        dist = {src: 0.0}
        stack = [src]
        while stack:
            x = stack.pop()
            for y, w in forest_adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + w
                    stack.append(y)
        return dist

    def rec(idx, n_comp, acc_weight):
        nonlocal best_ids, best_val
        if objective == "size" and best_ids is not None:
            return  # any spanning tree already meets the size lower bound
        budget_box.tick()
        if n_comp == 1:
            val = float(len(acc)) if objective == "size" else acc_weight
            if val < best_val:
                best_val = val
                best_ids = list(acc)
            return
        if idx == m or m - idx < n_comp - 1:
            return
        if objective == "weight":
            # Cheapest completion: lightest undecided edges still merging
            # components (edges arrive in weight order).
            lb = acc_weight
            touched = []
            merges = 0
            for j in range(idx, m):
                ru, rv = find(edges[j].u), find(edges[j].v)
                if ru != rv:
                    parent[rv] = ru
                    touched.append(rv)
                    lb += edges[j].weight
                    merges += 1
                    if merges == n_comp - 1:
                        break
            for node in touched:
                parent[node] = node
            if merges < n_comp - 1 or lb >= best_val - _improve_eps(best_val, objective):
                return
        u, v, w = edges[idx].u, edges[idx].v, edges[idx].weight
        ru, rv = find(u), find(v)
        if ru != rv:
            # Include: distances between the merged halves become final.
            du = dists_from(u)
            dv = dists_from(v)
            ok = True
            for eid in range(m):
                x, y = edges[eid].u, edges[eid].v
                rx, ry = find(x), find(y)
                if rx == ru and ry == rv:
                    dxy = du.get(x, math.inf) + w + dv.get(y, math.inf)
                elif rx == rv and ry == ru:
                    dxy = dv.get(x, math.inf) + w + du.get(y, math.inf)
                else:
                    continue
                if dxy > caps[eid]:
                    ok = False
                    break
            if ok:
                parent[rv] = ru
                forest_adj[u].append((v, w))
                forest_adj[v].append((u, w))
                acc.append(idx)
                rec(idx + 1, n_comp - 1, acc_weight + w)
                acc.pop()
                forest_adj[u].pop()
                forest_adj[v].pop()
                parent[rv] = rv
        rec(idx + 1, n_comp, acc_weight)

    rec(0, n, 0.0)
    return best_ids, best_val


# -- main branch and bound --------------------------------------------------------


class _BranchAndBound:
    def __init__(self, g: WeightedGraph, t: float, objective: str, budget: _Budget, global_lb):
        self.n = g.n
        self.edges = g.edges()
        self.m = len(self.edges)
        self.caps = [t * e.weight * (1.0 + _TOL) for e in self.edges]
        self.objective = objective
        self.budget = budget
        self.global_lb = global_lb
        self.adj: list[list[tuple[int, float, int]]] = [[] for _ in range(g.n)]
        for i, e in enumerate(self.edges):
            self.adj[e.u].append((e.v, e.weight, i))
            self.adj[e.v].append((e.u, e.weight, i))
        self.best_val = math.inf
        self.best_ids: frozenset[int] = frozenset()

    def run(self) -> None:
        self._dfs(bytearray(self.m), {})

    # cache maps an excluded edge id to (optimistic distance, path edge ids).

    def _dfs(self, statuses: bytearray, cache: dict) -> None:
        self.budget.tick()
        lb = self._lower_bound(statuses)
        if lb >= self.best_val - _improve_eps(self.best_val, self.objective):
            return
        idx = next((i for i in range(self.m) if statuses[i] == _UND), None)
        if idx is None:
            ids = frozenset(i for i in range(self.m) if statuses[i] == _IN)
            val = _value_of(ids, self.edges, self.objective)
            if val < self.best_val - _improve_eps(self.best_val, self.objective):
                self.best_val = val
                self.best_ids = ids
                if _matches_lb(val, self.global_lb, self.objective):
                    raise _Done
            return
        # Include-first: the incumbent-guided branch keeps feasibility easy.
        inc = bytearray(statuses)
        inc[idx] = _IN
        self._dfs(inc, cache)
        exc = bytearray(statuses)
        exc[idx] = _OUT
        exc_cache = dict(cache)
        if self._recheck_and_force(idx, exc, exc_cache):
            self._dfs(exc, exc_cache)

    def _lower_bound(self, statuses: bytearray) -> float:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        count_in = 0
        w_in = 0.0
        comps = self.n
        for i in range(self.m):
            if statuses[i] == _IN:
                count_in += 1
                w_in += self.edges[i].weight
                ru, rv = find(self.edges[i].u), find(self.edges[i].v)
                if ru != rv:
                    parent[ru] = rv
                    comps -= 1
        in_comps = comps
        completion = 0.0
        for i in range(self.m):
            if comps == 1:
                break
            if statuses[i] == _UND:
                ru, rv = find(self.edges[i].u), find(self.edges[i].v)
                if ru != rv:
                    parent[ru] = rv
                    completion += self.edges[i].weight
                    comps -= 1
        if comps > 1:
            return math.inf  # cannot even connect: infeasible branch
        if self.objective == "size":
            return count_in + (in_comps - 1)
        return w_in + completion

    def _optimistic_path(self, source, target, statuses, avoid1=-1, avoid2=-1):
        """Shortest path over IN and UNDECIDED edges, skipping up to two."""
        dist = {source: 0.0}
        pred_edge: dict[int, int] = {}
        pred_vert: dict[int, int] = {}
        heap = [(0.0, source)]
        settled = set()
        while heap:
            d, x = heapq.heappop(heap)
            if x in settled:
                continue
            if x == target:
                path = []
                while x != source:
                    path.append(pred_edge[x])
                    x = pred_vert[x]
                return d, frozenset(path)
            settled.add(x)
            for y, w, eid in self.adj[x]:
                if statuses[eid] == _OUT or eid == avoid1 or eid == avoid2 or y in settled:
                    continue
                nd = d + w
                if y not in dist or nd < dist[y]:
                    dist[y] = nd
                    pred_edge[y] = eid
                    pred_vert[y] = x
                    heapq.heappush(heap, (nd, y))
        return math.inf, frozenset()

    def _recheck_and_force(self, new_out: int, statuses: bytearray, cache: dict) -> bool:
        """Refresh optimistic detours touching the newly excluded edge.

        Returns False when some excluded pair can no longer meet its budget;
        commits undecided edges that every surviving detour must use.
        """
        stale = [new_out] + [eid for eid, (_, path) in cache.items() if new_out in path]
        for eid in stale:
            u, v, cap = self.edges[eid].u, self.edges[eid].v, self.caps[eid]
            d, path = self._optimistic_path(u, v, statuses, avoid1=eid)
            if d > cap:
                return False
            cache[eid] = (d, path)
            for f in path:
                if statuses[f] == _UND:
                    d2, _ = self._optimistic_path(u, v, statuses, avoid1=eid, avoid2=f)
                    if d2 > cap:
                        statuses[f] = _IN
        return True
