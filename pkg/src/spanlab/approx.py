"""Approximate-greedy spanners for metric inputs.

The pipeline trades one exact greedy pass at stretch 1+eps for three
cheaper stages whose stretch factors multiply back to 1+eps:

1. a base spanner G' at stretch s1 = sqrt(t/t'), either the complete
   metric graph or a hierarchy of geometric nets;
2. unconditional adoption of the light edges of G' (weight at most D/n,
   where D is the heaviest G' edge);
3. a greedy simulation at stretch s2 = sqrt(t*t') over the remaining G'
   edges, seeded with the light set.

Distance queries inside the simulation are exact (bounded Dijkstra or the
dense matrix engine), so the output keeps, per surviving heavy edge e, a
second-shortest-path separation strictly above s2*w(e); the asymptotic
runtime advantages of approximate cluster-graph queries are out of scope.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .graph import EXCEEDS_CUTOFF, Edge, WeightedGraph, shortest_path_avoiding_edge
from .greedy import SpannerResult, SpannerTrace, _run_greedy_scan
from .metric import MetricSpace, complete_graph


class BaseSpannerKind(enum.Enum):
    COMPLETE = "complete"
    NET_HIERARCHY = "net"


@dataclass(frozen=True)
class ApproxGreedyConfig:
    """Target stretch 1+eps split into base and simulation factors.

    ``t_prime_fraction`` positions the helper stretch t' = 1 + eps*fraction
    strictly between 1 and t; ``net_gamma`` scales the per-level cross-edge
    radius of the net hierarchy (None picks a generous default that the
    stretch checks then validate a posteriori).
    """

    epsilon: float
    t_prime_fraction: float = 0.5
    base: BaseSpannerKind = BaseSpannerKind.NET_HIERARCHY
    net_gamma: float | None = None
    engine: str = "auto"

    def __post_init__(self):
        if not (0.0 < self.epsilon < 0.5):
            raise ValueError(f"epsilon must lie in (0, 1/2), got {self.epsilon}")
        if not (0.0 < self.t_prime_fraction < 1.0):
            raise ValueError(f"t_prime_fraction must lie in (0, 1), got {self.t_prime_fraction}")
        if self.net_gamma is not None and not self.net_gamma > 0:
            raise ValueError(f"net_gamma must be positive, got {self.net_gamma}")

    @property
    def t(self) -> float:
        return 1.0 + self.epsilon

    @property
    def t_prime(self) -> float:
        return 1.0 + self.epsilon * self.t_prime_fraction

    @property
    def base_stretch(self) -> float:
        """s1 = sqrt(t / t')."""
        return math.sqrt(self.t / self.t_prime)

    @property
    def simulation_stretch(self) -> float:
        """s2 = sqrt(t * t'); s1 * s2 == t."""
        return math.sqrt(self.t * self.t_prime)

    def effective_net_gamma(self) -> float:
        if self.net_gamma is not None:
            return self.net_gamma
        return 4.0 + 32.0 / (self.base_stretch - 1.0)


@dataclass(frozen=True)
class NetLevel:
    scale: float
    net_points: tuple[int, ...]
    cross_edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class NetHierarchy:
    levels: tuple[NetLevel, ...]
    #: One link per point, added at the lowest level whose net drops it;
    #: these keep the union connected without concentrating degree anywhere.
    covering_links: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class LightEdgePartition:
    """Split of a base spanner's edges at the D/n weight threshold."""

    max_weight: float
    threshold: float
    light_edges: frozenset[Edge]
    heavy_edges: frozenset[Edge]


@dataclass(frozen=True)
class PipelineSummary:
    base_edges: int
    max_base_weight: float
    light_count: int
    heavy_count: int
    output_edges: int
    base_stretch: float
    simulation_stretch: float

    def to_json_dict(self) -> dict:
        return {
            "base_edges": self.base_edges,
            "max_base_weight": self.max_base_weight,
            "light_count": self.light_count,
            "heavy_count": self.heavy_count,
            "output_edges": self.output_edges,
            "base_stretch": self.base_stretch,
            "simulation_stretch": self.simulation_stretch,
        }


@dataclass
class ApproxGreedyResult:
    result: SpannerResult
    base: WeightedGraph
    partition: LightEdgePartition
    summary: PipelineSummary
    hierarchy: NetHierarchy | None = None

    @property
    def spanner(self) -> WeightedGraph:
        return self.result.spanner


# -- base spanner ------------------------------------------------------------------


def base_spanner(
    m: MetricSpace, s1: float, cfg: ApproxGreedyConfig
) -> tuple[WeightedGraph, NetHierarchy | None]:
    """Stage-one spanner of the metric at stretch s1.

    COMPLETE returns the full metric graph (stretch exactly 1).
    NET_HIERARCHY builds geometric nets at doubling scales and connects,
    per level, net points within gamma*scale plus every point to a covering
    net point; the stretch guarantee is validated by measurement, not
    assumed from the constant.
    """
    if not s1 > 1.0:
        raise ValueError(f"base stretch must exceed 1, got {s1}")
    if m.n < 2:
        raise ValueError("base spanner needs at least 2 points")
    if cfg.base is BaseSpannerKind.COMPLETE:
        return complete_graph(m), None
    return _net_hierarchy_spanner(m, cfg.effective_net_gamma())


def _net_hierarchy_spanner(m: MetricSpace, gamma: float) -> tuple[WeightedGraph, NetHierarchy]:
    n = m.n
    d = m.matrix()
    off = d[~np.eye(n, dtype=bool)]
    d_min = float(off.min())
    d_max = float(off.max())
    i0 = math.floor(math.log2(d_min))
    while 2.0**i0 >= d_min:
        i0 -= 1
    top = math.ceil(math.log2(d_max))
    levels: list[NetLevel] = []
    links: list[tuple[int, int]] = []
    pair_set: set[tuple[int, int]] = set()
    linked = np.zeros(n, dtype=bool)
    for i in range(i0, top + 1):
        scale = 2.0**i
        net = _greedy_net(d, scale)
        radius = gamma * scale
        cross: list[tuple[int, int]] = []
        net_arr = np.asarray(net)
        if len(net_arr) > 1:
            sub = d[np.ix_(net_arr, net_arr)]
            a_idx, b_idx = np.nonzero(np.triu(sub <= radius, k=1))
            for a, b in zip(net_arr[a_idx].tolist(), net_arr[b_idx].tolist()):
                pair = (a, b) if a < b else (b, a)
                cross.append(pair)
                pair_set.add(pair)
        # A point links to its nearest net point at the first level whose
        # net drops it.  Links chain strictly upward and end at the lone
        # top-level net point, so the union is connected without turning
        # any single vertex into a hub.
        in_net = np.zeros(n, dtype=bool)
        in_net[net_arr] = True
        dropping = np.flatnonzero(~in_net & ~linked)
        if len(dropping):
            reps = net_arr[np.argmin(d[np.ix_(dropping, net_arr)], axis=1)]
            for p, q in zip(dropping.tolist(), reps.tolist()):
                pair = (p, q) if p < q else (q, p)
                links.append(pair)
                pair_set.add(pair)
            linked[dropping] = True
        levels.append(NetLevel(scale, tuple(net), tuple(cross)))
        if len(net) == 1:
            break
    edges = [(u, v, float(d[u, v])) for (u, v) in pair_set]
    return WeightedGraph.from_edges(n, edges), NetHierarchy(tuple(levels), tuple(links))


def _greedy_net(d: np.ndarray, scale: float) -> list[int]:
    """Incremental net in canonical point order: join iff farther than
    `scale` from every current net point."""
    n = d.shape[0]
    net = [0]
    min_dist = d[:, 0].copy()
    for p in range(1, n):
        if min_dist[p] > scale:
            net.append(p)
            np.minimum(min_dist, d[:, p], out=min_dist)
    return net


# -- light-edge partition ----------------------------------------------------------


def partition_light_edges(gprime: WeightedGraph) -> LightEdgePartition:
    """Split edges at D/n, D being the heaviest base-spanner weight."""
    if gprime.m == 0:
        raise ValueError("cannot partition an empty edge set")
    _, _, ew = gprime.edge_arrays()
    d_max = float(ew.max())
    threshold = d_max / gprime.n
    light = []
    heavy = []
    for e in gprime.iter_edges():
        (light if e.weight <= threshold else heavy).append(e)
    return LightEdgePartition(d_max, threshold, frozenset(light), frozenset(heavy))


# -- greedy simulation -------------------------------------------------------------


def restricted_greedy(
    gprime: WeightedGraph, seed: frozenset[Edge] | set[Edge], s2: float, engine: str = "auto"
) -> SpannerResult:
    """Greedy scan at stretch s2 over gprime, with `seed` adopted up front.

    Seed edges appear in the trace as accepted with an EXCEEDS_CUTOFF
    witness; every other edge gets the usual exact distance query against
    the spanner grown so far.
    """
    seed = frozenset(seed)
    host_set = gprime.edge_set()
    for e in seed:
        if (e.u, e.v, e.weight) not in host_set:
            raise ValueError(f"seed edge {e} is not an edge of the base spanner")
    eu, ev, ew = gprime.edge_arrays()
    preaccepted = np.zeros(gprime.m, dtype=bool)
    if seed:
        seed_keys = {(e.u, e.v, e.weight) for e in seed}
        for i in range(gprime.m):
            if (int(eu[i]), int(ev[i]), float(ew[i])) in seed_keys:
                preaccepted[i] = True
    seed_graph = gprime.subgraph_with_edges(seed) if seed else None
    accepted, witness = _run_greedy_scan(
        gprime, s2, engine, preaccepted=preaccepted, seed_graph=seed_graph
    )
    spanner = WeightedGraph(gprime.n, eu[accepted], ev[accepted], ew[accepted])
    trace = SpannerTrace(eu, ev, ew, accepted, witness)
    return SpannerResult(spanner, "restricted-greedy", s2, trace)


# -- end-to-end pipeline -----------------------------------------------------------


def approx_greedy(m: MetricSpace, cfg: ApproxGreedyConfig) -> ApproxGreedyResult:
    """base spanner -> light-edge split -> seeded greedy simulation."""
    s1 = cfg.base_stretch
    s2 = cfg.simulation_stretch
    base, hierarchy = base_spanner(m, s1, cfg)
    part = partition_light_edges(base)
    sim = restricted_greedy(base, part.light_edges, s2, engine=cfg.engine)
    result = SpannerResult(sim.spanner, "approx-greedy", cfg.t, sim.trace)
    summary = PipelineSummary(
        base_edges=base.m,
        max_base_weight=part.max_weight,
        light_count=len(part.light_edges),
        heavy_count=len(part.heavy_edges),
        output_edges=sim.spanner.m,
        base_stretch=s1,
        simulation_stretch=s2,
    )
    return ApproxGreedyResult(result, base, part, summary, hierarchy)


def second_shortest_weight(g: WeightedGraph, e: Edge) -> float:
    """Weight of the best u-v path distinct from the edge (u, v) itself.

    Realized as the shortest path with that edge deleted; EXCEEDS_CUTOFF
    when the endpoints fall apart (bridges have no second path).
    """
    eu, ev, ew = g.edge_arrays()
    key = (min(e.u, e.v), max(e.u, e.v))
    eid = None
    for i in range(g.m):
        if (int(eu[i]), int(ev[i])) == key and float(ew[i]) == e.weight:
            eid = i
            break
    if eid is None:
        raise ValueError(f"edge {e} is not in the graph")
    path = shortest_path_avoiding_edge(g, key[0], key[1], avoid_edge_index=eid)
    return EXCEEDS_CUTOFF if path is None else path.weight
