"""Measurement and verification of (graph, spanner) pairs.

Stretch is certified on the host graph's edges only: if every edge (u, v)
satisfies dist_H(u, v) <= t * w(u, v), then concatenating spanner detours
along any shortest path gives the same bound for every vertex pair, so the
edge check is a sound and complete certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import (
    DisconnectedGraphError,
    Edge,
    NotSubgraphError,
    Path,
    WeightedGraph,
    _raw_all_pairs,
    all_pairs_distances,
    girth_unweighted,
    is_connected,
    mst,
    shortest_path_avoiding_edge,
)

#: Relative slack applied to stretch comparisons; absorbs path-sum rounding.
STRETCH_TOL = 1e-9

#: Pair-stretch is only evaluated exhaustively up to this size.
PAIR_STRETCH_MAX_N = 500


@dataclass(frozen=True)
class StretchCheck:
    ok: bool
    worst_ratio: float
    worst_pair: tuple[int, int]
    t: float


@dataclass(frozen=True)
class AnalysisReport:
    size: int
    weight: float
    mst_weight: float
    lightness: float
    max_degree: int
    max_edge_stretch: float
    max_pair_stretch: float | None
    girth: float

    def to_json_dict(self) -> dict:
        d = {
            "size": self.size,
            "weight": self.weight,
            "mst_weight": self.mst_weight,
            "lightness": self.lightness,
            "max_degree": self.max_degree,
            "max_edge_stretch": self.max_edge_stretch,
            "max_pair_stretch": self.max_pair_stretch,
            "girth": None if math.isinf(self.girth) else int(self.girth),
        }
        return d


@dataclass(frozen=True)
class EssentialityViolation:
    edge: Edge
    distance_without_edge: float
    shortcut: Path | None


@dataclass(frozen=True)
class EssentialityCheck:
    ok: bool
    violations: tuple[EssentialityViolation, ...]


def _require_subgraph(h: WeightedGraph, g: WeightedGraph) -> None:
    if h.n != g.n:
        raise NotSubgraphError(f"vertex counts differ: {h.n} vs {g.n}")
    if not h.edge_set() <= g.edge_set():
        raise NotSubgraphError("spanner edges are not a subset of the host graph")


def verify_spanner(h: WeightedGraph, g: WeightedGraph, t: float) -> StretchCheck:
    """Check dist_h(u, v) <= t * w(u, v) for every edge of g.

    Reports the worst ratio and the pair realizing it; a disconnected h
    fails with an infinite ratio rather than raising.
    """
    _require_subgraph(h, g)
    gu, gv, gw = g.edge_arrays()
    if g.m == 0:
        return StretchCheck(True, 1.0, (0, 0), t)
    dh = _raw_all_pairs(h)
    ratios = dh[gu, gv] / gw
    worst = int(ratios.argmax())
    worst_ratio = float(ratios[worst])
    ok = bool((dh[gu, gv] <= t * gw * (1.0 + STRETCH_TOL)).all())
    return StretchCheck(ok, worst_ratio, (int(gu[worst]), int(gv[worst])), t)


def report(h: WeightedGraph, g: WeightedGraph) -> AnalysisReport:
    """Size, weight, lightness, degree, stretch, and girth of a spanner."""
    _require_subgraph(h, g)
    if not is_connected(g):
        raise DisconnectedGraphError("host graph is disconnected")
    if not is_connected(h):
        raise DisconnectedGraphError("spanner is disconnected")
    mst_weight = mst(g).total_weight
    weight = h.total_weight
    dh = all_pairs_distances(h)
    gu, gv, gw = g.edge_arrays()
    max_edge_stretch = float((dh[gu, gv] / gw).max()) if g.m else 1.0
    max_pair_stretch: float | None = None
    if g.n <= PAIR_STRETCH_MAX_N:
        dg = all_pairs_distances(g)
        iu, iv = np.triu_indices(g.n, k=1)
        if len(iu):
            max_pair_stretch = float((dh[iu, iv] / dg[iu, iv]).max())
    return AnalysisReport(
        size=h.m,
        weight=weight,
        mst_weight=mst_weight,
        lightness=weight / mst_weight,
        max_degree=h.max_degree(),
        max_edge_stretch=max_edge_stretch,
        max_pair_stretch=max_pair_stretch,
        girth=girth_unweighted(h),
    )


def edge_essentiality_suite(h: WeightedGraph, t: float) -> EssentialityCheck:
    """Assert that deleting any edge of h breaks the t-stretch of its endpoints.

    This is the machine-checkable face of greedy minimality: an edge the
    scan kept has, by construction, no alternative route within t times its
    weight, and later additions cannot create one.  Violations come back
    with the offending shortcut path.
    """
    violations = []
    for eid, e in enumerate(h.iter_edges()):
        path = shortest_path_avoiding_edge(h, e.u, e.v, avoid_edge_index=eid)
        d = path.weight if path is not None else math.inf
        if not d > t * e.weight * (1.0 - STRETCH_TOL):
            violations.append(EssentialityViolation(e, d, path))
    return EssentialityCheck(not violations, tuple(violations))
