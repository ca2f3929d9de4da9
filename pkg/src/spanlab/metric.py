"""Metric spaces as first-class inputs, and the graph <-> metric bridge.

A MetricSpace is either Euclidean (n x d coordinates, distances computed on
demand) or matrix-sourced (a full n x n distance matrix).  Metric closures
of graphs are inherently matrix-like at desk scale, so closures come back
matrix-sourced.  Instances are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import DisconnectedGraphError, WeightedGraph, all_pairs_distances

#: Relative tolerance for triangle-inequality validation of matrix inputs;
#: absorbs float accumulation in shortest-path closures.
TRIANGLE_TOL = 1e-9

#: Full-validation size ceiling; larger matrices are spot-checked.
_FULL_VALIDATION_N = 500
_SAMPLED_TRIPLES = 20000


@dataclass(frozen=True)
class DoublingEstimate:
    """Greedy-cover diagnostic of the doubling constant (not a certificate)."""

    doubling_constant: int
    estimated_dimension: float


class MetricSpace:
    """Finite metric: point count plus a total distance function."""

    __slots__ = ("n", "coords", "_matrix")

    def __init__(self, n: int, coords: np.ndarray | None, matrix: np.ndarray | None):
        self.n = n
        self.coords = coords
        self._matrix = matrix

    @classmethod
    def from_points(cls, coords: np.ndarray) -> "MetricSpace":
        coords = np.asarray(coords, dtype=np.float64)
        if coords.ndim != 2:
            raise ValueError("coordinates must be an n x d array")
        return cls(coords.shape[0], coords, None)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, validate: bool = True) -> "MetricSpace":
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("distance matrix must be square")
        n = matrix.shape[0]
        if validate:
            _validate_metric_matrix(matrix)
        return cls(n, None, matrix)

    @property
    def is_euclidean(self) -> bool:
        return self.coords is not None

    def distance(self, i: int, j: int) -> float:
        if self._matrix is not None:
            return float(self._matrix[i, j])
        diff = self.coords[i] - self.coords[j]
        return float(np.sqrt((diff * diff).sum()))

    def matrix(self) -> np.ndarray:
        """Full distance matrix (computed once for Euclidean sources)."""
        if self._matrix is None:
            diff = self.coords[:, None, :] - self.coords[None, :, :]
            m = np.sqrt((diff * diff).sum(axis=-1))
            np.fill_diagonal(m, 0.0)
            self._matrix = m
        return self._matrix


def _validate_metric_matrix(d: np.ndarray) -> None:
    n = d.shape[0]
    if not np.array_equal(d, d.T):
        raise ValueError("distance matrix is not symmetric")
    if np.diagonal(d).any():
        raise ValueError("distance matrix has a nonzero diagonal")
    off = d[~np.eye(n, dtype=bool)]
    if n > 1 and not (off > 0).all():
        raise ValueError("off-diagonal distances must be positive")
    tol = TRIANGLE_TOL * (d.max() if n > 1 else 1.0)
    if n <= _FULL_VALIDATION_N:
        for k in range(n):
            if (d > d[:, [k]] + d[[k], :] + tol).any():
                raise ValueError(f"triangle inequality violated via point {k}")
    else:
        rng = np.random.default_rng(0)
        idx = rng.integers(0, n, size=(_SAMPLED_TRIPLES, 3))
        i, j, k = idx[:, 0], idx[:, 1], idx[:, 2]
        if (d[i, j] > d[i, k] + d[k, j] + tol).any():
            raise ValueError("triangle inequality violated (sampled check)")


# -- operations ----------------------------------------------------------------


def complete_graph(m: MetricSpace) -> WeightedGraph:
    """The metric viewed as a complete weighted graph."""
    if m.n < 2:
        raise ValueError("complete_graph needs at least 2 points")
    d = m.matrix()
    iu, iv = np.triu_indices(m.n, k=1)
    ew = d[iu, iv]
    # Canonical (weight, u, v) sort directly on arrays; from_edges would loop.
    order = np.lexsort((iv, iu, ew))
    return WeightedGraph(m.n, iu[order].astype(np.int64), iv[order].astype(np.int64), ew[order])


def metric_closure(g: WeightedGraph) -> MetricSpace:
    """Shortest-path metric induced by a connected graph."""
    try:
        d = all_pairs_distances(g)
    except DisconnectedGraphError:
        raise
    return MetricSpace.from_matrix(d, validate=False)


def estimate_doubling_constant(m: MetricSpace) -> DoublingEstimate:
    """Greedy-cover estimate of the doubling constant.

    For each point p and each radius r on a geometric grid over occurring
    distances, greedily covers the ball B(p, r) with balls of radius r/2
    centered at points, and reports the largest cover found.  Greedy cover
    is not optimal cover, so this is a diagnostic, not a certified bound.
    """
    if m.n == 1:
        return DoublingEstimate(1, 0.0)
    d = m.matrix()
    off = d[~np.eye(m.n, dtype=bool)]
    r_min = float(off.min())
    r_max = float(off.max())
    radii = []
    r = r_min
    while r < 2.0 * r_max:
        radii.append(r)
        r *= 2.0
    worst = 1
    for p in range(m.n):
        drow = d[p]
        for r in radii:
            ball = np.flatnonzero(drow <= r)
            if len(ball) <= worst:
                continue
            worst = max(worst, _greedy_cover_size(d, ball, r / 2.0))
    return DoublingEstimate(worst, math.log2(worst))


def _greedy_cover_size(d: np.ndarray, ball: np.ndarray, radius: float) -> int:
    """Greedy set cover of `ball` by radius-balls centered at any points."""
    uncovered = np.ones(len(ball), dtype=bool)
    # coverage[c, j] == True when point c covers ball[j].
    coverage = d[:, ball] <= radius
    count = 0
    while uncovered.any():
        gains = (coverage & uncovered).sum(axis=1)
        c = int(gains.argmax())
        if gains[c] == 0:
            # Cannot happen for a metric (each point covers itself); guard anyway.
            break
        uncovered &= ~coverage[c]
        count += 1
    return count


# -- file formats ----------------------------------------------------------------


def write_points(m: MetricSpace, path: str) -> None:
    if not m.is_euclidean:
        raise ValueError("point-set files require a Euclidean metric")
    with open(path, "w", encoding="utf-8") as fh:
        n, dim = m.coords.shape
        fh.write(f"{n} {dim}\n")
        for row in m.coords:
            fh.write(" ".join(repr(float(x)) for x in row) + "\n")


def read_points(path: str) -> MetricSpace:
    from .graph import GraphFormatError

    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh.readlines()]
    rows = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
    if not rows:
        raise GraphFormatError("empty point-set file")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphFormatError("expected header `n d`", lineno)
    n, dim = int(parts[0]), int(parts[1])
    if len(rows) - 1 != n:
        raise GraphFormatError(f"header declares {n} points, file has {len(rows) - 1}")
    coords = np.empty((n, dim), dtype=np.float64)
    for i, (lineno, ln) in enumerate(rows[1:]):
        vals = ln.split()
        if len(vals) != dim:
            raise GraphFormatError(f"expected {dim} coordinates", lineno)
        coords[i] = [float(x) for x in vals]
    return MetricSpace.from_points(coords)


def write_matrix(m: MetricSpace, path: str) -> None:
    d = m.matrix()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{m.n}\n")
        for row in d:
            fh.write(" ".join(repr(float(x)) for x in row) + "\n")


def read_matrix(path: str) -> MetricSpace:
    from .graph import GraphFormatError

    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh.readlines()]
    rows = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
    if not rows:
        raise GraphFormatError("empty matrix file")
    lineno, header = rows[0]
    try:
        n = int(header)
    except ValueError:
        raise GraphFormatError("expected header `n`", lineno) from None
    if len(rows) - 1 != n:
        raise GraphFormatError(f"header declares {n} rows, file has {len(rows) - 1}")
    matrix = np.empty((n, n), dtype=np.float64)
    for i, (lineno, ln) in enumerate(rows[1:]):
        vals = ln.split()
        if len(vals) != n:
            raise GraphFormatError(f"expected {n} entries", lineno)
        matrix[i] = [float(x) for x in vals]
    return MetricSpace.from_matrix(matrix)
