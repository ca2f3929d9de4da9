"""spanlab: greedy and approximate-greedy graph spanners, with the
verification, oracle, and experiment machinery around them."""

from .graph import (
    EXCEEDS_CUTOFF,
    INFINITE,
    DisconnectedGraphError,
    Edge,
    GraphFormatError,
    MstResult,
    NotSubgraphError,
    Path,
    WeightedGraph,
    all_pairs_distances,
    bounded_dijkstra,
    canonical_edge_order,
    girth_unweighted,
    is_connected,
    mst,
    read_graph,
    write_graph,
)
from .metric import (
    DoublingEstimate,
    MetricSpace,
    complete_graph,
    estimate_doubling_constant,
    metric_closure,
    read_matrix,
    read_points,
    write_matrix,
    write_points,
)
from .greedy import GreedyConfig, SpannerResult, SpannerTrace, greedy_spanner, mst_inclusion_check
from .analysis import (
    AnalysisReport,
    EssentialityCheck,
    StretchCheck,
    edge_essentiality_suite,
    report,
    verify_spanner,
)
from .oracle import OracleResult, min_size_spanner, min_weight_spanner
from .approx import (
    ApproxGreedyConfig,
    ApproxGreedyResult,
    BaseSpannerKind,
    LightEdgePartition,
    NetHierarchy,
    PipelineSummary,
    approx_greedy,
    base_spanner,
    partition_light_edges,
    restricted_greedy,
    second_shortest_weight,
)
from .generators import (
    PetersenStarLabels,
    grid_metric,
    petersen_star_fixture,
    random_euclidean,
    random_weighted_graph,
)

__version__ = "0.1.0"
