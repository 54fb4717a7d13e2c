"""Heterogeneous multi-layered networks: data model, measures, generation and IO."""

from .convert import from_heterogeneous, from_homogeneous, from_multilayered, from_multiplex
from .core import (
    DEFAULT_TYPE,
    DEFAULT_TYPE_NAME,
    DuplicateError,
    Edge,
    Hmn,
    HmnError,
    LayeredNode,
    UnknownEntityError,
    induced_subhmn,
)
from .distribution import DegreeHistogram, degree_distribution, ks_distance, log_binned, loglog_slope
from .generator import GenParams, HmnGenerator, generate, generate_baseline, sample_m_matrix
from .metrics import (
    FULL,
    MetricScope,
    NetworkSummary,
    QueryCounter,
    UndefinedMeasureError,
    betweenness_all,
    betweenness_centrality,
    centrality_averages,
    closeness_all,
    closeness_centrality,
    clustering_coefficient,
    degree_centrality,
    jaccard_score,
    layer_averages,
    neighborhood,
    neighborhood_in,
    neighborhood_out,
    network_summary,
    shortest_distance,
    typed_neighbors,
    typed_neighbors_scan,
)

__version__ = "0.1.0"

__all__ = [
    "betweenness_all",
    "betweenness_centrality",
    "centrality_averages",
    "closeness_all",
    "closeness_centrality",
    "clustering_coefficient",
    "DEFAULT_TYPE",
    "DEFAULT_TYPE_NAME",
    "degree_centrality",
    "degree_distribution",
    "DegreeHistogram",
    "DuplicateError",
    "Edge",
    "from_heterogeneous",
    "from_homogeneous",
    "from_multilayered",
    "from_multiplex",
    "FULL",
    "generate",
    "generate_baseline",
    "GenParams",
    "Hmn",
    "HmnError",
    "HmnGenerator",
    "induced_subhmn",
    "jaccard_score",
    "ks_distance",
    "layer_averages",
    "LayeredNode",
    "log_binned",
    "loglog_slope",
    "MetricScope",
    "neighborhood",
    "neighborhood_in",
    "neighborhood_out",
    "network_summary",
    "NetworkSummary",
    "QueryCounter",
    "sample_m_matrix",
    "shortest_distance",
    "typed_neighbors",
    "typed_neighbors_scan",
    "UndefinedMeasureError",
    "UnknownEntityError",
]
