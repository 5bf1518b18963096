"""Community structure and strong/weak tie analysis for large friendship graphs.

The library ingests anonymized crawl samples into an immutable compressed
graph, detects communities by greedy modularity maximization, classifies
every edge as a strong (intra-community) or weak (inter-community) tie, and
computes the distribution statistics that characterize both: CCDFs, tie
ratios and tipping points, weak-tie density maps, link fractions and
log-log fits. Synthetic generators and crawl-style samplers provide ground
truth for validating the pipeline end to end.
"""

from .errors import DataError, ParseError
from .graph import Graph, WeightedGraph, build_graph, degree
from .ingest import (
    CrawlSample,
    extract_visited_core,
    load_crawl_sample,
    merge_samples,
    parse_edge_list,
    read_graph,
    write_edge_list,
)
from .community import (
    Dendrogram,
    LouvainConfig,
    LouvainState,
    Partition,
    aggregate,
    louvain,
    modularity,
    move_gain,
    read_partition,
    resolution_limit,
    write_dendrogram,
    write_partition,
)
from .ties import (
    TieLabeling,
    classify_ties,
    tie_counts_per_node,
    tie_means_by_degree,
    tie_ratio,
    tipping_point,
)
from .stats import (
    CcdfSeries,
    DensityMap,
    ccdf,
    community_sizes,
    density_map,
    link_fraction,
    link_fraction_per_community,
    loglog_slope,
    nmi,
)
from .synth import (
    BiasReport,
    SampleTrace,
    bernoulli_graph,
    bias_report,
    mhrw_sample,
    planted_partition,
    uniform_sample,
)

__version__ = "0.1.0"

__all__ = [
    "BiasReport",
    "CcdfSeries",
    "CrawlSample",
    "DataError",
    "Dendrogram",
    "DensityMap",
    "Graph",
    "LouvainConfig",
    "LouvainState",
    "ParseError",
    "Partition",
    "SampleTrace",
    "TieLabeling",
    "WeightedGraph",
    "aggregate",
    "bernoulli_graph",
    "bias_report",
    "build_graph",
    "ccdf",
    "classify_ties",
    "community_sizes",
    "degree",
    "density_map",
    "extract_visited_core",
    "link_fraction",
    "link_fraction_per_community",
    "load_crawl_sample",
    "loglog_slope",
    "louvain",
    "merge_samples",
    "mhrw_sample",
    "modularity",
    "move_gain",
    "nmi",
    "parse_edge_list",
    "planted_partition",
    "read_graph",
    "read_partition",
    "resolution_limit",
    "tie_counts_per_node",
    "tie_means_by_degree",
    "tie_ratio",
    "tipping_point",
    "uniform_sample",
    "write_dendrogram",
    "write_edge_list",
    "write_partition",
]
