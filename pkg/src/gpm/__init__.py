"""Graph pattern matching via strong simulation.

Dual-simulation fixpoints, ball-local strong matching, query minimization
with dual-simulation filtering and connectivity pruning, a brute-force
subgraph-isomorphism oracle with quality metrics, and a simulated
distributed evaluator with traffic accounting.
"""

from .errors import InputError, InternalInvariantError, ParseError
from .graphs import (
    Ball,
    LabeledDigraph,
    Pattern,
    Subgraph,
    build_ball,
    component_of,
    connected_components,
    diameter,
    has_directed_cycle,
    has_undirected_cycle,
    induced,
    undirected_distance,
)
from .graphio import GeneratorParams, generate, parse_graph, serialize_graph
from .simulation import (
    MatchRelation,
    dual_sim,
    graph_sim,
    match_graph,
    naive_dual_sim,
)
from .strong import (
    MatchResult,
    PerfectSubgraph,
    extract_max_pg,
    match_strong,
    matched_nodes,
    result_text,
)
from .optimize import (
    MinimizedPattern,
    connectivity_prune,
    dual_filter,
    match_plus,
    min_q,
)
from .iso import (
    IsoMatch,
    QualityReport,
    closeness,
    quality_report,
    report_text,
    subgraph_iso_all,
)
from .distributed import (
    Fragment,
    FragmentedGraph,
    TrafficLedger,
    assemble_border_balls,
    distributed_match,
    partition,
    reassemble,
    sim_shipment_diagnostic,
)

__version__ = "0.1.0"
