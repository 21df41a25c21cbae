"""similnet: crowd-sourced design-similarity surveys and the weighted
networks distilled from them.

The pipeline: an iterated panel-selection survey produces an append-only
event log; pairwise co-occurrence and co-selection counts normalize into a
similarity weight matrix; thresholding yields graphs whose communities,
cliques, and structural metrics characterize the emergent typologies.
"""

from .analysis import AnalysisRequest, AnalysisResult, run_analysis, write_report_files
from .catalog import Catalog, DesignItem
from .community import (
    COMMUNITY_MODES,
    DEFAULT_COMMUNITY_MODE,
    Dendrogram,
    Partition,
    best_partition,
    community_report,
    edge_betweenness,
    edge_betweenness_exact,
    girvan_newman,
    modularity,
)
from .errors import (
    EmptyGraphError,
    InconsistentCountsError,
    InsufficientSupportError,
    InvalidConfigError,
    InvalidGridError,
    InvalidPartitionError,
    InvalidSelectionError,
    InvalidWeightError,
    NoEdgesError,
    NoSurvivorsError,
    NotFoundError,
    OutOfRangeError,
    SchemaError,
    SimilnetError,
    UndefinedModularityError,
    UndefinedResultError,
    WrongStateError,
)
from .eventlog import read_log, write_log
from .graphs import (
    Graph,
    build_graph,
    connected_components,
    diameter,
    maximal_cliques,
    structure_report,
)
from .matrices import CoMatrix, NormMatrix, accumulate, export_matrices, normalize
from .metrics import (
    MetricsReport,
    assortativity,
    characterize,
    clustering,
    degree_distribution,
    powerlaw_fit,
    small_world_sigma,
)
from .simulate import (
    NoiseModel,
    PlantedCatalog,
    adjusted_rand_index,
    planted_catalog,
    recovery_score,
    simulate_cohort,
    simulate_respondent,
)
from .survey import (
    DEFAULT_ITERATIONS,
    DEFAULT_PANEL_SIZE,
    DEFAULT_POOL_SIZE,
    QuestionnaireResponse,
    SelectionEvent,
    SessionConfig,
    SurveyEngine,
)
from .sweep import SweepReport, pair_hierarchy, root_designs, threshold_sweep

__version__ = "0.1.0"

__all__ = [
    "AnalysisRequest",
    "AnalysisResult",
    "Catalog",
    "CoMatrix",
    "COMMUNITY_MODES",
    "DEFAULT_COMMUNITY_MODE",
    "DEFAULT_ITERATIONS",
    "DEFAULT_PANEL_SIZE",
    "DEFAULT_POOL_SIZE",
    "Dendrogram",
    "DesignItem",
    "EmptyGraphError",
    "Graph",
    "InconsistentCountsError",
    "InsufficientSupportError",
    "InvalidConfigError",
    "InvalidGridError",
    "InvalidPartitionError",
    "InvalidSelectionError",
    "InvalidWeightError",
    "MetricsReport",
    "NoEdgesError",
    "NoSurvivorsError",
    "NoiseModel",
    "NormMatrix",
    "NotFoundError",
    "OutOfRangeError",
    "Partition",
    "PlantedCatalog",
    "QuestionnaireResponse",
    "SchemaError",
    "SelectionEvent",
    "SessionConfig",
    "SimilnetError",
    "SurveyEngine",
    "SweepReport",
    "UndefinedModularityError",
    "UndefinedResultError",
    "WrongStateError",
    "accumulate",
    "adjusted_rand_index",
    "assortativity",
    "best_partition",
    "build_graph",
    "characterize",
    "clustering",
    "community_report",
    "connected_components",
    "degree_distribution",
    "diameter",
    "edge_betweenness",
    "edge_betweenness_exact",
    "export_matrices",
    "girvan_newman",
    "maximal_cliques",
    "modularity",
    "normalize",
    "pair_hierarchy",
    "planted_catalog",
    "powerlaw_fit",
    "read_log",
    "recovery_score",
    "root_designs",
    "run_analysis",
    "simulate_cohort",
    "simulate_respondent",
    "small_world_sigma",
    "structure_report",
    "threshold_sweep",
    "write_log",
    "write_report_files",
]
