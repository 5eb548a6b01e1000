"""Toolkit for multi-level dataflow blueprints of visual-analytics systems.

Authoring, validation, graph analytics, corpus statistics, annotation
comparison, LLM-assisted extraction, and a local curation service, all
over one hierarchical JSON format.
"""

from .model import (
    HIGH_LEVEL_CATEGORIES,
    DependencyKind,
    GranularBlock,
    HighLevelBlock,
    IntermediateBlock,
    SystemBlueprint,
    SystemMetadata,
    serialize_blueprint,
)
from .validation import Issue, ValidationReport, parse_blueprint, validate
from .labels import SynonymTable, normalize_label
from .graph import (
    BlockRef,
    Level,
    MultiLevelGraph,
    TypedEdge,
    build_graph,
    clustering_coefficient,
    degree,
    density,
    edge_kind_split,
)
from .corpus import (
    CorpusSummary,
    FrequencyTable,
    TrendSeries,
    block_frequencies,
    centrality_ranking,
    edge_pattern_frequencies,
    load_corpus,
    summarize,
    temporal_trends,
)
from .compare import (
    AnnotationPair,
    ComparisonRow,
    ComparisonTable,
    aggregate_table,
    compare_pair,
    match_blocks,
)
from .extract import (
    ExtractionRecord,
    PromptSpec,
    build_prompt,
    build_refinement_prompt,
    parse_and_validate,
    refine_extraction,
    run_extraction,
)
from .transport import MockTransport, TransportConfig, TransportError

__version__ = "0.1.0"

__all__ = [
    "HIGH_LEVEL_CATEGORIES",
    "DependencyKind",
    "GranularBlock",
    "HighLevelBlock",
    "IntermediateBlock",
    "SystemBlueprint",
    "SystemMetadata",
    "serialize_blueprint",
    "Issue",
    "ValidationReport",
    "parse_blueprint",
    "validate",
    "SynonymTable",
    "normalize_label",
    "BlockRef",
    "Level",
    "MultiLevelGraph",
    "TypedEdge",
    "build_graph",
    "clustering_coefficient",
    "degree",
    "density",
    "edge_kind_split",
    "CorpusSummary",
    "FrequencyTable",
    "TrendSeries",
    "block_frequencies",
    "centrality_ranking",
    "edge_pattern_frequencies",
    "load_corpus",
    "summarize",
    "temporal_trends",
    "AnnotationPair",
    "ComparisonRow",
    "ComparisonTable",
    "aggregate_table",
    "compare_pair",
    "match_blocks",
    "ExtractionRecord",
    "PromptSpec",
    "build_prompt",
    "build_refinement_prompt",
    "parse_and_validate",
    "refine_extraction",
    "run_extraction",
    "MockTransport",
    "TransportConfig",
    "TransportError",
    "__version__",
]
