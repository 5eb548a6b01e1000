#!/usr/bin/env python3
"""Regenerate the shipped fixture blueprints.

Each fixture encodes one published visual-analytics system at the block
and edge granularity reported for it:

  taxivis  6 intermediate / 12 granular blocks, 14 data + 3 interaction edges
  vaud     8 intermediate / 27 granular blocks (8/6/8/5 across the four
           stages), 37 data + 4 interaction edges
  tpflow   18 granular blocks, 47 data + 15 interaction edges; the
           densest graph of the three (density ~0.2, clustering ~0.5)

The script validates every fixture, asserts the counts above, and
writes canonical JSON into src/blueprintkit/fixtures/.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from blueprintkit.graph import Level, build_graph, clustering_coefficient, density
from blueprintkit.model import (
    GranularBlock,
    HighLevelBlock,
    IntermediateBlock,
    SystemBlueprint,
    SystemMetadata,
    serialize_blueprint,
)
from blueprintkit.validation import validate

FIXTURES_DIR = Path(__file__).resolve().parents[1] / "src" / "blueprintkit" / "fixtures"

# structure: [(high name, [(intermediate name, [(id, name, description,
#             inputs, outputs, citation)])])]
Structure = list[tuple[str, list[tuple[str, list[tuple]]]]]


def build(
    title: str,
    metadata: SystemMetadata,
    structure: Structure,
    data_edges: list[tuple[int, int]],
    interaction_edges: list[tuple[int, int]],
) -> SystemBlueprint:
    assert len(set(data_edges)) == len(data_edges), "duplicate data edge"
    assert len(set(interaction_edges)) == len(interaction_edges), "duplicate interaction edge"
    assert not set(data_edges) & set(interaction_edges), "edge listed with both kinds"
    feeds: dict[int, list[int]] = {}
    interacts: dict[int, list[int]] = {}
    for src, dst in data_edges:
        feeds.setdefault(src, []).append(dst)
    for src, dst in interaction_edges:
        interacts.setdefault(src, []).append(dst)
    highs = []
    for high_name, inters in structure:
        inter_blocks = []
        for inter_name, blocks in inters:
            grans = [
                GranularBlock(
                    name=name,
                    id=block_id,
                    paper_description=desc,
                    inputs=tuple(inputs),
                    outputs=tuple(outputs),
                    reference_citation=cite,
                    feeds_into=tuple(feeds.get(block_id, ())),
                    interacts_with=tuple(interacts.get(block_id, ())),
                )
                for block_id, name, desc, inputs, outputs, cite in blocks
            ]
            inter_blocks.append(IntermediateBlock(inter_name, tuple(grans)))
        highs.append(HighLevelBlock(high_name, tuple(inter_blocks)))
    return SystemBlueprint(title, tuple(highs), metadata)


TAXIVIS = build(
    title="Visual Exploration of Big Spatio-Temporal Urban Data: A Study of New York City Taxi Trips",
    metadata=SystemMetadata(
        year=2013, venue="IEEE TVCG", domain_tags=("transportation", "urban mobility")
    ),
    structure=[
        (
            "Data Loading",
            [
                (
                    "Loader",
                    [
                        (
                            0,
                            "Taxi Trip Data",
                            "Raw taxi trip records covering pickup and dropoff "
                            "locations, timestamps, and trip attributes.",
                            ["trip record files"],
                            ["trip records"],
                            "Each trip record stores the pickup and dropoff "
                            "position and time together with attributes such as "
                            "fare and distance.",
                        ),
                    ],
                ),
            ],
        ),
        (
            "Data Processing",
            [
                (
                    "Indexing",
                    [
                        (
                            1,
                            "Spatiotemporal Index",
                            "k-d tree style index over trips enabling interactive "
                            "spatial and temporal lookups.",
                            ["trip records"],
                            ["indexed trips"],
                            "Trips are stored in a spatiotemporal index so that "
                            "queries over space and time return at interactive rates.",
                        ),
                    ],
                ),
                (
                    "Querying",
                    [
                        (
                            2,
                            "Visual Query Engine",
                            "Translates user selections into structured queries "
                            "against the index and distributes results to every view.",
                            ["indexed trips", "selection constraints"],
                            ["query results"],
                            "Queries are specified visually and evaluated by the "
                            "query engine, which feeds the coordinated views.",
                        ),
                    ],
                ),
            ],
        ),
        (
            "Visualization",
            [
                (
                    "Geospatial",
                    [
                        (
                            3,
                            "Map 2D",
                            "Primary map of the city on which query results and "
                            "overlays are drawn.",
                            ["query results", "density overlay", "grid overlay"],
                            ["map rendering"],
                            "Results are displayed on an interactive map of the city.",
                        ),
                        (
                            4,
                            "Heatmap",
                            "Density overlay summarizing trip concentration.",
                            ["query results"],
                            ["density overlay"],
                            "A heat map overlay conveys the density of trips.",
                        ),
                        (
                            5,
                            "Grid",
                            "Grid overlay aggregating per-region statistics.",
                            ["query results"],
                            ["grid overlay"],
                            "A grid overlay aggregates statistics for each region.",
                        ),
                    ],
                ),
                (
                    "Infovis",
                    [
                        (
                            6,
                            "Line Chart",
                            "Time series view of trip counts for temporal patterns.",
                            ["query results"],
                            ["time series view"],
                            "A time series view shows how the selected trips "
                            "distribute over time.",
                        ),
                        (
                            7,
                            "Histogram",
                            "Distribution view over a chosen trip attribute.",
                            ["query results"],
                            ["attribute distribution view"],
                            "Histograms summarize the distribution of trip attributes.",
                        ),
                        (
                            8,
                            "Scatter Plot",
                            "Pairwise attribute relationship view.",
                            ["query results"],
                            ["attribute relation view"],
                            "Scatter plots relate pairs of trip attributes.",
                        ),
                    ],
                ),
            ],
        ),
        (
            "Interaction",
            [
                (
                    "Filter",
                    [
                        (
                            9,
                            "Area Selection",
                            "Freehand and polygonal spatial selection drawn on the map.",
                            ["map rendering"],
                            ["spatial constraints"],
                            "Users select regions of interest directly on the map.",
                        ),
                        (
                            10,
                            "Temporal Selection",
                            "Time range selection on the time series view.",
                            ["time series view"],
                            ["temporal constraints"],
                            "Time ranges are brushed on the temporal views.",
                        ),
                        (
                            11,
                            "Attribute Selection",
                            "Attribute constraints picked in the histogram and "
                            "scatter plot.",
                            ["attribute distribution view", "attribute relation view"],
                            ["attribute constraints"],
                            "Attribute ranges can be constrained from the "
                            "statistical views.",
                        ),
                    ],
                ),
            ],
        ),
    ],
    data_edges=[
        (0, 1),
        (1, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (2, 7),
        (2, 8),
        (4, 3),
        (5, 3),
        (3, 9),
        (6, 10),
        (7, 11),
        (8, 11),
    ],
    interaction_edges=[
        (9, 2),
        (10, 2),
        (11, 2),
    ],
)


def _loader_block(block_id: int, name: str, what: str) -> tuple:
    return (
        block_id,
        name,
        f"Loads {what} into the system.",
        [f"raw {what}"],
        [what],
        f"The system ingests {what} among its heterogeneous urban data sources.",
    )


VAUD = build(
    title="From Exploration to Explanation: Visual Analysis of Urban Data",
    metadata=SystemMetadata(
        year=2018, venue="IEEE TVCG", domain_tags=("urban analytics", "multi-source data")
    ),
    structure=[
        (
            "Data Loading",
            [
                (
                    "Loader",
                    [
                        _loader_block(0, "Trajectory Data", "taxi trajectory records"),
                        _loader_block(1, "POI Data", "points of interest"),
                        _loader_block(2, "Social Media Data", "geo-tagged social media posts"),
                        _loader_block(3, "Road Network Data", "road network geometry"),
                        _loader_block(4, "Check-in Data", "location check-in records"),
                        _loader_block(5, "Meteorology Data", "weather measurements"),
                        _loader_block(6, "Mobile Signaling Data", "mobile phone signaling records"),
                        _loader_block(7, "House Price Data", "housing price records"),
                    ],
                ),
            ],
        ),
        (
            "Data Processing",
            [
                (
                    "Integration",
                    [
                        (
                            9,
                            "Data Normalization",
                            "Cleans and normalizes each source into a shared "
                            "spatial and temporal frame.",
                            ["raw source records"],
                            ["normalized records"],
                            "Heterogeneous sources are normalized into a common "
                            "representation before analysis.",
                        ),
                        (
                            8,
                            "Space-Time Cube",
                            "Canonical space-time representation unifying the "
                            "normalized sources for cross-domain queries.",
                            ["normalized records"],
                            ["unified space-time objects"],
                            "All data are organized in a canonical space-time "
                            "cube that unifies heterogeneous urban data.",
                        ),
                    ],
                ),
                (
                    "Querying",
                    [
                        (
                            10,
                            "Atomic Query",
                            "Selects space-time objects satisfying one predicate.",
                            ["unified space-time objects", "selection constraints"],
                            ["query results"],
                            "An atomic query extracts objects that satisfy a "
                            "single spatio-temporal condition.",
                        ),
                        (
                            11,
                            "Boolean Query Combination",
                            "Combines atomic queries with boolean operators.",
                            ["query results"],
                            ["combined query results"],
                            "Atomic queries are combined through boolean "
                            "operations to express compound conditions.",
                        ),
                        (
                            12,
                            "Query Assemble",
                            "Assembles combined queries into an executable "
                            "analysis pipeline.",
                            ["combined query results", "attribute constraints"],
                            ["assembled results"],
                            "Queries are assembled into pipelines whose results "
                            "drive the visual analysis.",
                        ),
                    ],
                ),
                (
                    "Extraction",
                    [
                        (
                            13,
                            "Attribute Extraction",
                            "Derives attributes and measures from assembled "
                            "query results.",
                            ["assembled results"],
                            ["derived attributes"],
                            "Attributes of the queried objects are extracted for "
                            "visualization.",
                        ),
                    ],
                ),
            ],
        ),
        (
            "Visualization",
            [
                (
                    "Geospatial",
                    [
                        (
                            14,
                            "Map 2D",
                            "Base map displaying queried objects and overlays.",
                            ["assembled results", "derived attributes", "overlays"],
                            ["map rendering"],
                            "A map view anchors the spatial exploration of the "
                            "queried data.",
                        ),
                        (
                            15,
                            "Trajectories",
                            "Trajectory overlay drawn over the base map.",
                            ["taxi trajectory records"],
                            ["trajectory overlay"],
                            "Raw trajectories are rendered as an overlay on the map.",
                        ),
                        (
                            16,
                            "POI Glyphs",
                            "Glyph overlay summarizing points of interest.",
                            ["points of interest"],
                            ["glyph overlay"],
                            "Dedicated glyphs present the distribution of points "
                            "of interest.",
                        ),
                        (
                            17,
                            "Heatmap",
                            "Density overlay of queried objects.",
                            ["assembled results"],
                            ["density overlay"],
                            "Density of the selected objects is shown as a heat "
                            "map layer.",
                        ),
                    ],
                ),
                (
                    "Infovis",
                    [
                        (
                            18,
                            "Line Chart",
                            "Temporal evolution of derived attributes.",
                            ["derived attributes"],
                            ["time series view"],
                            "Line charts show how extracted attributes evolve "
                            "over time.",
                        ),
                        (
                            19,
                            "Bar Chart",
                            "Categorical comparison of derived attributes.",
                            ["derived attributes"],
                            ["bar view"],
                            "Bar charts compare attribute values across categories.",
                        ),
                        (
                            20,
                            "Scatter Plot",
                            "Pairwise attribute relationships of queried objects.",
                            ["derived attributes"],
                            ["attribute relation view"],
                            "Scatter plots expose correlations between extracted "
                            "attributes.",
                        ),
                        (
                            21,
                            "Parallel Coordinates",
                            "Multi-attribute profile view of queried objects.",
                            ["derived attributes"],
                            ["multi-attribute view"],
                            "Parallel coordinates present the multivariate "
                            "profiles of the selection.",
                        ),
                    ],
                ),
            ],
        ),
        (
            "Interaction",
            [
                (
                    "Filter",
                    [
                        (
                            22,
                            "Area Selection",
                            "Spatial region selection on the map.",
                            ["map rendering"],
                            ["spatial constraints"],
                            "Regions drawn on the map restrict subsequent queries.",
                        ),
                        (
                            23,
                            "Temporal Selection",
                            "Time interval selection on temporal views.",
                            ["time series view"],
                            ["temporal constraints"],
                            "Temporal intervals brushed in the charts constrain "
                            "the queries.",
                        ),
                        (
                            24,
                            "Attribute Selection",
                            "Attribute range selection in statistical views.",
                            ["bar view", "multi-attribute view"],
                            ["attribute constraints"],
                            "Attribute ranges picked in the views are fed back "
                            "into query assembly.",
                        ),
                    ],
                ),
                (
                    "Linking",
                    [
                        (
                            25,
                            "Brushing",
                            "Brush selection over items in the linked views.",
                            ["attribute relation view", "time series view", "bar view"],
                            ["brushed item set"],
                            "Brushing in one view highlights the same objects "
                            "elsewhere.",
                        ),
                        (
                            26,
                            "View Linking",
                            "Propagates brushed selections across all views.",
                            ["brushed item set"],
                            ["synchronized highlights"],
                            "All views are linked so that selections stay "
                            "consistent across them.",
                        ),
                    ],
                ),
            ],
        ),
    ],
    data_edges=[
        (0, 9),
        (1, 9),
        (2, 9),
        (3, 9),
        (4, 9),
        (5, 9),
        (6, 9),
        (7, 9),
        (9, 8),
        (8, 10),
        (10, 11),
        (11, 12),
        (12, 13),
        (13, 18),
        (13, 19),
        (13, 20),
        (13, 21),
        (12, 14),
        (0, 15),
        (15, 14),
        (1, 16),
        (16, 14),
        (12, 17),
        (17, 14),
        (14, 22),
        (18, 23),
        (19, 24),
        (20, 25),
        (13, 14),
        (21, 24),
        (18, 25),
        (19, 25),
        (12, 18),
        (12, 19),
        (12, 20),
        (12, 21),
        (8, 14),
    ],
    interaction_edges=[
        (22, 10),
        (23, 10),
        (24, 12),
        (25, 26),
    ],
)


TPFLOW = build(
    title="TPFlow: Progressive Partition and Multidimensional Pattern Extraction for "
    "Large-Scale Spatio-Temporal Data Analysis",
    metadata=SystemMetadata(
        year=2019, venue="IEEE TVCG", domain_tags=("spatiotemporal analysis", "tensor decomposition")
    ),
    structure=[
        (
            "Data Loading",
            [
                (
                    "Loader",
                    [
                        (
                            0,
                            "Spatiotemporal Tensor Data",
                            "Multidimensional measurements indexed by location, "
                            "time, and attribute.",
                            ["raw spatiotemporal measurements"],
                            ["measurement records"],
                            "The data form a tensor over the spatial, temporal, "
                            "and attribute dimensions.",
                        ),
                        (
                            1,
                            "Region Partition Data",
                            "Spatial partitions of the study area used to slice "
                            "the tensor.",
                            ["region boundary files"],
                            ["region partitions"],
                            "Predefined regions partition the spatial dimension "
                            "of the data.",
                        ),
                    ],
                ),
            ],
        ),
        (
            "Data Processing",
            [
                (
                    "Tensor Modeling",
                    [
                        (
                            2,
                            "Tensor Construction",
                            "Builds the data tensor from measurement records and "
                            "region partitions.",
                            ["measurement records", "region partitions"],
                            ["data tensor"],
                            "Measurements are organized into a tensor prior to "
                            "decomposition.",
                        ),
                        (
                            3,
                            "Piecewise Decomposition",
                            "Progressively partitions the tensor and decomposes "
                            "each piece; re-runs when the user refines a partition.",
                            ["data tensor", "partition choices"],
                            ["tensor pieces", "partition tree"],
                            "A piecewise approach decomposes the tensor "
                            "progressively, one partition at a time.",
                        ),
                        (
                            4,
                            "Rank-One Approximation",
                            "Fits a rank-one component to each tensor piece.",
                            ["tensor pieces"],
                            ["rank-one components"],
                            "Each piece is approximated by a rank-one tensor "
                            "capturing its dominant pattern.",
                        ),
                    ],
                ),
                (
                    "Pattern Analysis",
                    [
                        (
                            5,
                            "Residual Computation",
                            "Computes residuals between pieces and their rank-one "
                            "fits to expose unexplained structure.",
                            ["tensor pieces", "rank-one components"],
                            ["residuals"],
                            "Residuals quantify how much structure the current "
                            "approximation leaves unexplained.",
                        ),
                        (
                            6,
                            "Pattern Extraction",
                            "Extracts spatial and temporal patterns from "
                            "components and residuals for display.",
                            ["rank-one components", "residuals"],
                            ["extracted patterns"],
                            "Patterns extracted from the decomposition drive the "
                            "visual summaries.",
                        ),
                    ],
                ),
            ],
        ),
        (
            "Visualization",
            [
                (
                    "Geospatial",
                    [
                        (
                            7,
                            "Map 2D",
                            "Map of the study area showing spatial patterns per "
                            "partition.",
                            ["extracted patterns", "region partitions", "density overlay"],
                            ["map rendering"],
                            "Spatial factors are projected on a map of the "
                            "region of study.",
                        ),
                        (
                            8,
                            "Heatmap",
                            "Matrix-style density view of pattern intensity.",
                            ["extracted patterns", "region partitions"],
                            ["density overlay"],
                            "Heat maps encode the intensity of the extracted "
                            "patterns.",
                        ),
                    ],
                ),
                (
                    "Infovis",
                    [
                        (
                            9,
                            "Line Chart",
                            "Temporal factors of each piece as line series.",
                            ["extracted patterns", "rank-one components", "residuals"],
                            ["temporal factor view"],
                            "Temporal factors are drawn as line charts for "
                            "comparison across pieces.",
                        ),
                        (
                            10,
                            "Bar Chart",
                            "Attribute factors and residual magnitudes as bars.",
                            ["extracted patterns", "rank-one components", "residuals"],
                            ["attribute factor view"],
                            "Bar charts summarize factor weights along the "
                            "attribute dimension.",
                        ),
                        (
                            11,
                            "Provenance Tree",
                            "Tree view tracking the branching history of "
                            "partition decisions.",
                            ["partition tree", "extracted patterns"],
                            ["analysis provenance view"],
                            "A tree records the provenance of every partition "
                            "refinement made during analysis.",
                        ),
                        (
                            12,
                            "Pattern Glyphs",
                            "Compact glyphs summarizing each piece's pattern.",
                            ["extracted patterns", "residuals"],
                            ["pattern glyph view"],
                            "Glyphs give a compact summary of the pattern found "
                            "in each piece.",
                        ),
                    ],
                ),
            ],
        ),
        (
            "Interaction",
            [
                (
                    "Selection",
                    [
                        (
                            13,
                            "Brushing",
                            "Brush selection in any linked view; can trigger "
                            "re-decomposition of the brushed subset.",
                            ["temporal factor view", "attribute factor view", "map rendering", "density overlay"],
                            ["brushed subset"],
                            "Brushing any view selects a subset and can trigger "
                            "a new decomposition pass.",
                        ),
                        (
                            14,
                            "Tree Split",
                            "Splits a partition node to branch the analysis.",
                            ["analysis provenance view"],
                            ["partition choices"],
                            "Users split partitions in the tree to refine the "
                            "analysis hierarchically.",
                        ),
                    ],
                ),
                (
                    "Coordination",
                    [
                        (
                            15,
                            "Linking",
                            "Keeps every view synchronized with the active "
                            "selection and partition.",
                            ["brushed subset", "view states"],
                            ["synchronized views"],
                            "All views are linked and update together as the "
                            "analysis proceeds.",
                        ),
                        (
                            16,
                            "Superposition",
                            "Overlays factor series of several pieces for direct "
                            "comparison.",
                            ["temporal factor view", "attribute factor view", "pattern glyph view"],
                            ["superposed comparison view"],
                            "Superposition overlays patterns from multiple "
                            "pieces in one frame.",
                        ),
                        (
                            17,
                            "Juxtaposition",
                            "Places factor series of several pieces side by side.",
                            ["temporal factor view", "attribute factor view", "pattern glyph view"],
                            ["juxtaposed comparison view"],
                            "Juxtaposition places patterns side by side to "
                            "compare pieces.",
                        ),
                    ],
                ),
            ],
        ),
    ],
    data_edges=[
        (0, 2),
        (1, 2),
        (2, 3),
        (3, 4),
        (3, 5),
        (4, 5),
        (4, 6),
        (5, 6),
        (3, 6),
        (3, 7),
        (6, 7),
        (6, 8),
        (8, 7),
        (1, 7),
        (6, 9),
        (4, 9),
        (6, 10),
        (4, 10),
        (6, 12),
        (4, 12),
        (3, 11),
        (3, 12),
        (9, 13),
        (10, 13),
        (7, 13),
        (9, 16),
        (10, 16),
        (4, 16),
        (9, 17),
        (10, 17),
        (4, 17),
        (7, 15),
        (9, 15),
        (10, 15),
        (8, 15),
        (11, 14),
        (12, 16),
        (12, 17),
        (5, 9),
        (5, 12),
        (2, 4),
        (8, 13),
        (6, 11),
        (12, 15),
        (1, 8),
        (5, 10),
        (0, 3),
    ],
    interaction_edges=[
        (13, 3),
        (14, 3),
        (13, 15),
        (15, 7),
        (15, 9),
        (15, 10),
        (14, 11),
        (13, 16),
        (13, 17),
        (15, 8),
        (15, 12),
        (16, 10),
        (17, 10),
        (13, 8),
        (14, 6),
    ],
)


EXPECTED = {
    "taxivis": (TAXIVIS, 6, 12, 14, 3),
    "vaud": (VAUD, 8, 27, 37, 4),
    "tpflow": (TPFLOW, 7, 18, 47, 15),
}

VAUD_GRANULAR_DISTRIBUTION = {
    "Data Loading": 8,
    "Data Processing": 6,
    "Visualization": 8,
    "Interaction": 5,
}


def check(name: str) -> SystemBlueprint:
    bp, want_inter, want_gran, want_data, want_interaction = EXPECTED[name]
    report = validate(bp, "strict")
    assert report.valid, f"{name}: {report.to_wire()}"
    _, inter, gran = bp.block_counts()
    data, interaction = bp.edge_counts()
    assert (inter, gran, data, interaction) == (
        want_inter,
        want_gran,
        want_data,
        want_interaction,
    ), f"{name}: got {(inter, gran, data, interaction)}"
    if name == "vaud":
        per_high = {
            h.name: sum(len(i.granular_blocks) for i in h.intermediate_blocks)
            for h in bp.high_level_blocks
        }
        assert per_high == VAUD_GRANULAR_DISTRIBUTION, per_high
    return bp


def main() -> int:
    FIXTURES_DIR.mkdir(parents=True, exist_ok=True)
    for name in EXPECTED:
        bp = check(name)
        path = FIXTURES_DIR / f"{name}.json"
        path.write_text(serialize_blueprint(bp), encoding="utf-8")
        data, interaction = bp.edge_counts()
        print(f"{name}: wrote {path.name} ({data} data, {interaction} interaction edges)")

    g = build_graph(EXPECTED["tpflow"][0])
    dens = density(g, Level.GRANULAR)
    clust = clustering_coefficient(g, Level.GRANULAR)
    print(f"tpflow granular density {dens:.5f}, clustering {clust:.4f}")
    assert abs(dens - 62 / (18 * 17)) < 1e-12
    assert 0.4 <= clust <= 0.6, f"clustering {clust} strayed from the ~0.5 target"
    return 0


if __name__ == "__main__":
    sys.exit(main())
