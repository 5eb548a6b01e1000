"""Random valid-blueprint generators for property and bulk tests.

``random_blueprint`` is a plain seeded generator (fast, deterministic)
used for the large acceptance sweeps; ``blueprints()`` wraps it as a
hypothesis strategy by drawing the seed.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from blueprintkit.model import (
    HIGH_LEVEL_CATEGORIES,
    GranularBlock,
    HighLevelBlock,
    IntermediateBlock,
    SystemBlueprint,
    SystemMetadata,
)

INTERMEDIATE_NAMES = [
    "Loader",
    "Querying",
    "Clustering",
    "Geospatial",
    "Infovis",
    "Filter",
    "Annotation",
    "Integration",
    "Extraction",
]

GRANULAR_NAMES = [
    "Map 2D",
    "Heatmap",
    "Line Chart",
    "Bar Chart",
    "Scatter Plot",
    "Histogram",
    "Area Selection",
    "Temporal Selection",
    "Brushing",
    "Grouping",
    "k-Means Clustering",
    "Trajectory Data",
    "POI Data",
    "Atomic Query",
    "3D Scene",
    "Parallel Coordinates",
    "Überlagerung 3D",
    "трафик данных",
    "轨迹数据",
]

WORDS = ["select", "query", "grid", "flow", "trip", "zone", "index", "layer"]


def random_blueprint(
    rng: random.Random, max_granular: int = 20, edge_bias: float = 0.8
) -> SystemBlueprint:
    """A structurally valid blueprint: unique IDs, resolvable edges, no
    self-edges, disjoint edge kinds, vocabulary high-level names."""
    high_names = rng.sample(HIGH_LEVEL_CATEGORIES, rng.randint(1, 4))
    total = rng.randint(1, max_granular)
    ids = list(range(total))
    rng.shuffle(ids)

    # carve the granular blocks into intermediates, then into stages
    slots: list[list[int]] = []
    remaining = list(ids)
    while remaining:
        take = rng.randint(1, min(4, len(remaining)))
        slots.append(remaining[:take])
        remaining = remaining[take:]

    per_high: list[list[list[int]]] = [[] for _ in high_names]
    for slot in slots:
        per_high[rng.randrange(len(high_names))].append(slot)

    # random edges over distinct ordered pairs, one kind per pair
    pairs = [(a, b) for a in ids for b in ids if a != b]
    rng.shuffle(pairs)
    edge_count = rng.randint(0, min(len(pairs), total * 2))
    feeds: dict[int, list[int]] = {}
    interacts: dict[int, list[int]] = {}
    for a, b in pairs[:edge_count]:
        target = feeds if rng.random() < edge_bias else interacts
        target.setdefault(a, []).append(b)

    def gran(block_id: int) -> GranularBlock:
        return GranularBlock(
            name=rng.choice(GRANULAR_NAMES),
            id=block_id,
            paper_description=f"{rng.choice(WORDS)} {rng.choice(WORDS)}",
            inputs=(rng.choice(WORDS),),
            outputs=(rng.choice(WORDS),),
            reference_citation=f"as described for {rng.choice(WORDS)}",
            feeds_into=tuple(feeds.get(block_id, ())),
            interacts_with=tuple(interacts.get(block_id, ())),
        )

    highs = []
    for name, inter_slots in zip(high_names, per_high):
        inters = tuple(
            IntermediateBlock(
                name=f"{rng.choice(INTERMEDIATE_NAMES)} {i}",
                granular_blocks=tuple(gran(block_id) for block_id in slot),
            )
            for i, slot in enumerate(inter_slots)
        )
        highs.append(HighLevelBlock(name, inters))

    metadata = None
    if rng.random() < 0.7:
        metadata = SystemMetadata(
            year=rng.randint(2005, 2025) if rng.random() < 0.8 else None,
            venue=rng.choice(["IEEE TVCG", "EuroVis", None]),
        )
    return SystemBlueprint(
        paper_title=f"System {rng.randrange(10 ** 6)}",
        high_level_blocks=tuple(highs),
        metadata=metadata,
    )


def blueprints(max_granular: int = 12) -> st.SearchStrategy[SystemBlueprint]:
    return st.integers(0, 2**32 - 1).map(
        lambda seed: random_blueprint(random.Random(seed), max_granular)
    )
