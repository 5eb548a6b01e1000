"""Core data model for multi-level system blueprints.

A blueprint describes one visual-analytics system as a three-level
hierarchy: high-level workflow stages contain intermediate functional
groupings, which contain granular operation blocks. Granular blocks
carry typed dependency edges (data vs. interaction) addressed by
blueprint-local integer IDs.

All types are immutable value objects; equality is field-for-field.
The wire format is one JSON object per blueprint with PascalCase key
names (``PaperTitle``, ``HighLevelBlocks``, ...); unknown keys survive
a parse/serialize round trip via the ``extra`` mapping on each node.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator

HIGH_LEVEL_CATEGORIES: tuple[str, ...] = (
    "Data Loading",
    "Data Processing",
    "Visualization",
    "Interaction",
)

YEAR_MIN = 1990
YEAR_MAX = 2100


class DependencyKind(Enum):
    """The two kinds of dependency edge.

    Data edges carry outputs of one block into another; interaction
    edges carry user-driven constraints or filters rather than raw data.
    """

    DATA = "data"
    INTERACTION = "interaction"


@dataclass(frozen=True)
class SystemMetadata:
    """Optional publication metadata attached to a blueprint."""

    year: int | None = None
    venue: str | None = None
    domain_tags: tuple[str, ...] = ()
    extra: dict[str, Any] = field(default_factory=dict)

    def to_wire(self) -> dict[str, Any]:
        wire: dict[str, Any] = {}
        if self.year is not None:
            wire["Year"] = self.year
        if self.venue is not None:
            wire["Venue"] = self.venue
        if self.domain_tags:
            wire["DomainTags"] = list(self.domain_tags)
        wire.update(self.extra)
        return wire


@dataclass(frozen=True)
class GranularBlock:
    """Atomic operation-level block.

    ``feeds_into`` lists IDs of downstream blocks reached by data
    dependencies; ``interacts_with`` lists IDs reached by interaction
    dependencies. An ID may appear in at most one of the two lists.
    """

    name: str
    id: int
    paper_description: str = ""
    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()
    reference_citation: str = ""
    feeds_into: tuple[int, ...] = ()
    interacts_with: tuple[int, ...] = ()
    properties: dict[str, str] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    def to_wire(self) -> dict[str, Any]:
        wire: dict[str, Any] = {
            "GranularBlockName": self.name,
            "ID": self.id,
            "PaperDescription": self.paper_description,
            "Inputs": list(self.inputs),
            "Outputs": list(self.outputs),
            "ReferenceCitation": self.reference_citation,
            "FeedsInto": list(self.feeds_into),
            "InteractsWith": list(self.interacts_with),
        }
        if self.properties:
            wire["Properties"] = dict(self.properties)
        wire.update(self.extra)
        return wire


@dataclass(frozen=True)
class IntermediateBlock:
    """Functional grouping within a high-level stage (e.g. Loader, Querying)."""

    name: str
    granular_blocks: tuple[GranularBlock, ...] = ()
    extra: dict[str, Any] = field(default_factory=dict)

    def to_wire(self) -> dict[str, Any]:
        wire: dict[str, Any] = {
            "IntermediateBlockName": self.name,
            "GranularBlocks": [g.to_wire() for g in self.granular_blocks],
        }
        wire.update(self.extra)
        return wire


@dataclass(frozen=True)
class HighLevelBlock:
    """Major workflow stage; in strict mode the name must come from
    HIGH_LEVEL_CATEGORIES."""

    name: str
    intermediate_blocks: tuple[IntermediateBlock, ...] = ()
    extra: dict[str, Any] = field(default_factory=dict)

    def to_wire(self) -> dict[str, Any]:
        wire: dict[str, Any] = {
            "HighLevelBlockName": self.name,
            "IntermediateBlocks": [b.to_wire() for b in self.intermediate_blocks],
        }
        wire.update(self.extra)
        return wire


@dataclass(frozen=True)
class SystemBlueprint:
    """One system's full hierarchical description: the unit of storage
    and exchange."""

    paper_title: str
    high_level_blocks: tuple[HighLevelBlock, ...] = ()
    metadata: SystemMetadata | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_wire(self) -> dict[str, Any]:
        wire: dict[str, Any] = {"PaperTitle": self.paper_title}
        if self.metadata is not None:
            wire["Metadata"] = self.metadata.to_wire()
        wire["HighLevelBlocks"] = [b.to_wire() for b in self.high_level_blocks]
        wire.update(self.extra)
        return wire

    def iter_granular(
        self,
    ) -> Iterator[tuple[HighLevelBlock, IntermediateBlock, GranularBlock]]:
        """Yield (high, intermediate, granular) triples in document order."""
        for high in self.high_level_blocks:
            for inter in high.intermediate_blocks:
                for gran in inter.granular_blocks:
                    yield high, inter, gran

    def granular_blocks(self) -> list[GranularBlock]:
        return [g for _, _, g in self.iter_granular()]

    def granular_by_id(self) -> dict[int, GranularBlock]:
        return {g.id: g for g in self.granular_blocks()}

    def block_counts(self) -> tuple[int, int, int]:
        """(high, intermediate, granular) block counts."""
        high = len(self.high_level_blocks)
        inter = sum(len(h.intermediate_blocks) for h in self.high_level_blocks)
        gran = sum(1 for _ in self.iter_granular())
        return high, inter, gran

    def edge_counts(self) -> tuple[int, int]:
        """(data, interaction) edge counts at the granular level."""
        data = sum(len(g.feeds_into) for g in self.granular_blocks())
        interaction = sum(len(g.interacts_with) for g in self.granular_blocks())
        return data, interaction


def serialize_blueprint(bp: SystemBlueprint, canonical: bool = True) -> str:
    """Serialize a blueprint to its JSON wire format.

    Canonical output is deterministic: fixed key order (schema order,
    then extras in insertion order), 2-space indentation, UTF-8 text
    with names preserved exactly, and a trailing newline. It satisfies
    parse(serialize(bp)) == bp for every valid blueprint.
    """
    wire = bp.to_wire()
    if canonical:
        return json.dumps(wire, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(wire, separators=(",", ":"), ensure_ascii=False)
