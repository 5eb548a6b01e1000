"""Multi-level directed graph derived from a blueprint.

The granular level mirrors the blueprint's blocks and edges one-to-one.
The intermediate and high levels are rollups: an edge A -> B of kind k
with weight w exists iff w granular edges of kind k run from a
descendant of A to a descendant of B. Rollup self-loops (two blocks
under the same parent connected to each other) are kept and flagged so
frequency tables can exclude them.

Graphs are immutable after construction; every metric here is a pure
function of the graph.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from typing import Any

from .model import DependencyKind, SystemBlueprint
from .validation import ValidationReport, validate


class Level(Enum):
    HIGH = "high"
    INTERMEDIATE = "intermediate"
    GRANULAR = "granular"


LEVELS: tuple[Level, ...] = (Level.HIGH, Level.INTERMEDIATE, Level.GRANULAR)


class InvalidBlueprintError(ValueError):
    """Raised when an operation requires a Valid blueprint."""

    def __init__(self, report: ValidationReport):
        self.report = report
        codes = sorted(report.error_codes())
        super().__init__(f"blueprint is not valid: {codes}")


class NoSuchNodeError(KeyError):
    pass


class TooFewNodesError(ValueError):
    pass


@dataclass(frozen=True)
class BlockRef:
    """Identity of one node at one level.

    ``parent_chain`` holds ancestor names from the top down: empty for
    high-level nodes, (high,) for intermediate, (high, intermediate)
    for granular. ``granular_id`` is set only at the granular level.
    """

    level: Level
    name: str
    parent_chain: tuple[str, ...] = ()
    granular_id: int | None = None

    @property
    def path(self) -> str:
        return "/".join((*self.parent_chain, self.name))


@dataclass(frozen=True)
class TypedEdge:
    source: BlockRef
    target: BlockRef
    kind: DependencyKind
    weight: int = 1

    @property
    def is_self_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class MultiLevelGraph:
    origin: str
    nodes: dict[Level, tuple[BlockRef, ...]]
    edges: dict[Level, tuple[TypedEdge, ...]]


def build_graph(bp: SystemBlueprint) -> MultiLevelGraph:
    """Derive the three-level graph from a valid blueprint.

    Validity here is structural (lenient mode): vocabulary warnings do
    not block graph construction, dangling or conflicting edges do.
    """
    report = validate(bp, "lenient")
    if not report.valid:
        raise InvalidBlueprintError(report)

    high_nodes: list[BlockRef] = []
    inter_nodes: list[BlockRef] = []
    gran_nodes: list[BlockRef] = []
    gran_ref_by_id: dict[int, BlockRef] = {}
    inter_ref_by_id: dict[int, BlockRef] = {}
    high_ref_by_id: dict[int, BlockRef] = {}

    for high in bp.high_level_blocks:
        high_ref = BlockRef(Level.HIGH, high.name)
        high_nodes.append(high_ref)
        for inter in high.intermediate_blocks:
            inter_ref = BlockRef(Level.INTERMEDIATE, inter.name, (high.name,))
            inter_nodes.append(inter_ref)
            for gran in inter.granular_blocks:
                gran_ref = BlockRef(
                    Level.GRANULAR, gran.name, (high.name, inter.name), gran.id
                )
                gran_nodes.append(gran_ref)
                gran_ref_by_id[gran.id] = gran_ref
                inter_ref_by_id[gran.id] = inter_ref
                high_ref_by_id[gran.id] = high_ref

    gran_edges: list[TypedEdge] = []
    inter_weights: dict[tuple[BlockRef, BlockRef, DependencyKind], int] = {}
    high_weights: dict[tuple[BlockRef, BlockRef, DependencyKind], int] = {}

    for _, _, gran in bp.iter_granular():
        for kind, targets in (
            (DependencyKind.DATA, gran.feeds_into),
            (DependencyKind.INTERACTION, gran.interacts_with),
        ):
            for target in targets:
                gran_edges.append(
                    TypedEdge(gran_ref_by_id[gran.id], gran_ref_by_id[target], kind)
                )
                ikey = (inter_ref_by_id[gran.id], inter_ref_by_id[target], kind)
                inter_weights[ikey] = inter_weights.get(ikey, 0) + 1
                hkey = (high_ref_by_id[gran.id], high_ref_by_id[target], kind)
                high_weights[hkey] = high_weights.get(hkey, 0) + 1

    def _rolled(weights: dict[tuple[BlockRef, BlockRef, DependencyKind], int]) -> tuple[TypedEdge, ...]:
        return tuple(
            TypedEdge(src, dst, kind, weight) for (src, dst, kind), weight in weights.items()
        )

    return MultiLevelGraph(
        origin=bp.paper_title,
        nodes={
            Level.HIGH: tuple(high_nodes),
            Level.INTERMEDIATE: tuple(inter_nodes),
            Level.GRANULAR: tuple(gran_nodes),
        },
        edges={
            Level.HIGH: _rolled(high_weights),
            Level.INTERMEDIATE: _rolled(inter_weights),
            Level.GRANULAR: tuple(gran_edges),
        },
    )


@dataclass(frozen=True)
class Degree:
    in_degree: int
    out_degree: int

    @property
    def total(self) -> int:
        return self.in_degree + self.out_degree


def degree(g: MultiLevelGraph, level: Level, name: str) -> Degree:
    """Weighted in/out/total degree of the node(s) carrying ``name``.

    Both edge kinds count; at rolled-up levels each edge contributes its
    witness weight. When several nodes at the level share the name
    (possible for granular blocks), their degrees are summed.
    """
    named = {ref for ref in g.nodes[level] if ref.name == name}
    if not named:
        raise NoSuchNodeError(f"no node named {name!r} at level {level.value}")
    in_degree = sum(e.weight for e in g.edges[level] if e.target in named)
    out_degree = sum(e.weight for e in g.edges[level] if e.source in named)
    return Degree(in_degree, out_degree)


def density(g: MultiLevelGraph, level: Level) -> float:
    """Directed density m / (n * (n - 1)) at a level.

    m counts edges of both kinds (not weights); self-loops are excluded.
    """
    n = len(g.nodes[level])
    if n < 2:
        raise TooFewNodesError(f"density needs >= 2 nodes, level {level.value} has {n}")
    m = sum(1 for e in g.edges[level] if not e.is_self_loop)
    return m / (n * (n - 1))


def clustering_coefficient(g: MultiLevelGraph, level: Level) -> float:
    """Average local clustering over the undirected simple projection.

    The projection merges both edge kinds, drops direction, weights,
    self-loops, and parallels. Nodes of degree < 2 contribute 0; an
    empty graph scores 0.
    """
    nodes = g.nodes[level]
    if not nodes:
        return 0.0
    neighbors: dict[BlockRef, set[BlockRef]] = {ref: set() for ref in nodes}
    for e in g.edges[level]:
        if e.is_self_loop:
            continue
        neighbors[e.source].add(e.target)
        neighbors[e.target].add(e.source)
    total = 0.0
    for ref in nodes:
        hood = neighbors[ref]
        k = len(hood)
        if k < 2:
            continue
        links = sum(1 for a in hood for b in hood if a != b and b in neighbors[a]) // 2
        total += 2.0 * links / (k * (k - 1))
    return total / len(nodes)


def edge_kind_split(g: MultiLevelGraph, level: Level) -> tuple[int, int, float]:
    """(data, interaction, data_fraction) at a level, counting weights.

    Rollup weights sum witness granular edges, so the split at any level
    totals the same as the granular split. Fraction is 0 with no edges.
    """
    data = sum(e.weight for e in g.edges[level] if e.kind is DependencyKind.DATA)
    interaction = sum(e.weight for e in g.edges[level] if e.kind is DependencyKind.INTERACTION)
    total = data + interaction
    return data, interaction, (data / total if total else 0.0)


def graph_to_csv(g: MultiLevelGraph) -> str:
    """Edge list as CSV: source,target,kind,level,weight (all levels)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source", "target", "kind", "level", "weight"])
    for level in LEVELS:
        for e in g.edges[level]:
            writer.writerow([e.source.path, e.target.path, e.kind.value, level.value, e.weight])
    return buf.getvalue()


def _node_wire(ref: BlockRef) -> dict[str, Any]:
    wire: dict[str, Any] = {"name": ref.name, "parentChain": list(ref.parent_chain)}
    if ref.granular_id is not None:
        wire["id"] = ref.granular_id
    return wire


def _edge_wire(e: TypedEdge) -> dict[str, Any]:
    return {
        "source": _node_wire(e.source),
        "target": _node_wire(e.target),
        "kind": e.kind.value,
        "weight": e.weight,
        "selfLoop": e.is_self_loop,
    }


def graph_to_wire(g: MultiLevelGraph) -> dict[str, Any]:
    """JSON-ready dump of all three levels, consumed by the browser UI."""
    return {
        "origin": g.origin,
        "levels": {
            level.value: {
                "nodes": [_node_wire(ref) for ref in g.nodes[level]],
                "edges": [_edge_wire(e) for e in g.edges[level]],
            }
            for level in LEVELS
        },
    }


def level_from_name(name: str) -> Level:
    """Parse a level name as used on the CLI (high/intermediate/granular)."""
    for level in LEVELS:
        if level.value == name:
            return level
    raise ValueError(f"unknown level {name!r}, expected one of {[l.value for l in LEVELS]}")
