"""Corpus-level statistics over a directory of blueprints.

Aggregates many systems into summary counts, name/edge frequency
tables, a degree-centrality ranking, and yearly trend series. Every
aggregation is a deterministic fold: the outputs do not depend on the
order blueprints are supplied in, and frequency tables carry a total
order (count descending, then key ascending).

Blueprint files are one ``*.json`` per system; ``*.extraction.json``
companions hold extraction provenance and are never loaded as corpus
members.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .graph import Level, build_graph
from .labels import SynonymTable, normalize_label
from .model import SystemBlueprint
from .validation import IO_ERROR, Issue, ValidationReport, parse_blueprint


class CorpusIOError(OSError):
    """The corpus directory itself cannot be read."""


class EmptyCorpusError(ValueError):
    """An aggregation was asked for zero blueprints."""


class NoDatedSystemsError(ValueError):
    """Trend analysis needs at least one system with a metadata year."""


RECORD_SUFFIX = ".extraction.json"


def load_corpus(
    dir_path: str | Path, mode: str = "lenient"
) -> tuple[list[SystemBlueprint], list[tuple[str, ValidationReport]]]:
    """Load every blueprint ``*.json`` under a directory.

    Files are visited in lexicographic name order. Invalid or unreadable
    files never abort the batch: they come back as (filename, report)
    pairs. Extraction-record companions (``*.extraction.json``) are
    skipped entirely.
    """
    root = Path(dir_path)
    try:
        entries = sorted(p for p in root.iterdir() if p.is_file())
    except OSError as exc:
        raise CorpusIOError(f"cannot read corpus directory {root}: {exc}") from exc

    blueprints: list[SystemBlueprint] = []
    failures: list[tuple[str, ValidationReport]] = []
    for path in entries:
        if path.suffix != ".json" or path.name.endswith(RECORD_SUFFIX):
            continue
        try:
            raw = path.read_bytes()
        except OSError as exc:
            failures.append(
                (path.name, ValidationReport(errors=(Issue(IO_ERROR, "", str(exc)),)))
            )
            continue
        bp, report = parse_blueprint(raw, mode)
        if bp is None:
            failures.append((path.name, report))
        else:
            blueprints.append(bp)
    return blueprints, failures


@dataclass(frozen=True)
class PerSystemCounts:
    paper_title: str
    high: int
    intermediate: int
    granular: int
    data_edges: int
    interaction_edges: int

    @property
    def edges(self) -> int:
        return self.data_edges + self.interaction_edges

    def to_wire(self) -> dict[str, Any]:
        return {
            "paper_title": self.paper_title,
            "high": self.high,
            "intermediate": self.intermediate,
            "granular": self.granular,
            "data_edges": self.data_edges,
            "interaction_edges": self.interaction_edges,
        }


@dataclass(frozen=True)
class CorpusSummary:
    system_count: int
    block_totals: tuple[int, int, int]  # (high, intermediate, granular)
    edge_total: int
    edge_kind_fractions: tuple[float, float]  # (data, interaction)
    per_system: tuple[PerSystemCounts, ...]
    mean_blocks: tuple[float, float, float]  # per level, per system
    mean_edges: float
    min_edges: int
    max_edges: int

    def to_wire(self) -> dict[str, Any]:
        return {
            "system_count": self.system_count,
            "block_totals": {
                "high": self.block_totals[0],
                "intermediate": self.block_totals[1],
                "granular": self.block_totals[2],
            },
            "edge_total": self.edge_total,
            "edge_kind_fractions": {
                "data": self.edge_kind_fractions[0],
                "interaction": self.edge_kind_fractions[1],
            },
            "mean_blocks": {
                "high": self.mean_blocks[0],
                "intermediate": self.mean_blocks[1],
                "granular": self.mean_blocks[2],
            },
            "mean_edges": self.mean_edges,
            "min_edges": self.min_edges,
            "max_edges": self.max_edges,
            "per_system": [row.to_wire() for row in self.per_system],
        }


def summarize(corpus: list[SystemBlueprint]) -> CorpusSummary:
    """Exact totals, per-level means, and min/max edge ranges."""
    if not corpus:
        raise EmptyCorpusError("summarize needs at least one blueprint")
    rows = []
    for bp in corpus:
        high, inter, gran = bp.block_counts()
        data, interaction = bp.edge_counts()
        rows.append(PerSystemCounts(bp.paper_title, high, inter, gran, data, interaction))
    n = len(rows)
    data_total = sum(r.data_edges for r in rows)
    interaction_total = sum(r.interaction_edges for r in rows)
    edge_total = data_total + interaction_total
    fractions = (
        (data_total / edge_total, interaction_total / edge_total) if edge_total else (0.0, 0.0)
    )
    return CorpusSummary(
        system_count=n,
        block_totals=(
            sum(r.high for r in rows),
            sum(r.intermediate for r in rows),
            sum(r.granular for r in rows),
        ),
        edge_total=edge_total,
        edge_kind_fractions=fractions,
        per_system=tuple(rows),
        mean_blocks=(
            sum(r.high for r in rows) / n,
            sum(r.intermediate for r in rows) / n,
            sum(r.granular for r in rows) / n,
        ),
        mean_edges=edge_total / n,
        min_edges=min(r.edges for r in rows),
        max_edges=max(r.edges for r in rows),
    )


FrequencyKey = Any  # str for block names, (str, str) for edge patterns


@dataclass(frozen=True)
class FrequencyEntry:
    key: FrequencyKey
    count: int
    system_fraction: float

    def to_wire(self) -> dict[str, Any]:
        key: Any = self.key
        if isinstance(key, tuple):
            key = {"source": key[0], "target": key[1]}
        return {"key": key, "count": self.count, "system_fraction": self.system_fraction}


@dataclass(frozen=True)
class FrequencyTable:
    entries: tuple[FrequencyEntry, ...]

    def to_wire(self) -> list[dict[str, Any]]:
        return [e.to_wire() for e in self.entries]


def _sorted_table(
    counts: dict[FrequencyKey, int], containing: dict[FrequencyKey, int], n_systems: int
) -> FrequencyTable:
    entries = [
        FrequencyEntry(key, count, containing.get(key, 0) / n_systems)
        for key, count in counts.items()
    ]
    entries.sort(key=lambda e: (-e.count, e.key))
    return FrequencyTable(tuple(entries))


def _level_names(bp: SystemBlueprint, level: Level) -> list[str]:
    if level is Level.HIGH:
        return [h.name for h in bp.high_level_blocks]
    if level is Level.INTERMEDIATE:
        return [i.name for h in bp.high_level_blocks for i in h.intermediate_blocks]
    return [g.name for g in bp.granular_blocks()]


def block_frequencies(
    corpus: list[SystemBlueprint], level: Level, table: SynonymTable | None = None
) -> FrequencyTable:
    """Occurrence counts and system prevalence of normalized block names.

    ``count`` is corpus-wide occurrences; ``system_fraction`` is the
    share of systems containing the name at least once.
    """
    if not corpus:
        raise EmptyCorpusError("block_frequencies needs at least one blueprint")
    counts: dict[str, int] = {}
    containing: dict[str, int] = {}
    for bp in corpus:
        names = [normalize_label(name, table) for name in _level_names(bp, level)]
        for name in names:
            counts[name] = counts.get(name, 0) + 1
        for name in set(names):
            containing[name] = containing.get(name, 0) + 1
    return _sorted_table(counts, containing, len(corpus))


def edge_pattern_frequencies(
    corpus: list[SystemBlueprint],
    level: Level,
    exclude_self_loops: bool = True,
    table: SynonymTable | None = None,
) -> FrequencyTable:
    """Most frequent (source -> target) dependency patterns at a level.

    Kinds are merged and rollup weights are summed, so a pattern's count
    is the number of witnessing granular edges across the whole corpus.
    """
    if not corpus:
        raise EmptyCorpusError("edge_pattern_frequencies needs at least one blueprint")
    counts: dict[tuple[str, str], int] = {}
    containing: dict[tuple[str, str], int] = {}
    for bp in corpus:
        g = build_graph(bp)
        seen: set[tuple[str, str]] = set()
        for e in g.edges[level]:
            if exclude_self_loops and e.is_self_loop:
                continue
            key = (normalize_label(e.source.name, table), normalize_label(e.target.name, table))
            counts[key] = counts.get(key, 0) + e.weight
            seen.add(key)
        for key in seen:
            containing[key] = containing.get(key, 0) + 1
    return _sorted_table(counts, containing, len(corpus))


def centrality_ranking(
    corpus: list[SystemBlueprint], level: Level, table: SynonymTable | None = None
) -> FrequencyTable:
    """Total degree (in + out, weighted) per normalized name, summed
    across all systems. Isolated blocks rank last with count 0."""
    if not corpus:
        raise EmptyCorpusError("centrality_ranking needs at least one blueprint")
    totals: dict[str, int] = {}
    containing: dict[str, int] = {}
    for bp in corpus:
        g = build_graph(bp)
        per_name: dict[str, int] = {}
        for ref in g.nodes[level]:
            per_name.setdefault(normalize_label(ref.name, table), 0)
        for e in g.edges[level]:
            per_name[normalize_label(e.source.name, table)] += e.weight
            per_name[normalize_label(e.target.name, table)] += e.weight
        for name, total in per_name.items():
            totals[name] = totals.get(name, 0) + total
            containing[name] = containing.get(name, 0) + 1
    return _sorted_table(totals, containing, len(corpus))


@dataclass(frozen=True)
class TrendPoint:
    year: int
    mean_blocks_total: float
    mean_blocks_granular: float
    mean_edges: float
    edge_to_node_ratio: float
    system_count: int

    def to_wire(self) -> dict[str, Any]:
        return {
            "year": self.year,
            "mean_blocks": self.mean_blocks_total,
            "mean_granular": self.mean_blocks_granular,
            "mean_edges": self.mean_edges,
            "ratio": self.edge_to_node_ratio,
            "n": self.system_count,
        }


@dataclass(frozen=True)
class TrendSeries:
    points: tuple[TrendPoint, ...]
    skipped_undated: int

    def to_wire(self) -> dict[str, Any]:
        return {
            "points": [p.to_wire() for p in self.points],
            "skipped_undated": self.skipped_undated,
        }


def temporal_trends(corpus: list[SystemBlueprint]) -> TrendSeries:
    """Yearly means of block and edge counts.

    The ratio divides mean edges by mean blocks across all three levels.
    Systems without a metadata year are excluded and tallied.
    """
    if not corpus:
        raise EmptyCorpusError("temporal_trends needs at least one blueprint")
    by_year: dict[int, list[SystemBlueprint]] = {}
    skipped = 0
    for bp in corpus:
        year = bp.metadata.year if bp.metadata else None
        if year is None:
            skipped += 1
        else:
            by_year.setdefault(year, []).append(bp)
    if not by_year:
        raise NoDatedSystemsError("no blueprint carries a metadata year")
    points = []
    for year in sorted(by_year):
        group = by_year[year]
        n = len(group)
        blocks_total = sum(sum(bp.block_counts()) for bp in group) / n
        granular = sum(bp.block_counts()[2] for bp in group) / n
        edges = sum(sum(bp.edge_counts()) for bp in group) / n
        ratio = edges / blocks_total if blocks_total else 0.0
        points.append(TrendPoint(year, blocks_total, granular, edges, ratio, n))
    return TrendSeries(tuple(points), skipped)
