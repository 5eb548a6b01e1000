"""Comparison of two annotation sets for the same papers.

Typically the reference side is a manual ground truth and the candidate
side an LLM extraction. Per pair we compare structural counts (edges,
intermediate blocks, granular blocks) and match granular blocks
one-to-one by normalized label; aggregation produces mean +/- sample
standard deviation columns plus a micro-averaged label match rate
(total matched over total reference blocks).

The matcher is greedy but label-local: blocks can only ever match equal
normalized labels, so within each label group the greedy pairing is as
large as any optimal assignment. Tie-breaks (same intermediate parent
first, then smallest ID) make the output deterministic and independent
of block order in either file.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Any

from .labels import SynonymTable, normalize_label
from .model import DependencyKind, GranularBlock, SystemBlueprint


class EmptyInputError(ValueError):
    pass


@dataclass(frozen=True)
class AnnotationPair:
    key: str
    reference: SystemBlueprint
    candidate: SystemBlueprint


@dataclass(frozen=True)
class MetricCells:
    reference: int
    candidate: int

    @property
    def absolute_difference(self) -> int:
        return abs(self.reference - self.candidate)

    def to_wire(self) -> dict[str, int]:
        return {
            "reference": self.reference,
            "candidate": self.candidate,
            "absolute_difference": self.absolute_difference,
        }


@dataclass(frozen=True)
class MatchStats:
    matched: int
    reference_total: int

    @property
    def rate(self) -> float | None:
        """Recall against the reference; None when there is nothing to match."""
        if self.reference_total == 0:
            return None
        return self.matched / self.reference_total

    def to_wire(self) -> dict[str, Any]:
        return {"matched": self.matched, "reference_total": self.reference_total, "rate": self.rate}


# metric names in Table-ordering; label/edge match stats ride alongside
METRICS = ("edges", "intermediate_blocks", "granular_blocks", "granular_distinct")


@dataclass(frozen=True)
class ComparisonRow:
    key: str
    edges: MetricCells
    intermediate_blocks: MetricCells
    granular_blocks: MetricCells
    granular_distinct: MetricCells
    label_match: MatchStats
    edge_match: MatchStats

    def metric(self, name: str) -> MetricCells:
        return getattr(self, name)

    def to_wire(self) -> dict[str, Any]:
        return {
            "key": self.key,
            **{name: self.metric(name).to_wire() for name in METRICS},
            "label_match": self.label_match.to_wire(),
            "edge_match": self.edge_match.to_wire(),
        }


@dataclass(frozen=True)
class AggregateCells:
    reference_mean: float
    reference_std: float
    candidate_mean: float
    candidate_std: float
    difference_mean: float
    difference_std: float
    degenerate_std: bool  # single-row aggregates report std 0 and set this flag

    def to_wire(self) -> dict[str, Any]:
        return {
            "reference_mean": self.reference_mean,
            "reference_std": self.reference_std,
            "candidate_mean": self.candidate_mean,
            "candidate_std": self.candidate_std,
            "difference_mean": self.difference_mean,
            "difference_std": self.difference_std,
            "degenerate_std": self.degenerate_std,
        }


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[ComparisonRow, ...]
    aggregates: dict[str, AggregateCells]
    label_match_micro: float | None
    label_match_macro: float | None

    def to_wire(self) -> dict[str, Any]:
        return {
            "rows": [r.to_wire() for r in self.rows],
            "aggregates": {name: cells.to_wire() for name, cells in self.aggregates.items()},
            "label_match_micro": self.label_match_micro,
            "label_match_macro": self.label_match_macro,
        }


def _indexed_blocks(
    bp: SystemBlueprint, table: SynonymTable | None
) -> list[tuple[GranularBlock, str, str]]:
    """(block, normalized label, normalized intermediate parent) triples."""
    out = []
    for _, inter, gran in bp.iter_granular():
        out.append((gran, normalize_label(gran.name, table), normalize_label(inter.name, table)))
    return out


def match_blocks(
    reference: SystemBlueprint,
    candidate: SystemBlueprint,
    table: SynonymTable | None = None,
) -> list[tuple[GranularBlock, GranularBlock | None]]:
    """One-to-one matching of granular blocks by normalized label.

    Each candidate block is used at most once. Within a label group,
    references are served in ID order; a reference prefers an unused
    candidate under the same (normalized) intermediate parent, then the
    unused candidate with the smallest ID. The resulting pair set does
    not depend on block ordering inside either blueprint.
    """
    ref_blocks = _indexed_blocks(reference, table)
    cand_blocks = _indexed_blocks(candidate, table)

    cands_by_label: dict[str, list[tuple[GranularBlock, str]]] = {}
    for block, label, parent in cand_blocks:
        cands_by_label.setdefault(label, []).append((block, parent))
    for group in cands_by_label.values():
        group.sort(key=lambda pair: pair[0].id)

    assigned: dict[int, GranularBlock] = {}
    used: set[int] = set()
    for label in sorted({lbl for _, lbl, _ in ref_blocks}):
        group_refs = sorted(
            ((block, parent) for block, lbl, parent in ref_blocks if lbl == label),
            key=lambda pair: pair[0].id,
        )
        group_cands = cands_by_label.get(label, [])
        # same-parent matches first
        for ref_block, ref_parent in group_refs:
            for cand_block, cand_parent in group_cands:
                if cand_block.id in used or cand_parent != ref_parent:
                    continue
                assigned[ref_block.id] = cand_block
                used.add(cand_block.id)
                break
        # remaining references take the smallest unused candidate ID
        for ref_block, _ in group_refs:
            if ref_block.id in assigned:
                continue
            for cand_block, _ in group_cands:
                if cand_block.id not in used:
                    assigned[ref_block.id] = cand_block
                    used.add(cand_block.id)
                    break
    return [(block, assigned.get(block.id)) for block, _, _ in ref_blocks]


def _matched_edges(
    reference: SystemBlueprint,
    candidate: SystemBlueprint,
    matches: list[tuple[GranularBlock, GranularBlock | None]],
) -> MatchStats:
    """Auxiliary edge agreement: an edge matches when both endpoints
    matched and the candidate carries the same-kind edge between them."""
    mapped = {ref.id: cand.id for ref, cand in matches if cand is not None}
    cand_edges: set[tuple[int, int, DependencyKind]] = set()
    for g in candidate.granular_blocks():
        cand_edges.update((g.id, t, DependencyKind.DATA) for t in g.feeds_into)
        cand_edges.update((g.id, t, DependencyKind.INTERACTION) for t in g.interacts_with)
    matched = 0
    total = 0
    for g in reference.granular_blocks():
        for kind, targets in (
            (DependencyKind.DATA, g.feeds_into),
            (DependencyKind.INTERACTION, g.interacts_with),
        ):
            for target in targets:
                total += 1
                if g.id in mapped and target in mapped:
                    if (mapped[g.id], mapped[target], kind) in cand_edges:
                        matched += 1
    return MatchStats(matched, total)


def compare_pair(pair: AnnotationPair, table: SynonymTable | None = None) -> ComparisonRow:
    """Structural count differences and label/edge match stats for one pair."""
    ref, cand = pair.reference, pair.candidate
    matches = match_blocks(ref, cand, table)
    matched = sum(1 for _, c in matches if c is not None)

    def distinct(bp: SystemBlueprint) -> int:
        return len({normalize_label(g.name, table) for g in bp.granular_blocks()})

    return ComparisonRow(
        key=pair.key,
        edges=MetricCells(sum(ref.edge_counts()), sum(cand.edge_counts())),
        intermediate_blocks=MetricCells(ref.block_counts()[1], cand.block_counts()[1]),
        granular_blocks=MetricCells(ref.block_counts()[2], cand.block_counts()[2]),
        granular_distinct=MetricCells(distinct(ref), distinct(cand)),
        label_match=MatchStats(matched, len(matches)),
        edge_match=_matched_edges(ref, cand, matches),
    )


def _mean_std(values: list[int]) -> tuple[float, float]:
    mean = statistics.fmean(values)
    std = statistics.stdev(values) if len(values) >= 2 else 0.0
    return mean, std


def aggregate_table(rows: list[ComparisonRow]) -> ComparisonTable:
    """Column means and sample standard deviations over all rows."""
    if not rows:
        raise EmptyInputError("aggregate_table needs at least one row")
    degenerate = len(rows) == 1
    aggregates: dict[str, AggregateCells] = {}
    for name in METRICS:
        cells = [row.metric(name) for row in rows]
        ref_mean, ref_std = _mean_std([c.reference for c in cells])
        cand_mean, cand_std = _mean_std([c.candidate for c in cells])
        diff_mean, diff_std = _mean_std([c.absolute_difference for c in cells])
        aggregates[name] = AggregateCells(
            ref_mean, ref_std, cand_mean, cand_std, diff_mean, diff_std, degenerate
        )
    matched_sum = sum(row.label_match.matched for row in rows)
    reference_sum = sum(row.label_match.reference_total for row in rows)
    micro = matched_sum / reference_sum if reference_sum else None
    rates = [row.label_match.rate for row in rows if row.label_match.rate is not None]
    macro = statistics.fmean(rates) if rates else None
    return ComparisonTable(tuple(rows), aggregates, micro, macro)
