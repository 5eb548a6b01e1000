#!/usr/bin/env python3
"""Print a full analytics report for a blueprint corpus.

Usage: python scripts/corpus_report.py [CORPUS_DIR]

Without an argument it reports on the shipped fixtures: per-system
summary, per-level prevalence tables, top dependency patterns, degree
centrality, per-system topology (density, clustering), and the yearly
trend series.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from blueprintkit.corpus import (
    block_frequencies,
    centrality_ranking,
    edge_pattern_frequencies,
    load_corpus,
    summarize,
    temporal_trends,
)
from blueprintkit.fixtures import fixtures_dir
from blueprintkit.graph import Level, build_graph, clustering_coefficient, density
from blueprintkit.labels import SynonymTable


def section(title: str) -> None:
    print(f"\n== {title} ==")


def main() -> int:
    root = Path(sys.argv[1]) if len(sys.argv) > 1 else fixtures_dir()
    blueprints, failures = load_corpus(root)
    for name, report in failures:
        print(f"skipped {name}: {sorted(report.error_codes())}", file=sys.stderr)
    if not blueprints:
        print(f"no blueprints in {root}", file=sys.stderr)
        return 2
    synonyms = SynonymTable.default()

    summary = summarize(blueprints)
    section(f"corpus of {summary.system_count} systems ({root})")
    high, inter, gran = summary.block_totals
    print(f"blocks: {high} high / {inter} intermediate / {gran} granular")
    data_fraction, interaction_fraction = summary.edge_kind_fractions
    print(
        f"edges: {summary.edge_total} total, "
        f"{data_fraction:.1%} data / {interaction_fraction:.1%} interaction"
    )
    print(
        f"per system: {summary.mean_blocks[2]:.1f} granular blocks, "
        f"{summary.mean_edges:.1f} edges (range {summary.min_edges}-{summary.max_edges})"
    )

    section("per-system topology")
    for bp in blueprints:
        g = build_graph(bp)
        n = len(g.nodes[Level.GRANULAR])
        dens = density(g, Level.GRANULAR) if n >= 2 else float("nan")
        clust = clustering_coefficient(g, Level.GRANULAR)
        print(f"  {bp.paper_title[:60]:60s} n={n:3d} density={dens:.3f} clustering={clust:.3f}")

    section("intermediate-block prevalence")
    for entry in block_frequencies(blueprints, Level.INTERMEDIATE, synonyms).entries[:8]:
        print(f"  {entry.key:24s} count={entry.count:3d} in {entry.system_fraction:.0%} of systems")

    section("top dependency patterns (high level)")
    for entry in edge_pattern_frequencies(blueprints, Level.HIGH, True, synonyms).entries[:6]:
        src, dst = entry.key
        print(f"  {src} -> {dst}: {entry.count}")

    section("granular centrality (total degree)")
    for entry in centrality_ranking(blueprints, Level.GRANULAR, synonyms).entries[:8]:
        print(f"  {entry.key:24s} degree={entry.count}")

    try:
        series = temporal_trends(blueprints)
    except Exception:
        section("trends: no dated systems")
        return 0
    section("yearly trends")
    for p in series.points:
        print(
            f"  {p.year}: blocks={p.mean_blocks_total:.1f} granular={p.mean_blocks_granular:.1f} "
            f"edges={p.mean_edges:.1f} ratio={p.edge_to_node_ratio:.2f} (n={p.system_count})"
        )
    if series.skipped_undated:
        print(f"  ({series.skipped_undated} undated systems skipped)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
