"""Command-line entry points.

Subcommands: validate, stats, compare, extract, serve. Exit codes form
a single contract across all of them: 0 success, 1 validation failure,
2 IO/config/transport trouble, 3 extraction exhausted without a valid
result.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import corpus as corpus_ops
from .compare import AnnotationPair, ComparisonTable, aggregate_table, compare_pair
from .extract import (
    ExtractionTransportError,
    PromptSpec,
    examples_from_dir,
    record_path_for,
    run_extraction,
    save_record,
)
from .graph import level_from_name
from .labels import SynonymTable
from .model import serialize_blueprint
from .server import serve
from .transport import TransportConfig, TransportError
from .validation import parse_blueprint

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_EXHAUSTED = 3


def _load_synonyms(path: str | None) -> SynonymTable:
    if path is None:
        return SynonymTable.default()
    return SynonymTable.load(path)


def _render_table(headers: list[str], rows: list[list[Any]]) -> str:
    cells = [headers] + [[str(v) for v in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = []
    for r, row in enumerate(cells):
        lines.append("  ".join(val.ljust(widths[i]) for i, val in enumerate(row)).rstrip())
        if r == 0:
            lines.append("  ".join("-" * widths[i] for i in range(len(headers))))
    return "\n".join(lines) + "\n"


def _render_csv(headers: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(headers: list[str], rows: list[list[Any]], wire: Any, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(wire, indent=2, ensure_ascii=False))
    elif fmt == "csv":
        sys.stdout.write(_render_csv(headers, rows))
    else:
        sys.stdout.write(_render_table(headers, rows))


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def _pattern_key(key: Any) -> str:
    if isinstance(key, tuple):
        return f"{key[0]} -> {key[1]}"
    return str(key)


# ----------------------------------------------------------------- validate


def cmd_validate(paths: Sequence[str], mode: str) -> int:
    status = EXIT_OK
    for path in paths:
        try:
            raw = Path(path).read_bytes()
        except OSError as exc:
            print(f"error: cannot read {path}: {exc}", file=sys.stderr)
            status = EXIT_IO
            continue
        _, report = parse_blueprint(raw, mode)
        print(f"{path}: {report.status}")
        for issue in report.errors:
            print(f"  ERROR {issue.code} {issue.path or '/'} {issue.message}")
        for issue in report.warnings:
            print(f"  WARN  {issue.code} {issue.path or '/'} {issue.message}")
        if not report.valid and status == EXIT_OK:
            status = EXIT_INVALID
    return status


# -------------------------------------------------------------------- stats


def cmd_stats(
    dir_path: str,
    metric: str,
    fmt: str,
    mode: str,
    level_name: str | None,
    synonyms_path: str | None,
    include_self_loops: bool,
) -> int:
    table = _load_synonyms(synonyms_path)
    try:
        blueprints, failures = corpus_ops.load_corpus(dir_path, mode)
    except corpus_ops.CorpusIOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    for name, report in failures:
        codes = ",".join(sorted(report.error_codes()))
        print(f"skipped {name}: {codes}", file=sys.stderr)
    if not blueprints:
        print("error: corpus is empty", file=sys.stderr)
        return EXIT_IO

    if metric == "summary":
        summary = corpus_ops.summarize(blueprints)
        headers = ["system", "high", "intermediate", "granular", "data_edges", "interaction_edges"]
        rows: list[list[Any]] = [
            [r.paper_title, r.high, r.intermediate, r.granular, r.data_edges, r.interaction_edges]
            for r in summary.per_system
        ]
        rows.append(
            [
                f"TOTAL ({summary.system_count} systems)",
                summary.block_totals[0],
                summary.block_totals[1],
                summary.block_totals[2],
                sum(r.data_edges for r in summary.per_system),
                sum(r.interaction_edges for r in summary.per_system),
            ]
        )
        _emit(headers, rows, summary.to_wire(), fmt)
        return EXIT_OK

    if metric in ("block-freq", "centrality", "edge-patterns"):
        default_level = {"block-freq": "intermediate", "centrality": "granular"}.get(metric, "high")
        level = level_from_name(level_name or default_level)
        if metric == "block-freq":
            freq = corpus_ops.block_frequencies(blueprints, level, table)
        elif metric == "centrality":
            freq = corpus_ops.centrality_ranking(blueprints, level, table)
        else:
            freq = corpus_ops.edge_pattern_frequencies(
                blueprints, level, not include_self_loops, table
            )
        headers = ["key", "count", "system_fraction"]
        rows = [[_pattern_key(e.key), e.count, _fmt(e.system_fraction)] for e in freq.entries]
        _emit(headers, rows, freq.to_wire(), fmt)
        return EXIT_OK

    if metric == "trends":
        try:
            series = corpus_ops.temporal_trends(blueprints)
        except corpus_ops.NoDatedSystemsError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        headers = ["year", "mean_blocks", "mean_granular", "mean_edges", "ratio", "n"]
        rows = [
            [
                p.year,
                _fmt(p.mean_blocks_total),
                _fmt(p.mean_blocks_granular),
                _fmt(p.mean_edges),
                _fmt(p.edge_to_node_ratio),
                p.system_count,
            ]
            for p in series.points
        ]
        if series.skipped_undated:
            print(f"skipped {series.skipped_undated} systems without a year", file=sys.stderr)
        _emit(headers, rows, series.to_wire(), fmt)
        return EXIT_OK

    print(f"error: unknown metric {metric!r}", file=sys.stderr)
    return EXIT_IO


# ------------------------------------------------------------------ compare


def _comparison_rows(table: ComparisonTable) -> tuple[list[str], list[list[Any]]]:
    headers = ["metric", "reference", "llm", "difference"]
    rows: list[list[Any]] = []
    names = {
        "edges": "Edges",
        "intermediate_blocks": "Intermediate blocks",
        "granular_blocks": "Granular blocks",
        "granular_distinct": "Distinct granular names",
    }
    for name, label in names.items():
        agg = table.aggregates[name]
        rows.append(
            [
                label,
                f"{agg.reference_mean:.2f} ± {agg.reference_std:.2f}",
                f"{agg.candidate_mean:.2f} ± {agg.candidate_std:.2f}",
                f"{agg.difference_mean:.2f} ± {agg.difference_std:.2f}",
            ]
        )
    micro = "n/a" if table.label_match_micro is None else _fmt(table.label_match_micro)
    macro = "n/a" if table.label_match_macro is None else _fmt(table.label_match_macro)
    rows.append(["Label match (micro)", micro, "", ""])
    rows.append(["Label match (macro)", macro, "", ""])
    return headers, rows


def cmd_compare(manual_dir: str, llm_dir: str, fmt: str, mode: str, synonyms_path: str | None) -> int:
    table = _load_synonyms(synonyms_path)
    manual_root, llm_root = Path(manual_dir), Path(llm_dir)
    if not manual_root.is_dir() or not llm_root.is_dir():
        print("error: both comparison directories must exist", file=sys.stderr)
        return EXIT_IO

    def blueprint_files(root: Path) -> dict[str, Path]:
        return {
            p.name: p
            for p in root.glob("*.json")
            if not p.name.endswith(corpus_ops.RECORD_SUFFIX)
        }

    manual_files = blueprint_files(manual_root)
    llm_files = blueprint_files(llm_root)
    for name in sorted(set(manual_files) ^ set(llm_files)):
        side = "manual" if name in manual_files else "llm"
        print(f"unpaired ({side} only): {name}", file=sys.stderr)

    rows = []
    for name in sorted(set(manual_files) & set(llm_files)):
        ref, ref_report = parse_blueprint(manual_files[name].read_bytes(), mode)
        cand, cand_report = parse_blueprint(llm_files[name].read_bytes(), mode)
        if ref is None or cand is None:
            bad = ref_report if ref is None else cand_report
            print(f"skipped {name}: {','.join(sorted(bad.error_codes()))}", file=sys.stderr)
            continue
        rows.append(compare_pair(AnnotationPair(Path(name).stem, ref, cand), table))
    if not rows:
        print("error: no comparable pairs found", file=sys.stderr)
        return EXIT_IO
    result = aggregate_table(rows)
    headers, display = _comparison_rows(result)
    _emit(headers, display, result.to_wire(), fmt)
    return EXIT_OK


# ------------------------------------------------------------------ extract


def cmd_extract(
    paper_path: str,
    transport_path: str,
    examples_dir: str | None,
    out_path: str | None,
    max_refinements: int,
    mode: str,
) -> int:
    try:
        paper_text = Path(paper_path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read paper text: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        cfg = TransportConfig.load(transport_path)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: cannot load transport config: {exc}", file=sys.stderr)
        return EXIT_IO
    examples = ()
    if examples_dir:
        try:
            examples = examples_from_dir(examples_dir)
        except OSError as exc:
            print(f"error: cannot read examples: {exc}", file=sys.stderr)
            return EXIT_IO
    spec = PromptSpec(paper_text=paper_text, few_shot_examples=examples)
    out = Path(out_path) if out_path else Path(paper_path).with_suffix(".json")
    try:
        record = run_extraction(spec, cfg, max_refinements=max_refinements, mode=mode)
    except ExtractionTransportError as exc:
        save_record(exc.record, record_path_for(out))
        print(f"error: transport failed: {exc}", file=sys.stderr)
        return EXIT_IO
    except TransportError as exc:
        print(f"error: transport unavailable: {exc}", file=sys.stderr)
        return EXIT_IO
    save_record(record, record_path_for(out))
    if record.blueprint is None:
        print(
            f"extraction exhausted after {len(record.attempts)} attempts; "
            f"record written to {record_path_for(out)}",
            file=sys.stderr,
        )
        return EXIT_EXHAUSTED
    out.write_text(serialize_blueprint(record.blueprint), encoding="utf-8")
    print(f"wrote {out} and {record_path_for(out)} (refinements: {record.refinement_count})")
    return EXIT_OK


# -------------------------------------------------------------------- serve


def cmd_serve(
    root_dir: str,
    port: int,
    read_only: bool,
    mode: str,
    synonyms_path: str | None,
    transport_path: str | None,
) -> int:
    transport_cfg = None
    if transport_path:
        try:
            transport_cfg = TransportConfig.load(transport_path)
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            print(f"error: cannot load transport config: {exc}", file=sys.stderr)
            return EXIT_IO
    if not Path(root_dir).is_dir():
        print(f"error: {root_dir} is not a directory", file=sys.stderr)
        return EXIT_IO
    serve(
        root_dir,
        port=port,
        read_only=read_only,
        mode=mode,
        synonyms=_load_synonyms(synonyms_path),
        transport_cfg=transport_cfg,
    )
    return EXIT_OK


# --------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blueprintkit",
        description="Validate, analyze, compare, extract, and serve system blueprints.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate blueprint files")
    p_validate.add_argument("paths", nargs="+")
    p_validate.add_argument("--mode", choices=("strict", "lenient"), default="strict")

    p_stats = sub.add_parser("stats", help="corpus statistics over a directory")
    p_stats.add_argument("dir")
    p_stats.add_argument(
        "--metric",
        choices=("summary", "block-freq", "edge-patterns", "centrality", "trends"),
        default="summary",
    )
    p_stats.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p_stats.add_argument("--mode", choices=("strict", "lenient"), default="lenient")
    p_stats.add_argument("--level", choices=("high", "intermediate", "granular"))
    p_stats.add_argument("--synonyms", help="path to a synonym table JSON file")
    p_stats.add_argument("--include-self-loops", action="store_true")

    p_compare = sub.add_parser("compare", help="compare two annotation directories")
    p_compare.add_argument("manual_dir")
    p_compare.add_argument("llm_dir")
    p_compare.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p_compare.add_argument("--mode", choices=("strict", "lenient"), default="lenient")
    p_compare.add_argument("--synonyms")

    p_extract = sub.add_parser("extract", help="extract a blueprint from paper text")
    p_extract.add_argument("paper", help="plain-text paper file")
    p_extract.add_argument("transport", help="transport config JSON file")
    p_extract.add_argument("--examples", help="directory of few-shot example blueprints")
    p_extract.add_argument("--out", help="output blueprint path (default: paper stem + .json)")
    p_extract.add_argument("--max-refinements", type=int, default=3)
    p_extract.add_argument("--mode", choices=("strict", "lenient"), default="strict")

    p_serve = sub.add_parser("serve", help="run the local curation service")
    p_serve.add_argument("root")
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.add_argument("--read-only", action="store_true")
    p_serve.add_argument("--mode", choices=("strict", "lenient"), default="strict")
    p_serve.add_argument("--synonyms")
    p_serve.add_argument("--transport", help="transport config for /extract and refinements")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args.paths, args.mode)
    if args.command == "stats":
        return cmd_stats(
            args.dir,
            args.metric,
            args.format,
            args.mode,
            args.level,
            args.synonyms,
            args.include_self_loops,
        )
    if args.command == "compare":
        return cmd_compare(args.manual_dir, args.llm_dir, args.format, args.mode, args.synonyms)
    if args.command == "extract":
        return cmd_extract(
            args.paper, args.transport, args.examples, args.out, args.max_refinements, args.mode
        )
    if args.command == "serve":
        return cmd_serve(
            args.root, args.port, args.read_only, args.mode, args.synonyms, args.transport
        )
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
