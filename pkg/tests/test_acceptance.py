"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they pass. Every tolerance and runtime bound is pinned here.
"""

import json
import math
import random
import shutil
import time
from contextlib import contextmanager

import pytest

from blueprintkit.cli import main
from blueprintkit.compare import AnnotationPair, aggregate_table, compare_pair, match_blocks
from blueprintkit.corpus import (
    block_frequencies,
    centrality_ranking,
    load_corpus,
    summarize,
    temporal_trends,
)
from blueprintkit.extract import PromptSpec, run_extraction
from blueprintkit.fixtures import fixture_path
from blueprintkit.graph import Level, build_graph, clustering_coefficient, density, edge_kind_split
from blueprintkit.labels import SynonymTable, normalize_label
from blueprintkit.model import (
    GranularBlock,
    HighLevelBlock,
    IntermediateBlock,
    SystemBlueprint,
    serialize_blueprint,
)
from blueprintkit.transport import TransportConfig
from blueprintkit.validation import (
    BAD_CATEGORY,
    DANGLING_EDGE,
    DUP_ID,
    EMPTY_NAME,
    PARSE,
    parse_blueprint,
)

from generators import random_blueprint
from oracles import (
    clustering_by_triples,
    optimal_match_count,
    recount_block_totals,
    recount_edge_totals,
    recount_granular_centrality,
    recount_name_frequencies,
    recount_trend_means,
    rollup_weights,
)


@contextmanager
def criterion(number: int, description: str, budget_seconds: float):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"FAIL criterion {number}: {description}")
        raise
    elapsed = time.perf_counter() - start
    assert elapsed < budget_seconds, f"criterion {number} took {elapsed:.2f}s (> {budget_seconds}s)"
    print(f"PASS criterion {number}: {description} ({elapsed:.2f}s)")


def stats_summary_json(directory) -> dict:
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["stats", str(directory), "--metric", "summary", "--format", "json"])
    assert code == 0
    return json.loads(buf.getvalue())


def test_criterion_1_taxivis_counts(tmp_path):
    with criterion(1, "TaxiVis: 6 intermediate, 12 granular, 14 data + 3 interaction edges", 1.0):
        corpus_dir = tmp_path / "one"
        corpus_dir.mkdir()
        shutil.copy(fixture_path("taxivis"), corpus_dir / "taxivis.json")
        payload = stats_summary_json(corpus_dir)
        (row,) = payload["per_system"]
        assert row["intermediate"] == 6
        assert row["granular"] == 12
        assert row["data_edges"] == 14
        assert row["interaction_edges"] == 3


def test_criterion_2_vaud_counts(vaud, tmp_path):
    with criterion(2, "VAUD: 8/27 blocks, 41 edges (37+4), stage distribution 8/6/8/5", 1.0):
        corpus_dir = tmp_path / "one"
        corpus_dir.mkdir()
        shutil.copy(fixture_path("vaud"), corpus_dir / "vaud.json")
        payload = stats_summary_json(corpus_dir)
        (row,) = payload["per_system"]
        assert row["intermediate"] == 8
        assert row["granular"] == 27
        assert (row["data_edges"], row["interaction_edges"]) == (37, 4)
        per_stage = {
            h.name: sum(len(i.granular_blocks) for i in h.intermediate_blocks)
            for h in vaud.high_level_blocks
        }
        assert per_stage == {
            "Data Loading": 8,
            "Visualization": 8,
            "Data Processing": 6,
            "Interaction": 5,
        }


def test_criterion_3_tpflow_topology(tpflow):
    with criterion(3, "TPFlow: 18 nodes, 62 edges (47+15), density 0.20261, clustering = oracle", 1.0):
        g = build_graph(tpflow)
        assert len(g.nodes[Level.GRANULAR]) == 18
        data, interaction, _ = edge_kind_split(g, Level.GRANULAR)
        assert (data, interaction) == (47, 15)
        assert density(g, Level.GRANULAR) == pytest.approx(0.20261, abs=1e-4)
        got = clustering_coefficient(g, Level.GRANULAR)
        want = clustering_by_triples(json.loads(serialize_blueprint(tpflow)))
        assert got == pytest.approx(want, abs=1e-12)


def test_criterion_4_mutation_suite(taxivis):
    with criterion(4, "each error code triggered by exactly one single-field mutation", 1.0):
        raw = serialize_blueprint(taxivis)

        truncated = raw[: len(raw) // 2]
        bp, report = parse_blueprint(truncated, "strict")
        assert bp is None and report.error_codes() == {PARSE}

        doc = json.loads(raw)
        doc["HighLevelBlocks"][0]["IntermediateBlocks"][0]["GranularBlocks"][0]["FeedsInto"] = [99]
        bp, report = parse_blueprint(json.dumps(doc), "strict")
        assert bp is None and report.error_codes() == {DANGLING_EDGE}

        doc = json.loads(raw)
        doc["HighLevelBlocks"][0]["IntermediateBlocks"][0]["GranularBlocks"][0][
            "GranularBlockName"
        ] = ""
        bp, report = parse_blueprint(json.dumps(doc), "strict")
        assert bp is None and report.error_codes() == {EMPTY_NAME}

        doc = json.loads(raw)
        doc["HighLevelBlocks"][3]["HighLevelBlockName"] = "Rendering"
        bp, report = parse_blueprint(json.dumps(doc), "strict")
        assert bp is None and report.error_codes() == {BAD_CATEGORY}

        # DUP_ID needs blocks without incident edges so nothing else trips
        small = {
            "PaperTitle": "Mutation base",
            "HighLevelBlocks": [
                {
                    "HighLevelBlockName": "Data Processing",
                    "IntermediateBlocks": [
                        {
                            "IntermediateBlockName": "Querying",
                            "GranularBlocks": [
                                {
                                    "GranularBlockName": n,
                                    "ID": i,
                                    "PaperDescription": "",
                                    "Inputs": [],
                                    "Outputs": [],
                                    "ReferenceCitation": "q",
                                    "FeedsInto": [],
                                    "InteractsWith": [],
                                }
                                for i, n in enumerate(["A", "B"])
                            ],
                        }
                    ],
                }
            ],
        }
        bp, report = parse_blueprint(json.dumps(small), "strict")
        assert bp is not None and report.valid
        small["HighLevelBlocks"][0]["IntermediateBlocks"][0]["GranularBlocks"][1]["ID"] = 0
        bp, report = parse_blueprint(json.dumps(small), "strict")
        assert bp is None and report.error_codes() == {DUP_ID}


def test_criterion_5_rollup_oracle():
    with criterion(5, "rollup oracle on 200 random blueprints: zero violations", 10.0):
        rng = random.Random(20250808)
        violations = 0
        for _ in range(200):
            bp = random_blueprint(rng, max_granular=20)
            g = build_graph(bp)
            expected_inter, expected_high = rollup_weights(json.loads(serialize_blueprint(bp)))
            got_inter = {
                (
                    (e.source.parent_chain[0], e.source.name),
                    (e.target.parent_chain[0], e.target.name),
                    e.kind.value,
                ): e.weight
                for e in g.edges[Level.INTERMEDIATE]
            }
            got_high = {
                (e.source.name, e.target.name, e.kind.value): e.weight
                for e in g.edges[Level.HIGH]
            }
            if got_inter != expected_inter or got_high != expected_high:
                violations += 1
                continue
            if any(w < 1 for w in got_inter.values()) or any(w < 1 for w in got_high.values()):
                violations += 1
                continue
            gran_data, gran_interaction, _ = edge_kind_split(g, Level.GRANULAR)
            for level in (Level.INTERMEDIATE, Level.HIGH):
                lvl_data, lvl_interaction, _ = edge_kind_split(g, level)
                if (lvl_data, lvl_interaction) != (gran_data, gran_interaction):
                    violations += 1
                    break
        assert violations == 0


def test_criterion_6_corpus_oracle(tmp_path):
    with criterion(6, "10-system corpus equals brute-force recount; file-order invariant", 5.0):
        rng = random.Random(424242)
        corpus = [random_blueprint(rng, max_granular=15) for _ in range(10)]
        wires = [json.loads(serialize_blueprint(bp)) for bp in corpus]
        synonyms = SynonymTable.default()

        summary = summarize(corpus)
        assert summary.block_totals == recount_block_totals(wires)
        data, interaction = recount_edge_totals(wires)
        assert summary.edge_total == data + interaction

        freq = block_frequencies(corpus, Level.GRANULAR, synonyms)
        expected = recount_name_frequencies(
            wires, "granular", lambda n: normalize_label(n, synonyms)
        )
        assert {e.key: e.count for e in freq.entries} == {
            k: c for k, (c, _) in expected.items()
        }
        assert {e.key: round(e.system_fraction * 10) for e in freq.entries} == {
            k: s for k, (_, s) in expected.items()
        }

        ranking = centrality_ranking(corpus, Level.GRANULAR, synonyms)
        assert {e.key: e.count for e in ranking.entries} == recount_granular_centrality(
            wires, lambda n: normalize_label(n, synonyms)
        )

        trends = temporal_trends(corpus)
        expected_trends = recount_trend_means(wires)
        got_trends = {
            p.year: (
                p.mean_blocks_total,
                p.mean_blocks_granular,
                p.mean_edges,
                p.edge_to_node_ratio,
                p.system_count,
            )
            for p in trends.points
        }
        assert got_trends == expected_trends

        # permutation invariance through on-disk file order
        forward = tmp_path / "forward"
        backward = tmp_path / "backward"
        forward.mkdir(), backward.mkdir()
        for i, bp in enumerate(corpus):
            (forward / f"a{i}.json").write_text(serialize_blueprint(bp), encoding="utf-8")
            (backward / f"z{9 - i}.json").write_text(serialize_blueprint(bp), encoding="utf-8")
        fwd_blueprints, _ = load_corpus(forward)
        bwd_blueprints, _ = load_corpus(backward)
        assert [b.paper_title for b in fwd_blueprints] != [b.paper_title for b in bwd_blueprints]
        assert summarize(fwd_blueprints).block_totals == summarize(bwd_blueprints).block_totals
        assert block_frequencies(fwd_blueprints, Level.GRANULAR, synonyms) == block_frequencies(
            bwd_blueprints, Level.GRANULAR, synonyms
        )
        assert centrality_ranking(fwd_blueprints, Level.GRANULAR, synonyms) == centrality_ranking(
            bwd_blueprints, Level.GRANULAR, synonyms
        )


def _planted_system(title, names_by_inter, data_edges, interaction_edges):
    feeds, interacts = {}, {}
    for a, b in data_edges:
        feeds.setdefault(a, []).append(b)
    for a, b in interaction_edges:
        interacts.setdefault(a, []).append(b)
    next_id = 0
    inters = []
    for inter_name, names in names_by_inter.items():
        grans = []
        for name in names:
            grans.append(
                GranularBlock(
                    name=name,
                    id=next_id,
                    reference_citation="q",
                    feeds_into=tuple(feeds.get(next_id, ())),
                    interacts_with=tuple(interacts.get(next_id, ())),
                )
            )
            next_id += 1
        inters.append(IntermediateBlock(inter_name, tuple(grans)))
    return SystemBlueprint(title, (HighLevelBlock("Data Processing", tuple(inters)),))


def test_criterion_7_comparison_protocol(tmp_path, taxivis, vaud, tpflow):
    with criterion(7, "planted comparison table exact; greedy matcher = optimal matcher", 5.0):
        # pair alpha: ref 18 edges / 5 blocks; cand 16 edges / 5 blocks, 3 labels shared
        ids5 = list(range(5))
        pairs5 = [(a, b) for a in ids5 for b in ids5 if a != b]  # 20 ordered pairs
        alpha_ref = _planted_system(
            "alpha",
            {"I1": ["A", "B", "C"], "I2": ["D", "E"]},
            data_edges=pairs5[:15],
            interaction_edges=pairs5[15:18],
        )
        alpha_cand = _planted_system(
            "alpha",
            {"I1": ["A", "B", "C"], "I2": ["X", "Y"]},
            data_edges=pairs5[:13],
            interaction_edges=pairs5[13:16],
        )
        # pair beta: ref 10 edges / 4 blocks; cand 20 edges / 6 blocks, all 4 shared
        ids4 = list(range(4))
        pairs4 = [(a, b) for a in ids4 for b in ids4 if a != b]  # 12
        ids6 = list(range(6))
        pairs6 = [(a, b) for a in ids6 for b in ids6 if a != b]  # 30
        beta_ref = _planted_system(
            "beta", {"J": ["P", "Q", "R", "S"]}, data_edges=pairs4[:10], interaction_edges=[]
        )
        beta_cand = _planted_system(
            "beta",
            {"J": ["P", "Q", "R", "S", "T", "U"]},
            data_edges=pairs6[:20],
            interaction_edges=[],
        )

        manual = tmp_path / "manual"
        llm = tmp_path / "llm"
        manual.mkdir(), llm.mkdir()
        (manual / "alpha.json").write_text(serialize_blueprint(alpha_ref), encoding="utf-8")
        (manual / "beta.json").write_text(serialize_blueprint(beta_ref), encoding="utf-8")
        (llm / "alpha.json").write_text(serialize_blueprint(alpha_cand), encoding="utf-8")
        (llm / "beta.json").write_text(serialize_blueprint(beta_cand), encoding="utf-8")

        import io
        from contextlib import redirect_stdout

        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(["compare", str(manual), str(llm), "--format", "json"])
        assert code == 0
        payload = json.loads(buf.getvalue())

        by_key = {row["key"]: row for row in payload["rows"]}
        assert by_key["alpha"]["edges"]["absolute_difference"] == 2
        assert by_key["beta"]["edges"]["absolute_difference"] == 10
        agg = payload["aggregates"]["edges"]
        assert agg["reference_mean"] == pytest.approx(14.0, abs=1e-12)
        assert agg["reference_std"] == pytest.approx(math.sqrt(32), abs=1e-12)
        assert agg["candidate_mean"] == pytest.approx(18.0, abs=1e-12)
        assert agg["candidate_std"] == pytest.approx(math.sqrt(8), abs=1e-12)
        assert agg["difference_mean"] == pytest.approx(6.0, abs=1e-12)
        assert agg["difference_std"] == pytest.approx(math.sqrt(32), abs=1e-12)
        # micro rate: alpha 3/5 matched, beta 4/4 -> 7/9
        assert payload["label_match_micro"] == pytest.approx(7 / 9, abs=1e-12)

        synonyms = SynonymTable.default()
        fixture_pairs = [(a, b) for a in (taxivis, vaud, tpflow) for b in (taxivis, vaud, tpflow)]
        planted = [(alpha_ref, alpha_cand), (beta_ref, beta_cand)]
        for ref, cand in fixture_pairs + planted:
            matches = match_blocks(ref, cand, synonyms)
            matched = sum(1 for _, c in matches if c is not None)
            ref_labels = [normalize_label(g.name, synonyms) for g in ref.granular_blocks()]
            cand_labels = [normalize_label(g.name, synonyms) for g in cand.granular_blocks()]
            assert matched == optimal_match_count(ref_labels, cand_labels)


VALID_RESPONSE = json.dumps(
    {
        "PaperTitle": "Scripted",
        "HighLevelBlocks": [
            {
                "HighLevelBlockName": "Visualization",
                "IntermediateBlocks": [
                    {
                        "IntermediateBlockName": "Infovis",
                        "GranularBlocks": [
                            {
                                "GranularBlockName": "Line Chart",
                                "ID": 0,
                                "PaperDescription": "",
                                "Inputs": [],
                                "Outputs": [],
                                "ReferenceCitation": "quoted",
                                "FeedsInto": [],
                                "InteractsWith": [],
                            }
                        ],
                    }
                ],
            }
        ],
    }
)


def test_criterion_8_extraction_loop(tmp_path):
    with criterion(8, "mock extraction: [bad, good] -> 1 refinement; 4 x bad -> exhausted", 5.0):
        from blueprintkit.validation import validate

        script = tmp_path / "a.txt"
        script.write_text("no json here\n" + VALID_RESPONSE + "\n", encoding="utf-8")
        cfg = TransportConfig(
            transport_kind="mock", model_id="m", scripted_responses_path=str(script)
        )
        record = run_extraction(PromptSpec(paper_text="paper"), cfg)
        assert record.refinement_count == 1
        assert record.blueprint is not None
        assert validate(record.blueprint, "strict").valid

        script2 = tmp_path / "b.txt"
        script2.write_text("bad\n" * 4, encoding="utf-8")
        cfg2 = TransportConfig(
            transport_kind="mock", model_id="m", scripted_responses_path=str(script2)
        )
        record2 = run_extraction(PromptSpec(paper_text="paper"), cfg2, max_refinements=3)
        assert record2.exhausted
        assert record2.blueprint is None
        assert len(record2.attempts) == 4


def test_criterion_9_roundtrip_500():
    with criterion(9, "500 random blueprints: parse(serialize(B)) == B, zero failures", 10.0):
        rng = random.Random(90210)
        failures = 0
        for _ in range(500):
            bp = random_blueprint(rng, max_granular=20)
            parsed, report = parse_blueprint(serialize_blueprint(bp), "strict")
            if parsed != bp or not report.valid:
                failures += 1
        assert failures == 0
