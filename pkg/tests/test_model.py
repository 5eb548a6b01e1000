"""Serialization round trips and wire-format behavior."""

import json

from hypothesis import given, settings

from blueprintkit.model import (
    GranularBlock,
    HighLevelBlock,
    IntermediateBlock,
    SystemBlueprint,
    SystemMetadata,
    serialize_blueprint,
)
from blueprintkit.validation import parse_blueprint

from generators import blueprints


def roundtrip(bp: SystemBlueprint) -> SystemBlueprint:
    parsed, report = parse_blueprint(serialize_blueprint(bp), "strict")
    assert parsed is not None, report.to_wire()
    return parsed


def test_fixture_files_are_canonical(fixtures_corpus_dir):
    for path in fixtures_corpus_dir.glob("*.json"):
        raw = path.read_bytes()
        bp, report = parse_blueprint(raw, "strict")
        assert bp is not None, (path.name, report.to_wire())
        assert serialize_blueprint(bp).encode("utf-8") == raw


def test_roundtrip_taxivis(taxivis):
    assert roundtrip(taxivis) == taxivis


def test_taxivis_structure(taxivis):
    assert taxivis.block_counts() == (4, 6, 12)
    loaders = [
        i.name for h in taxivis.high_level_blocks for i in h.intermediate_blocks
        if i.name == "Loader"
    ]
    assert loaders == ["Loader"]
    assert taxivis.metadata is not None and taxivis.metadata.year == 2013


def test_unicode_names_preserved():
    bp = SystemBlueprint(
        paper_title="Straßenverkehr — 城市可视分析 ✓",
        high_level_blocks=(
            HighLevelBlock(
                "Visualization",
                (
                    IntermediateBlock(
                        "Geospatial",
                        (GranularBlock(name="Karte 2D (überlagert)", id=0, reference_citation="x"),),
                    ),
                ),
            ),
        ),
    )
    text = serialize_blueprint(bp)
    assert "überlagert" in text  # not \u-escaped
    assert roundtrip(bp) == bp


def test_unknown_fields_survive_roundtrip():
    raw = json.dumps(
        {
            "PaperTitle": "X",
            "CustomTag": {"nested": [1, 2]},
            "HighLevelBlocks": [
                {
                    "HighLevelBlockName": "Visualization",
                    "Comment": "kept",
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
                                    "ReferenceCitation": "q",
                                    "FeedsInto": [],
                                    "InteractsWith": [],
                                    "Confidence": 0.9,
                                }
                            ],
                        }
                    ],
                }
            ],
        }
    )
    bp, report = parse_blueprint(raw, "lenient")
    assert bp is not None and report.valid
    assert bp.extra == {"CustomTag": {"nested": [1, 2]}}
    assert bp.high_level_blocks[0].extra == {"Comment": "kept"}
    assert bp.high_level_blocks[0].intermediate_blocks[0].granular_blocks[0].extra == {
        "Confidence": 0.9
    }
    assert roundtrip(bp) == bp
    # strict mode warns but keeps them too
    strict_bp, strict_report = parse_blueprint(raw, "strict")
    assert strict_bp == bp
    assert strict_report.warning_codes() >= {"UNKNOWN_FIELD"}


def test_legacy_feeds_into_only_means_data_kind():
    raw = json.dumps(
        {
            "PaperTitle": "Legacy",
            "HighLevelBlocks": [
                {
                    "HighLevelBlockName": "Data Processing",
                    "IntermediateBlocks": [
                        {
                            "IntermediateBlockName": "Querying",
                            "GranularBlocks": [
                                {
                                    "GranularBlockName": "A",
                                    "ID": 0,
                                    "PaperDescription": "",
                                    "Inputs": [],
                                    "Outputs": [],
                                    "ReferenceCitation": "q",
                                    "FeedsInto": [1],
                                },
                                {
                                    "GranularBlockName": "B",
                                    "ID": 1,
                                    "PaperDescription": "",
                                    "Inputs": [],
                                    "Outputs": [],
                                    "ReferenceCitation": "q",
                                    "FeedsInto": [],
                                },
                            ],
                        }
                    ],
                }
            ],
        }
    )
    bp, report = parse_blueprint(raw, "strict")
    assert bp is not None and report.valid
    assert bp.edge_counts() == (1, 0)


def test_metadata_roundtrip():
    bp = SystemBlueprint(
        paper_title="Dated",
        high_level_blocks=(HighLevelBlock("Interaction", ()),),
        metadata=SystemMetadata(year=2019, venue="IEEE TVCG", domain_tags=("mobility",)),
    )
    back = roundtrip(bp)
    assert back.metadata == bp.metadata


def test_non_canonical_serialization_reparses_equal(taxivis):
    compact = serialize_blueprint(taxivis, canonical=False)
    assert "\n" not in compact
    bp, _ = parse_blueprint(compact, "strict")
    assert bp == taxivis


@settings(max_examples=60, deadline=None)
@given(blueprints())
def test_roundtrip_random_blueprints(bp):
    assert roundtrip(bp) == bp
