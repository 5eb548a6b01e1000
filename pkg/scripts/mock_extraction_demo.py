#!/usr/bin/env python3
"""End-to-end extraction demo, fully offline.

Scripts a mock transport whose first reply is broken JSON and whose
second is a valid blueprint, then runs the extraction loop and shows
the refinement happening: two attempts, one refinement, a draft
blueprint at the end. A starting point for wiring a real endpoint:
swap the transport config for transport_kind="http".
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from blueprintkit.extract import PromptSpec, examples_from_dir, run_extraction
from blueprintkit.fixtures import fixtures_dir
from blueprintkit.model import serialize_blueprint
from blueprintkit.transport import TransportConfig

PAPER_TEXT = """\
We present GridScope, a system for exploring energy consumption across a city.
GridScope loads smart-meter readings, aggregates them on a spatial grid, and
shows consumption on a 2D map with a heatmap overlay; brushing a time range in
the line chart filters the aggregation.
"""

BROKEN_REPLY = "Sure! Here is the specification you asked for: {\"PaperTitle\": ..."

VALID_REPLY = json.dumps(
    {
        "PaperTitle": "GridScope: Visual Analysis of Urban Energy Consumption",
        "Metadata": {"Year": 2024},
        "HighLevelBlocks": [
            {
                "HighLevelBlockName": "Data Loading",
                "IntermediateBlocks": [
                    {
                        "IntermediateBlockName": "Loader",
                        "GranularBlocks": [
                            {
                                "GranularBlockName": "Smart Meter Data",
                                "ID": 0,
                                "PaperDescription": "Half-hourly consumption readings.",
                                "Inputs": ["meter files"],
                                "Outputs": ["readings"],
                                "ReferenceCitation": "GridScope loads smart-meter readings",
                                "FeedsInto": [1],
                                "InteractsWith": [],
                            }
                        ],
                    }
                ],
            },
            {
                "HighLevelBlockName": "Data Processing",
                "IntermediateBlocks": [
                    {
                        "IntermediateBlockName": "Aggregation",
                        "GranularBlocks": [
                            {
                                "GranularBlockName": "Grid Aggregation",
                                "ID": 1,
                                "PaperDescription": "Aggregates readings on a spatial grid.",
                                "Inputs": ["readings"],
                                "Outputs": ["grid cells"],
                                "ReferenceCitation": "aggregates them on a spatial grid",
                                "FeedsInto": [2, 3, 4],
                                "InteractsWith": [],
                            }
                        ],
                    }
                ],
            },
            {
                "HighLevelBlockName": "Visualization",
                "IntermediateBlocks": [
                    {
                        "IntermediateBlockName": "Geospatial",
                        "GranularBlocks": [
                            {
                                "GranularBlockName": "Map 2D",
                                "ID": 2,
                                "PaperDescription": "City map of consumption.",
                                "Inputs": ["grid cells"],
                                "Outputs": ["map"],
                                "ReferenceCitation": "shows consumption on a 2D map",
                                "FeedsInto": [],
                                "InteractsWith": [],
                            },
                            {
                                "GranularBlockName": "Heatmap",
                                "ID": 3,
                                "PaperDescription": "Density overlay.",
                                "Inputs": ["grid cells"],
                                "Outputs": ["overlay"],
                                "ReferenceCitation": "with a heatmap overlay",
                                "FeedsInto": [2],
                                "InteractsWith": [],
                            },
                        ],
                    },
                    {
                        "IntermediateBlockName": "Infovis",
                        "GranularBlocks": [
                            {
                                "GranularBlockName": "Line Chart",
                                "ID": 4,
                                "PaperDescription": "Consumption over time.",
                                "Inputs": ["grid cells"],
                                "Outputs": ["time series view"],
                                "ReferenceCitation": "brushing a time range in the line chart",
                                "FeedsInto": [5],
                                "InteractsWith": [],
                            }
                        ],
                    },
                ],
            },
            {
                "HighLevelBlockName": "Interaction",
                "IntermediateBlocks": [
                    {
                        "IntermediateBlockName": "Filter",
                        "GranularBlocks": [
                            {
                                "GranularBlockName": "Temporal Selection",
                                "ID": 5,
                                "PaperDescription": "Brush over the time axis.",
                                "Inputs": ["time series view"],
                                "Outputs": ["time constraints"],
                                "ReferenceCitation": "brushing a time range ... filters the aggregation",
                                "FeedsInto": [],
                                "InteractsWith": [1],
                            }
                        ],
                    }
                ],
            },
        ],
    }
)


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        script = Path(tmp) / "responses.txt"
        script.write_text(BROKEN_REPLY + "\n" + VALID_REPLY + "\n", encoding="utf-8")
        cfg = TransportConfig(
            transport_kind="mock",
            model_id="scripted-demo",
            scripted_responses_path=str(script),
        )
        spec = PromptSpec(
            paper_text=PAPER_TEXT,
            few_shot_examples=examples_from_dir(fixtures_dir(), limit=1),
        )
        record = run_extraction(spec, cfg)

    print(f"attempts:         {len(record.attempts)}")
    print(f"refinements:      {record.refinement_count}")
    print(f"review status:    {record.review_status}")
    for i, attempt in enumerate(record.attempts):
        codes = sorted(attempt.report.error_codes()) or ["-"]
        print(f"  attempt {i}: {attempt.report.status:8s} errors={','.join(codes)}")
    assert record.blueprint is not None
    print("\nextracted blueprint:")
    print(serialize_blueprint(record.blueprint))
    return 0


if __name__ == "__main__":
    sys.exit(main())
