"""Structured extraction of blueprints from paper text via an LLM.

The pipeline is: build a prompt (task preamble, schema reference,
coverage instructions, few-shot examples, paper text, output
directive), send it through a transport, locate and parse the JSON
object in the reply, validate it, and on failure feed the errors back
through a refinement prompt. Every attempt is recorded by hash, so a
finished ``ExtractionRecord`` is a reproducible provenance log that
never holds the API key.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from .model import SystemBlueprint, serialize_blueprint
from .validation import Issue, ValidationReport, parse_blueprint
from .transport import Transport, TransportConfig, TransportError, make_transport

NO_JSON_FOUND = "NO_JSON_FOUND"
TRANSPORT_FAILURE = "TRANSPORT_FAILURE"

REVIEW_DRAFT = "draft"
REVIEW_ACCEPTED = "accepted"
REVIEW_NEEDS_REVISION = "needs_revision"
REVIEW_STATUSES = (REVIEW_DRAFT, REVIEW_ACCEPTED, REVIEW_NEEDS_REVISION)

DEFAULT_MAX_REFINEMENTS = 3

SCHEMA_TEXT = """\
A system blueprint is a single JSON object with this shape:

{
  "PaperTitle": string,                  // title of the source paper
  "Metadata": {                          // optional
    "Year": integer,                     // publication year
    "Venue": string,
    "DomainTags": [string, ...]
  },
  "HighLevelBlocks": [
    {
      "HighLevelBlockName": string,      // one of: "Data Loading", "Data Processing",
                                         // "Visualization", "Interaction"
      "IntermediateBlocks": [
        {
          "IntermediateBlockName": string,   // functional grouping, e.g. "Loader",
                                             // "Querying", "Geospatial", "Infovis", "Filter"
          "GranularBlocks": [
            {
              "GranularBlockName": string,   // the most specific unit, e.g. "Map 2D"
              "ID": integer,                 // unique across the whole blueprint
              "PaperDescription": string,    // summarized description of the block
              "Inputs": [string, ...],       // data/signals consumed
              "Outputs": [string, ...],      // data/signals produced
              "ReferenceCitation": string,   // verbatim quote from the paper that
                                             // verifies the block exists
              "FeedsInto": [integer, ...],   // IDs of blocks receiving this block's data
              "InteractsWith": [integer, ...] // IDs of blocks this block constrains or
                                              // filters through user interaction
            }
          ]
        }
      ]
    }
  ]
}

Rules: every ID is unique; every ID referenced in FeedsInto or
InteractsWith must exist; a block never lists its own ID; an ID appears
in at most one of FeedsInto / InteractsWith per block. FeedsInto edges
carry data; InteractsWith edges carry user-driven constraints or
filters (for example a brush or filter restricting another view).
"""

DEFAULT_TASK_PREAMBLE = """\
You are a system designer reviewing a research paper. Extract a complete
specification of the system the paper describes: every data loading,
data processing, visualization, and interaction component; the concrete
operations inside each component; and every data or interaction
dependency between them.
"""

DEFAULT_COVERAGE_INSTRUCTIONS = """\
Read the entire paper, not just the abstract and the system overview.
Methods, implementation details, and use cases frequently describe
components, operations, and dependencies that the overview leaves out.
"""

OUTPUT_DIRECTIVE = """\
Respond with exactly one JSON object conforming to the schema above.
Do not add commentary before or after the object.
"""

TRUNCATION_MARKER = "\n[... paper text truncated to fit the context budget ...]\n"


@dataclass(frozen=True)
class PromptSpec:
    """Everything needed to build one extraction prompt deterministically."""

    paper_text: str
    schema_text: str = SCHEMA_TEXT
    task_preamble: str = DEFAULT_TASK_PREAMBLE
    coverage_instructions: str = DEFAULT_COVERAGE_INSTRUCTIONS
    few_shot_examples: tuple[tuple[str, str], ...] = ()  # (source label, blueprint JSON)
    paper_char_budget: int | None = None  # tail-first truncation when exceeded


def text_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def build_prompt(spec: PromptSpec) -> str:
    """Concatenate the prompt sections in fixed order.

    Identical specs produce identical prompts (and identical hashes).
    Papers longer than the char budget are cut tail-first, keeping the
    front matter and methods.
    """
    if not spec.schema_text.strip():
        raise ValueError("PromptSpec.schema_text must be non-empty")
    if not spec.paper_text.strip():
        raise ValueError("PromptSpec.paper_text must be non-empty")
    paper = spec.paper_text
    if spec.paper_char_budget is not None and len(paper) > spec.paper_char_budget:
        paper = paper[: spec.paper_char_budget] + TRUNCATION_MARKER
    sections = [
        spec.task_preamble.rstrip(),
        "## Blueprint schema\n\n" + spec.schema_text.rstrip(),
        spec.coverage_instructions.rstrip(),
    ]
    if spec.few_shot_examples:
        blocks = []
        for i, (source, blueprint_json) in enumerate(spec.few_shot_examples, start=1):
            blocks.append(
                f"### Example {i}: {source}\n\n{blueprint_json.rstrip()}"
            )
        sections.append("## Examples\n\n" + "\n\n".join(blocks))
    sections.append("## Paper\n\n" + paper.rstrip())
    sections.append(OUTPUT_DIRECTIVE.rstrip())
    return "\n\n".join(sections) + "\n"


def _candidate_objects(text: str) -> list[str]:
    """Maximal balanced ``{...}`` spans at the top level of the text."""
    spans: list[str] = []
    depth = 0
    start = -1
    in_string = False
    escaped = False
    for i, ch in enumerate(text):
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
            continue
        if ch == '"' and depth > 0:
            in_string = True
        elif ch == "{":
            if depth == 0:
                start = i
            depth += 1
        elif ch == "}" and depth > 0:
            depth -= 1
            if depth == 0:
                spans.append(text[start : i + 1])
    return spans


def _extract_json_object(raw_response: str) -> str | None:
    """Locate the single JSON object in an LLM reply.

    Fenced ``` blocks are preferred; otherwise the reply is brace-scanned.
    Exactly one top-level object must emerge, else the reply is ambiguous.
    """
    fenced: list[str] = []
    parts = raw_response.split("```")
    # parts[1], [3], ... are fence bodies
    for body in parts[1:-1:2] if len(parts) >= 3 else []:
        if body.startswith("json"):
            body = body[4:]
        body = body.strip()
        if body.startswith("{"):
            fenced.extend(_candidate_objects(body))
    candidates = fenced if fenced else _candidate_objects(raw_response)
    if len(candidates) != 1:
        return None
    return candidates[0]


def parse_and_validate(
    raw_response: str, mode: str = "strict"
) -> tuple[SystemBlueprint | None, ValidationReport]:
    """Strip surrounding prose, find the JSON object, parse and validate it."""
    candidate = _extract_json_object(raw_response)
    if candidate is None:
        issue = Issue(
            NO_JSON_FOUND, "", "response carries no unambiguous top-level JSON object"
        )
        return None, ValidationReport(errors=(issue,))
    return parse_blueprint(candidate, mode)


class NothingToRefineError(ValueError):
    pass


def build_refinement_prompt(
    previous_response: str,
    report: ValidationReport | None = None,
    instructions: str = "",
) -> str:
    """Follow-up prompt asking for a corrected complete specification.

    Quotes every validation error with its path and carries the previous
    response verbatim; reviewer instructions ride along when present.
    """
    has_errors = report is not None and report.errors
    if not has_errors and not instructions.strip():
        raise NothingToRefineError("report is Valid and no instructions were given")
    sections = [
        "Your previous specification needs revision.",
        "## Previous response\n\n" + previous_response.rstrip(),
    ]
    if has_errors:
        lines = [f"- [{e.code}] at {e.path or '/'}: {e.message}" for e in report.errors]
        sections.append("## Validation errors\n\n" + "\n".join(lines))
    if instructions.strip():
        sections.append("## Reviewer instructions\n\n" + instructions.strip())
    sections.append(
        "Return the corrected, complete specification as a single JSON object "
        "conforming to the original schema. Do not add commentary."
    )
    return "\n\n".join(sections) + "\n"


@dataclass(frozen=True)
class Attempt:
    prompt_hash: str
    raw_response_hash: str
    report: ValidationReport

    def to_wire(self) -> dict[str, Any]:
        return {
            "prompt_hash": self.prompt_hash,
            "raw_response_hash": self.raw_response_hash,
            "report": self.report.to_wire(),
        }


@dataclass(frozen=True)
class ExtractionRecord:
    """Provenance of one extraction run (possibly spanning refinements)."""

    blueprint: SystemBlueprint | None
    attempts: tuple[Attempt, ...]
    model_id: str
    started_at: str
    finished_at: str
    review_status: str = REVIEW_DRAFT

    @property
    def refinement_count(self) -> int:
        return len(self.attempts) - 1

    @property
    def exhausted(self) -> bool:
        return self.blueprint is None

    def to_wire(self) -> dict[str, Any]:
        return {
            "blueprint": self.blueprint.to_wire() if self.blueprint else None,
            "attempts": [a.to_wire() for a in self.attempts],
            "refinement_count": self.refinement_count,
            "model_id": self.model_id,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "review_status": self.review_status,
        }


def _report_from_wire(data: dict[str, Any]) -> ValidationReport:
    return ValidationReport(
        errors=tuple(Issue(e["code"], e["path"], e["message"]) for e in data.get("errors", [])),
        warnings=tuple(
            Issue(w["code"], w["path"], w["message"]) for w in data.get("warnings", [])
        ),
    )


def record_from_wire(data: dict[str, Any]) -> ExtractionRecord:
    blueprint = None
    if data.get("blueprint") is not None:
        blueprint, report = parse_blueprint(json.dumps(data["blueprint"]), "lenient")
        if blueprint is None:
            raise ValueError(f"stored record blueprint does not parse: {report.error_codes()}")
    return ExtractionRecord(
        blueprint=blueprint,
        attempts=tuple(
            Attempt(a["prompt_hash"], a["raw_response_hash"], _report_from_wire(a["report"]))
            for a in data.get("attempts", [])
        ),
        model_id=data.get("model_id", ""),
        started_at=data.get("started_at", ""),
        finished_at=data.get("finished_at", ""),
        review_status=data.get("review_status", REVIEW_DRAFT),
    )


def save_record(record: ExtractionRecord, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(record.to_wire(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


def load_record(path: str | Path) -> ExtractionRecord:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return record_from_wire(data)


def record_path_for(blueprint_path: str | Path) -> Path:
    """``<key>.json`` -> ``<key>.extraction.json`` beside it."""
    path = Path(blueprint_path)
    return path.with_name(path.stem + ".extraction.json")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class ExtractionTransportError(TransportError):
    """Transport failure mid-run; carries the record accumulated so far."""

    def __init__(self, message: str, record: ExtractionRecord):
        super().__init__(message)
        self.record = record


def _run_loop(
    first_prompt: str,
    transport: Transport,
    model_id: str,
    mode: str,
    max_refinements: int,
    prior_attempts: tuple[Attempt, ...],
    started_at: str,
) -> ExtractionRecord:
    attempts = list(prior_attempts)
    prompt = first_prompt
    blueprint: SystemBlueprint | None = None
    for _ in range(max_refinements + 1):
        try:
            response = transport.send([{"role": "user", "content": prompt}])
        except TransportError as exc:
            failure = Attempt(
                text_hash(prompt),
                "",
                ValidationReport(errors=(Issue(TRANSPORT_FAILURE, "", str(exc)),)),
            )
            record = ExtractionRecord(
                blueprint=None,
                attempts=tuple(attempts) + (failure,),
                model_id=model_id,
                started_at=started_at,
                finished_at=_now(),
                review_status=REVIEW_NEEDS_REVISION,
            )
            raise ExtractionTransportError(str(exc), record) from exc
        candidate, report = parse_and_validate(response, mode)
        attempts.append(Attempt(text_hash(prompt), text_hash(response), report))
        if candidate is not None:
            blueprint = candidate
            break
        prompt = build_refinement_prompt(response, report)
    return ExtractionRecord(
        blueprint=blueprint,
        attempts=tuple(attempts),
        model_id=model_id,
        started_at=started_at,
        finished_at=_now(),
        review_status=REVIEW_DRAFT if blueprint is not None else REVIEW_NEEDS_REVISION,
    )


def run_extraction(
    spec: PromptSpec,
    cfg: TransportConfig,
    max_refinements: int = DEFAULT_MAX_REFINEMENTS,
    mode: str = "strict",
    transport: Transport | None = None,
) -> ExtractionRecord:
    """Prompt, parse, validate, refine: up to 1 + max_refinements attempts.

    A Valid result comes back as a draft for human review; running out
    of attempts returns a record with no blueprint and review status
    ``needs_revision``. Transport failures raise
    ``ExtractionTransportError`` with the partial record attached.
    """
    if max_refinements < 0:
        raise ValueError("max_refinements must be >= 0")
    if transport is None:
        transport = make_transport(cfg)
    return _run_loop(
        first_prompt=build_prompt(spec),
        transport=transport,
        model_id=cfg.model_id,
        mode=mode,
        max_refinements=max_refinements,
        prior_attempts=(),
        started_at=_now(),
    )


def refine_extraction(
    prior: ExtractionRecord,
    previous_response: str,
    instructions: str,
    cfg: TransportConfig,
    max_refinements: int = DEFAULT_MAX_REFINEMENTS,
    mode: str = "strict",
    transport: Transport | None = None,
) -> ExtractionRecord:
    """Continue a recorded run with reviewer instructions.

    The prior record's attempts carry over, so the refinement count
    keeps growing across review cycles. ``previous_response`` is quoted
    verbatim in the refinement prompt (for an accepted-then-revised
    blueprint, its canonical serialization is the natural choice).
    """
    if transport is None:
        transport = make_transport(cfg)
    prompt = build_refinement_prompt(previous_response, None, instructions)
    return _run_loop(
        first_prompt=prompt,
        transport=transport,
        model_id=cfg.model_id or prior.model_id,
        mode=mode,
        max_refinements=max_refinements,
        prior_attempts=prior.attempts,
        started_at=prior.started_at or _now(),
    )


def examples_from_dir(examples_dir: str | Path, limit: int | None = None) -> tuple[tuple[str, str], ...]:
    """Build few-shot examples from a directory of blueprint files.

    Each valid blueprint becomes (paper title, canonical JSON), in
    lexicographic file order.
    """
    examples: list[tuple[str, str]] = []
    for path in sorted(Path(examples_dir).glob("*.json")):
        if path.name.endswith(".extraction.json"):
            continue
        bp, _ = parse_blueprint(path.read_bytes(), "lenient")
        if bp is not None:
            examples.append((bp.paper_title, serialize_blueprint(bp)))
        if limit is not None and len(examples) >= limit:
            break
    return tuple(examples)
