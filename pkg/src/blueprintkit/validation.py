"""Parsing and validation of blueprint JSON.

``parse_blueprint`` decodes wire-format JSON into the data model while
collecting every problem it finds; ``validate`` re-checks a constructed
model. Problems are data, not exceptions: both functions return a
``ValidationReport`` whose errors/warnings carry a stable code, a
JSON-pointer-style path into the document, and a human message.

Error codes
    PARSE            malformed JSON / not UTF-8
    BAD_TYPE         a field has the wrong JSON type (or a required field is missing)
    DUP_ID           a granular ID used more than once
    DANGLING_EDGE    an edge target that resolves to no granular block
    SELF_EDGE        a block listing its own ID as an edge target
    DUP_EDGE         the same target repeated within one edge list
    EDGE_KIND_CONFLICT  a target present in both FeedsInto and InteractsWith
    EMPTY_NAME       an empty (or whitespace-only) name or title
    BAD_CATEGORY     high-level name outside the controlled vocabulary (strict mode)
    BAD_YEAR         metadata year outside [1990, 2100]

Warning codes
    EMPTY_SYSTEM     a blueprint with no high-level blocks
    UNKNOWN_FIELD    an unrecognized key (strict mode only; the key is kept either way)
    BAD_CATEGORY     vocabulary violation downgraded to a warning in lenient mode
    EMPTY_CITATION   a granular block with no reference citation
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .model import (
    HIGH_LEVEL_CATEGORIES,
    YEAR_MAX,
    YEAR_MIN,
    GranularBlock,
    HighLevelBlock,
    IntermediateBlock,
    SystemBlueprint,
    SystemMetadata,
)

PARSE = "PARSE"
BAD_TYPE = "BAD_TYPE"
DUP_ID = "DUP_ID"
DANGLING_EDGE = "DANGLING_EDGE"
SELF_EDGE = "SELF_EDGE"
DUP_EDGE = "DUP_EDGE"
EDGE_KIND_CONFLICT = "EDGE_KIND_CONFLICT"
EMPTY_NAME = "EMPTY_NAME"
BAD_CATEGORY = "BAD_CATEGORY"
BAD_YEAR = "BAD_YEAR"
EMPTY_SYSTEM = "EMPTY_SYSTEM"
UNKNOWN_FIELD = "UNKNOWN_FIELD"
EMPTY_CITATION = "EMPTY_CITATION"

# reported for an unreadable file inside an otherwise loadable batch
IO_ERROR = "IO_ERROR"

MODES = ("strict", "lenient")

_SYSTEM_KEYS = {"PaperTitle", "Metadata", "HighLevelBlocks"}
_METADATA_KEYS = {"Year", "Venue", "DomainTags"}
_HIGH_KEYS = {"HighLevelBlockName", "IntermediateBlocks"}
_INTERMEDIATE_KEYS = {"IntermediateBlockName", "GranularBlocks"}
_GRANULAR_KEYS = {
    "GranularBlockName",
    "ID",
    "PaperDescription",
    "Inputs",
    "Outputs",
    "ReferenceCitation",
    "FeedsInto",
    "InteractsWith",
    "Properties",
}


@dataclass(frozen=True)
class Issue:
    code: str
    path: str
    message: str

    def to_wire(self) -> dict[str, str]:
        return {"code": self.code, "path": self.path, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Issue, ...] = ()
    warnings: tuple[Issue, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.errors

    @property
    def status(self) -> str:
        return "Valid" if self.valid else "Invalid"

    def error_codes(self) -> set[str]:
        return {e.code for e in self.errors}

    def warning_codes(self) -> set[str]:
        return {w.code for w in self.warnings}

    def to_wire(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "errors": [e.to_wire() for e in self.errors],
            "warnings": [w.to_wire() for w in self.warnings],
        }


class _Collector:
    def __init__(self, mode: str):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
        self.mode = mode
        self.errors: list[Issue] = []
        self.warnings: list[Issue] = []

    def error(self, code: str, path: str, message: str) -> None:
        self.errors.append(Issue(code, path, message))

    def warn(self, code: str, path: str, message: str) -> None:
        self.warnings.append(Issue(code, path, message))

    def report(self) -> ValidationReport:
        return ValidationReport(tuple(self.errors), tuple(self.warnings))


def _take_extra(data: dict[str, Any], known: set[str], path: str, col: _Collector) -> dict[str, Any]:
    extra = {k: v for k, v in data.items() if k not in known}
    if extra and col.mode == "strict":
        for k in extra:
            col.warn(UNKNOWN_FIELD, f"{path}/{k}", f"unknown field {k!r} (kept verbatim)")
    return extra


def _get_str(data: dict[str, Any], key: str, path: str, col: _Collector, default: str = "") -> str:
    value = data.get(key, default)
    if not isinstance(value, str):
        col.error(BAD_TYPE, f"{path}/{key}", f"{key} must be a string, got {type(value).__name__}")
        return default
    return value


def _get_str_list(data: dict[str, Any], key: str, path: str, col: _Collector) -> tuple[str, ...]:
    value = data.get(key, [])
    if not isinstance(value, list):
        col.error(BAD_TYPE, f"{path}/{key}", f"{key} must be a list of strings")
        return ()
    out: list[str] = []
    for i, item in enumerate(value):
        if isinstance(item, str):
            out.append(item)
        else:
            col.error(BAD_TYPE, f"{path}/{key}/{i}", f"{key} entries must be strings")
    return tuple(out)


def _get_id_list(data: dict[str, Any], key: str, path: str, col: _Collector) -> tuple[int, ...]:
    value = data.get(key, [])
    if not isinstance(value, list):
        col.error(BAD_TYPE, f"{path}/{key}", f"{key} must be a list of integers")
        return ()
    out: list[int] = []
    for i, item in enumerate(value):
        if isinstance(item, int) and not isinstance(item, bool) and item >= 0:
            out.append(item)
        else:
            col.error(
                BAD_TYPE, f"{path}/{key}/{i}", f"{key} entries must be non-negative integers"
            )
    return tuple(out)


def _build_metadata(data: Any, path: str, col: _Collector) -> SystemMetadata | None:
    if data is None:
        return None
    if not isinstance(data, dict):
        col.error(BAD_TYPE, path, "Metadata must be an object")
        return None
    year = data.get("Year")
    if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
        col.error(BAD_TYPE, f"{path}/Year", "Year must be an integer")
        year = None
    venue = data.get("Venue")
    if venue is not None and not isinstance(venue, str):
        col.error(BAD_TYPE, f"{path}/Venue", "Venue must be a string")
        venue = None
    tags = _get_str_list(data, "DomainTags", path, col)
    extra = _take_extra(data, _METADATA_KEYS, path, col)
    return SystemMetadata(year=year, venue=venue, domain_tags=tags, extra=extra)


def _build_granular(data: Any, path: str, col: _Collector) -> GranularBlock | None:
    if not isinstance(data, dict):
        col.error(BAD_TYPE, path, "granular block must be an object")
        return None
    block_id = data.get("ID")
    if isinstance(block_id, bool) or not isinstance(block_id, int):
        col.error(BAD_TYPE, f"{path}/ID", "ID must be an integer")
        return None
    if block_id < 0:
        col.error(BAD_TYPE, f"{path}/ID", "ID must be non-negative")
        return None
    properties: dict[str, str] = {}
    raw_props = data.get("Properties")
    if raw_props is not None:
        if not isinstance(raw_props, dict):
            col.error(BAD_TYPE, f"{path}/Properties", "Properties must be an object")
        else:
            for k, v in raw_props.items():
                if isinstance(v, str):
                    properties[k] = v
                else:
                    col.error(BAD_TYPE, f"{path}/Properties/{k}", "property values must be strings")
    return GranularBlock(
        name=_get_str(data, "GranularBlockName", path, col),
        id=block_id,
        paper_description=_get_str(data, "PaperDescription", path, col),
        inputs=_get_str_list(data, "Inputs", path, col),
        outputs=_get_str_list(data, "Outputs", path, col),
        reference_citation=_get_str(data, "ReferenceCitation", path, col),
        feeds_into=_get_id_list(data, "FeedsInto", path, col),
        interacts_with=_get_id_list(data, "InteractsWith", path, col),
        properties=properties,
        extra=_take_extra(data, _GRANULAR_KEYS, path, col),
    )


def _build_intermediate(data: Any, path: str, col: _Collector) -> IntermediateBlock | None:
    if not isinstance(data, dict):
        col.error(BAD_TYPE, path, "intermediate block must be an object")
        return None
    grans: list[GranularBlock] = []
    raw = data.get("GranularBlocks", [])
    if not isinstance(raw, list):
        col.error(BAD_TYPE, f"{path}/GranularBlocks", "GranularBlocks must be a list")
        raw = []
    for i, item in enumerate(raw):
        block = _build_granular(item, f"{path}/GranularBlocks/{i}", col)
        if block is not None:
            grans.append(block)
    return IntermediateBlock(
        name=_get_str(data, "IntermediateBlockName", path, col),
        granular_blocks=tuple(grans),
        extra=_take_extra(data, _INTERMEDIATE_KEYS, path, col),
    )


def _build_high(data: Any, path: str, col: _Collector) -> HighLevelBlock | None:
    if not isinstance(data, dict):
        col.error(BAD_TYPE, path, "high-level block must be an object")
        return None
    inters: list[IntermediateBlock] = []
    raw = data.get("IntermediateBlocks", [])
    if not isinstance(raw, list):
        col.error(BAD_TYPE, f"{path}/IntermediateBlocks", "IntermediateBlocks must be a list")
        raw = []
    for i, item in enumerate(raw):
        block = _build_intermediate(item, f"{path}/IntermediateBlocks/{i}", col)
        if block is not None:
            inters.append(block)
    return HighLevelBlock(
        name=_get_str(data, "HighLevelBlockName", path, col),
        intermediate_blocks=tuple(inters),
        extra=_take_extra(data, _HIGH_KEYS, path, col),
    )


def _build_system(data: dict[str, Any], col: _Collector) -> SystemBlueprint:
    highs: list[HighLevelBlock] = []
    raw = data.get("HighLevelBlocks", [])
    if not isinstance(raw, list):
        col.error(BAD_TYPE, "/HighLevelBlocks", "HighLevelBlocks must be a list")
        raw = []
    for i, item in enumerate(raw):
        block = _build_high(item, f"/HighLevelBlocks/{i}", col)
        if block is not None:
            highs.append(block)
    return SystemBlueprint(
        paper_title=_get_str(data, "PaperTitle", "", col),
        high_level_blocks=tuple(highs),
        metadata=_build_metadata(data.get("Metadata"), "/Metadata", col),
        extra=_take_extra(data, _SYSTEM_KEYS, "", col),
    )


def _check_model(bp: SystemBlueprint, col: _Collector) -> None:
    if not bp.paper_title.strip():
        col.error(EMPTY_NAME, "/PaperTitle", "PaperTitle must be non-empty")
    if not bp.high_level_blocks:
        col.warn(EMPTY_SYSTEM, "/HighLevelBlocks", "blueprint has no high-level blocks")
    if bp.metadata is not None and bp.metadata.year is not None:
        if not (YEAR_MIN <= bp.metadata.year <= YEAR_MAX):
            col.error(
                BAD_YEAR,
                "/Metadata/Year",
                f"year {bp.metadata.year} outside [{YEAR_MIN}, {YEAR_MAX}]",
            )

    id_paths: dict[int, str] = {}
    block_paths: list[tuple[GranularBlock, str]] = []
    for hi, high in enumerate(bp.high_level_blocks):
        hpath = f"/HighLevelBlocks/{hi}"
        if not high.name.strip():
            col.error(EMPTY_NAME, f"{hpath}/HighLevelBlockName", "high-level name is empty")
        elif high.name not in HIGH_LEVEL_CATEGORIES:
            message = (
                f"high-level name {high.name!r} not in controlled vocabulary "
                f"{list(HIGH_LEVEL_CATEGORIES)}"
            )
            if col.mode == "strict":
                col.error(BAD_CATEGORY, f"{hpath}/HighLevelBlockName", message)
            else:
                col.warn(BAD_CATEGORY, f"{hpath}/HighLevelBlockName", message)
        for ii, inter in enumerate(high.intermediate_blocks):
            ipath = f"{hpath}/IntermediateBlocks/{ii}"
            if not inter.name.strip():
                col.error(EMPTY_NAME, f"{ipath}/IntermediateBlockName", "intermediate name is empty")
            for gi, gran in enumerate(inter.granular_blocks):
                gpath = f"{ipath}/GranularBlocks/{gi}"
                block_paths.append((gran, gpath))
                if not gran.name.strip():
                    col.error(EMPTY_NAME, f"{gpath}/GranularBlockName", "granular name is empty")
                if not gran.reference_citation.strip():
                    col.warn(
                        EMPTY_CITATION,
                        f"{gpath}/ReferenceCitation",
                        "granular block has no reference citation",
                    )
                if gran.id in id_paths:
                    col.error(
                        DUP_ID,
                        f"{gpath}/ID",
                        f"ID {gran.id} already used at {id_paths[gran.id]}/ID",
                    )
                else:
                    id_paths[gran.id] = gpath

    known_ids = set(id_paths)
    for gran, gpath in block_paths:
        for key, targets in (("FeedsInto", gran.feeds_into), ("InteractsWith", gran.interacts_with)):
            seen: set[int] = set()
            for j, target in enumerate(targets):
                epath = f"{gpath}/{key}/{j}"
                if target == gran.id:
                    col.error(SELF_EDGE, epath, f"block {gran.id} lists itself as a target")
                    continue
                if target in seen:
                    col.error(DUP_EDGE, epath, f"target {target} repeated in {key}")
                    continue
                seen.add(target)
                if target not in known_ids:
                    col.error(DANGLING_EDGE, epath, f"target {target} matches no granular block ID")
        overlap = sorted(set(gran.feeds_into) & set(gran.interacts_with))
        if overlap:
            col.error(
                EDGE_KIND_CONFLICT,
                gpath,
                f"targets {overlap} appear in both FeedsInto and InteractsWith",
            )


def validate(bp: SystemBlueprint, mode: str = "strict") -> ValidationReport:
    """Check every invariant of a constructed blueprint.

    Returns a report listing each violation with its path; the report
    is Valid iff there are zero errors. Never raises on bad content.
    """
    col = _Collector(mode)
    _check_model(bp, col)
    return col.report()


def parse_blueprint(
    raw: str | bytes, mode: str = "strict"
) -> tuple[SystemBlueprint | None, ValidationReport]:
    """Parse wire-format JSON into a blueprint.

    Returns ``(blueprint, report)`` where the blueprint is None whenever
    the report carries at least one error. Warnings (empty system,
    unknown fields in strict mode, ...) accompany a successful parse.

    A legacy file carrying only ``FeedsInto`` lists parses with every
    edge of data kind; unknown fields are preserved on the model and
    re-emitted on serialization.
    """
    col = _Collector(mode)
    if isinstance(raw, (bytes, bytearray)):
        try:
            text = bytes(raw).decode("utf-8")
        except UnicodeDecodeError as exc:
            col.error(PARSE, "", f"input is not valid UTF-8: {exc}")
            return None, col.report()
    else:
        text = raw
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        col.error(PARSE, "", f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})")
        return None, col.report()
    if not isinstance(data, dict):
        col.error(BAD_TYPE, "", "top-level JSON value must be an object")
        return None, col.report()

    bp = _build_system(data, col)
    _check_model(bp, col)
    report = col.report()
    if report.errors:
        return None, report
    return bp, report
