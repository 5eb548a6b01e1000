"""Label normalization and the synonym table.

Block names arriving from different papers (or different annotators)
vary in casing, spacing, and terminology. ``normalize_label`` reduces a
surface label to a canonical form: textual cleanup first, then an
optional synonym lookup (e.g. "Grouping" -> "cluster", "Brushing" ->
"select"). Normalization is idempotent, which every name-keyed
aggregation in this package relies on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

_TERMINAL_PUNCTUATION = ".,;:!? "

DEFAULT_SYNONYMS: dict[str, str] = {
    "clustering": "cluster",
    "grouping": "cluster",
    "brushing": "select",
    "highlighting": "select",
}


def _base_normalize(label: str) -> str:
    # lowercase, trim, collapse internal whitespace, strip terminal punctuation
    text = " ".join(label.lower().split())
    return text.rstrip(_TERMINAL_PUNCTUATION)


@dataclass(frozen=True)
class SynonymTable:
    """Mapping from normalized surface labels to canonical labels.

    Construction normalizes both sides and adds an identity entry for
    every canonical label, so lookups are idempotent by construction.
    """

    mapping: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_mapping(cls, raw: dict[str, str]) -> SynonymTable:
        mapping: dict[str, str] = {}
        for surface, canonical in raw.items():
            mapping[_base_normalize(surface)] = _base_normalize(canonical)
        for canonical in list(mapping.values()):
            mapping.setdefault(canonical, canonical)
        return cls(mapping)

    @classmethod
    def default(cls) -> SynonymTable:
        return cls.from_mapping(DEFAULT_SYNONYMS)

    @classmethod
    def empty(cls) -> SynonymTable:
        return cls({})

    @classmethod
    def load(cls, path: str | Path) -> SynonymTable:
        """Load a table from a JSON object file mapping surface -> canonical."""
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in raw.items()
        ):
            raise ValueError(f"{path}: synonym table must be a JSON object of strings")
        return cls.from_mapping(raw)

    def canonical(self, normalized: str) -> str:
        return self.mapping.get(normalized, normalized)


def normalize_label(label: str, table: SynonymTable | None = None) -> str:
    """Normalize a surface label; idempotent for arbitrary input."""
    base = _base_normalize(label)
    if table is None:
        return base
    return table.canonical(base)
