import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blueprintkit.labels import SynonymTable, normalize_label


@pytest.fixture
def table():
    return SynonymTable.default()


@pytest.mark.parametrize(
    "surface,expected",
    [
        ("Brushing ", "select"),
        ("Grouping", "cluster"),
        ("Clustering", "cluster"),
        ("HIGHLIGHTING", "select"),
        ("map 2d", "map 2d"),
        ("  Map   2D. ", "map 2d"),
        ("Area Selection", "area selection"),
    ],
)
def test_normalize_examples(table, surface, expected):
    assert normalize_label(surface, table) == expected


def test_textual_cleanup_without_table():
    assert normalize_label("  Boolean   Query  Combination!? ") == "boolean query combination"
    assert normalize_label("trailing dots . .") == "trailing dots"


def test_canonical_labels_are_fixed_points(table):
    for canonical in set(table.mapping.values()):
        assert table.canonical(canonical) == canonical
        assert normalize_label(canonical, table) == canonical


@given(st.text(max_size=60))
def test_idempotent_without_table(text):
    once = normalize_label(text)
    assert normalize_label(once) == once


@given(st.text(max_size=60))
def test_idempotent_with_default_table(text):
    table = SynonymTable.default()
    once = normalize_label(text, table)
    assert normalize_label(once, table) == once


def test_custom_table_values_are_normalized():
    table = SynonymTable.from_mapping({"Choropleth  Map": " Map 2D. "})
    assert normalize_label("choropleth map", table) == "map 2d"
    assert normalize_label("map 2d", table) == "map 2d"


def test_load_table_from_json(tmp_path):
    path = tmp_path / "synonyms.json"
    path.write_text(json.dumps({"dendrogram": "tree view"}), encoding="utf-8")
    table = SynonymTable.load(path)
    assert normalize_label("Dendrogram", table) == "tree view"


def test_load_rejects_non_object(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('["not", "a", "mapping"]', encoding="utf-8")
    with pytest.raises(ValueError):
        SynonymTable.load(path)
