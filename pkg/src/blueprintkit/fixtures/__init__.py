"""Shipped example blueprints of three published systems.

These files double as documentation of the wire format and as ground
truth for the test suite; ``scripts/build_fixtures.py`` regenerates
them. Each is canonical JSON, so parse -> serialize reproduces the file
byte for byte.
"""

from __future__ import annotations

from pathlib import Path

from ..model import SystemBlueprint
from ..validation import parse_blueprint

FIXTURE_NAMES = ("taxivis", "vaud", "tpflow")


def fixtures_dir() -> Path:
    return Path(__file__).parent


def fixture_path(name: str) -> Path:
    path = fixtures_dir() / f"{name}.json"
    if not path.is_file():
        raise FileNotFoundError(f"no fixture named {name!r}; have {FIXTURE_NAMES}")
    return path


def load_fixture(name: str) -> SystemBlueprint:
    bp, report = parse_blueprint(fixture_path(name).read_bytes(), "strict")
    if bp is None:
        raise ValueError(f"fixture {name} failed validation: {report.error_codes()}")
    return bp
