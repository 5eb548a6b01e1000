from __future__ import annotations

import shutil

import pytest

from blueprintkit.fixtures import FIXTURE_NAMES, fixture_path, load_fixture


@pytest.fixture(scope="session")
def taxivis():
    return load_fixture("taxivis")


@pytest.fixture(scope="session")
def vaud():
    return load_fixture("vaud")


@pytest.fixture(scope="session")
def tpflow():
    return load_fixture("tpflow")


@pytest.fixture
def fixtures_corpus_dir(tmp_path):
    """Temp directory holding a copy of all three shipped fixtures."""
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for name in FIXTURE_NAMES:
        shutil.copy(fixture_path(name), corpus / f"{name}.json")
    return corpus
