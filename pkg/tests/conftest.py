import pathlib
import sys

import pytest

TESTS_DIR = pathlib.Path(__file__).parent
CORPUS_DIR = TESTS_DIR.parent / "corpus"
CORPUS_FILES = ("legal_review.homl", "scenario_a.homl", "scenario_b.homl")

sys.path.insert(0, str(TESTS_DIR))  # for golden_tables


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture(scope="session")
def legal_source():
    return (CORPUS_DIR / "legal_review.homl").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def scenario_a_source():
    return (CORPUS_DIR / "scenario_a.homl").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def scenario_b_source():
    return (CORPUS_DIR / "scenario_b.homl").read_text(encoding="utf-8")


@pytest.fixture(params=CORPUS_FILES)
def corpus_source(request):
    return (CORPUS_DIR / request.param).read_text(encoding="utf-8")
