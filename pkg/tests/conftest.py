import pytest
from pathlib import Path

from synqa import load_gazetteers, load_template_file, read_corpus
from synqa import resources

FIXTURES = Path(__file__).parent / "fixtures"

GOLDEN_CORPUS = FIXTURES / "golden_corpus.txt"
GOLDEN_OUTPUT = FIXTURES / "golden_output.json"
GOLDEN_FACTS = FIXTURES / "fact_golden.json"
GAZETTEER_DIR = FIXTURES / "gazetteers"


@pytest.fixture(scope="session")
def default_templates():
    return load_template_file(resources.default_template_path())


@pytest.fixture(scope="session")
def gazetteers():
    return load_gazetteers(GAZETTEER_DIR)


@pytest.fixture(scope="session")
def golden_documents():
    return read_corpus(GOLDEN_CORPUS)
